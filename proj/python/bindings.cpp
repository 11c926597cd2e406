#include <numbers>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fsl/common/error.hpp"
#include "fsl/cone/multiplier.hpp"
#include "fsl/lp/bumps.hpp"
#include "fsl/norms/estimates.hpp"
#include "fsl/norms/norms.hpp"
#include "fsl/osc/bessel.hpp"
#include "fsl/osc/dispersive.hpp"
#include "fsl/osc/measure.hpp"
#include "fsl/solver/solver.hpp"
#include "fsl/solver/suites.hpp"
#include "fsl/spectral/duhamel.hpp"
#include "fsl/spectral/fslb.hpp"
#include "fsl/spectral/transforms.hpp"

namespace py = pybind11;
using namespace fsl;

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

namespace {

py::object to_py(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

nlohmann::json from_py(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

int cube_side(const CArray& a, int skip) {
  if (a.ndim() <= skip) throw InvalidArgument("array has too few axes");
  const auto m = a.shape(skip);
  for (py::ssize_t i = skip; i < a.ndim(); ++i)
    if (a.shape(i) != m) throw InvalidArgument("spatial axes must have equal length");
  return static_cast<int>(m);
}

Field to_field(const CArray& a, double length) {
  const Grid g = make_grid(static_cast<int>(a.ndim()), cube_side(a, 0), length);
  return Field(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

CArray from_values(const std::vector<Complex>& v, std::vector<py::ssize_t> shape) {
  CArray out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<py::ssize_t> field_shape(const Grid& g) {
  return std::vector<py::ssize_t>(g.dim(), g.points());
}

CArray from_field(const Field& f) { return from_values(f.values, field_shape(f.grid)); }

CArray from_spectrum(const Spectrum& f) { return from_values(f.values, field_shape(f.grid)); }

Trajectory to_trajectory(const CArray& a, double length, double t0, double dt) {
  const int m = cube_side(a, 1);
  const Grid g = make_grid(static_cast<int>(a.ndim()) - 1, m, length);
  Trajectory u(g, t0, dt, static_cast<std::size_t>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), u.values.begin());
  return u;
}

CArray from_trajectory(const Trajectory& u) {
  auto shape = field_shape(u.grid);
  shape.insert(shape.begin(), static_cast<py::ssize_t>(u.frames));
  return from_values(u.values, shape);
}

NormContext context_for(int n, double s, double margin) {
  if (n >= 2) return make_norm_context(n, s, margin);
  NormContext ctx;
  ctx.bumps = build_bumps();
  ctx.s = s;
  return ctx;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "fractional Schrodinger estimate lab";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  m.def("dft_forward", [](const CArray& a, double length) { return from_spectrum(dft_forward(to_field(a, length))); },
        py::arg("values"), py::arg("length") = 2.0 * std::numbers::pi);
  m.def("dft_inverse",
        [](const CArray& a, double length) {
          const Field shape = to_field(a, length);
          return from_field(dft_inverse(Spectrum(shape.grid, shape.values)));
        },
        py::arg("spectrum"), py::arg("length") = 2.0 * std::numbers::pi);
  m.def("linear_propagate",
        [](const CArray& a, double t, double s, double length) {
          return from_field(linear_propagate(to_field(a, length), t, s));
        },
        py::arg("values"), py::arg("t"), py::arg("s"), py::arg("length") = 2.0 * std::numbers::pi);
  m.def("apply_fractional",
        [](const CArray& a, double beta, bool reject, double length) {
          return from_field(apply_fractional(to_field(a, length), beta,
                                             reject ? ZeroModePolicy::kReject : ZeroModePolicy::kZeroOut));
        },
        py::arg("values"), py::arg("beta"), py::arg("reject_zero_mode") = false,
        py::arg("length") = 2.0 * std::numbers::pi);
  m.def("l2_norm", [](const CArray& a, double length) { return l2_norm(to_field(a, length)); },
        py::arg("values"), py::arg("length") = 2.0 * std::numbers::pi);
  m.def("hdot_norm", [](const CArray& a, double sigma, double length) { return hdot_norm(to_field(a, length), sigma); },
        py::arg("values"), py::arg("sigma"), py::arg("length") = 2.0 * std::numbers::pi);

  m.def("eta", [](double r) { return build_bumps().eta(r); });
  m.def("phi", [](double r) { return build_bumps().phi(r); });
  m.def("chi", [](double x) { return build_bumps().chi(x); });
  m.def("n_multiplier", &n_multiplier, py::arg("zeta_normsq"), py::arg("tau"), py::arg("s"));
  m.def("k_weight", &k_weight, py::arg("zeta_normsq"), py::arg("tau"), py::arg("s"));

  m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));
  m.def("sphere_phase_bessel", &sphere_phase_bessel, py::arg("rho"), py::arg("n"));
  m.def("sigma_measure",
        [](double k, double j, double xi_perp_normsq, double tau, double s, bool grid) {
          return sigma_measure(k, j, xi_perp_normsq, tau, s, grid ? MeasureMethod::kGrid : MeasureMethod::kClosedForm);
        },
        py::arg("k"), py::arg("j"), py::arg("xi_perp_normsq"), py::arg("tau"), py::arg("s"),
        py::arg("grid") = false);
  m.def("sigma_bound", &sigma_bound, py::arg("k"), py::arg("j"), py::arg("s"));
  m.def("dispersive_decay",
        [](int n, double s, double k, double t_lo, double t_hi, int count, const std::string& probe) {
          PhaseIntegralSpec spec;
          spec.n = n;
          spec.s = s;
          spec.cutoff = RadialCutoff::annulus(k);
          if (probe != "sup" && probe != "origin") throw InvalidArgument("probe must be sup or origin");
          const auto t = log_spaced(t_lo, t_hi, count);
          return to_py(to_json(
              fit_dispersive_decay(spec, t, probe == "sup" ? DecayProbe::kSupremum : DecayProbe::kOrigin)));
        },
        py::arg("n"), py::arg("s"), py::arg("k") = 0.0, py::arg("t_lo") = 10.0, py::arg("t_hi") = 1000.0,
        py::arg("count") = 9, py::arg("probe") = "sup");

  m.def("xk_norm",
        [](const CArray& u, int k, double dt, double s, double length) {
          const Trajectory tr = to_trajectory(u, length, -0.5 * dt * u.shape(0), dt);
          return xk_norm(tr, k, context_for(tr.grid.dim(), s, 0.35));
        },
        py::arg("trajectory"), py::arg("k"), py::arg("dt"), py::arg("s") = 0.75,
        py::arg("length") = 2.0 * std::numbers::pi);
  m.def("zk_upper",
        [](const CArray& u, int k, double dt, double s, double length) {
          const Trajectory tr = to_trajectory(u, length, -0.5 * dt * u.shape(0), dt);
          return to_py(to_json(zk_upper(tr, k, context_for(tr.grid.dim(), s, 0.35))));
        },
        py::arg("trajectory"), py::arg("k"), py::arg("dt"), py::arg("s") = 0.75,
        py::arg("length") = 2.0 * std::numbers::pi);
  m.def("f_sigma_norm",
        [](const CArray& u, double sigma, double dt, double s, double length) {
          const Trajectory tr = to_trajectory(u, length, -0.5 * dt * u.shape(0), dt);
          return f_sigma_norm(tr, sigma, context_for(tr.grid.dim(), s, 0.35));
        },
        py::arg("trajectory"), py::arg("sigma"), py::arg("dt"), py::arg("s") = 0.75,
        py::arg("length") = 2.0 * std::numbers::pi);
  m.def("free_evolution",
        [](const CArray& u0, double dt, std::size_t frames, double s, double length) {
          return from_trajectory(free_evolution(to_field(u0, length), -0.5 * dt * frames, dt, frames, s));
        },
        py::arg("u0"), py::arg("dt"), py::arg("frames"), py::arg("s") = 0.75,
        py::arg("length") = 2.0 * std::numbers::pi);

  m.def("verify_estimate",
        [](const std::string& kind, int n, std::size_t draws, std::uint64_t seed, double s) {
          EstimateInputs in = default_inputs(n);
          in.draws = draws;
          in.seed = seed;
          return to_py(to_json(verify_estimate(estimate_from_name(kind), in, make_norm_context(n, s))));
        },
        py::arg("kind"), py::arg("n") = 2, py::arg("draws") = 16, py::arg("seed") = 1, py::arg("s") = 0.75);
  m.def("run_suite",
        [](const std::string& name, double s, int k, std::size_t samples, std::uint64_t seed,
           std::vector<int> dims, std::size_t draws, std::vector<std::string> kinds) {
          SuiteOptions o;
          o.s = s;
          o.k = k;
          o.samples = samples;
          o.seed = seed;
          o.dims = std::move(dims);
          o.draws = draws;
          o.kinds = std::move(kinds);
          py::gil_scoped_release release;
          SuiteResult r = run_suite(name, o);
          py::gil_scoped_acquire acquire;
          return to_py(r.document);
        },
        py::arg("name"), py::arg("s") = 0.75, py::arg("k") = 6, py::arg("samples") = 10000,
        py::arg("seed") = 1, py::arg("dims") = std::vector<int>{2, 3}, py::arg("draws") = 128,
        py::arg("kinds") = std::vector<std::string>{});

  m.def("default_solve_config", [](double s) { return to_py(to_json(default_solve_config(s))); },
        py::arg("s") = 0.75);
  m.def("make_initial_data",
        [](const py::object& config) { return from_field(make_initial_data(solve_config_from_json(from_py(config)))); },
        py::arg("config"));
  m.def("apply_nonlinearity",
        [](const CArray& u, const py::object& config) {
          const SolveConfig c = solve_config_from_json(from_py(config));
          return from_field(apply_nonlinearity(to_field(u, c.length), c.nonlinearity, c.s));
        },
        py::arg("values"), py::arg("config"));
  m.def("solve",
        [](const py::object& config, const py::object& u0) {
          const SolveConfig c = solve_config_from_json(from_py(config));
          const Field data = u0.is_none() ? make_initial_data(c) : to_field(u0.cast<CArray>(), c.length);
          const SolveResult r = picard_solve(data, c.nonlinearity, c);
          return py::make_tuple(from_trajectory(r.solution), to_py(to_json(r, c)));
        },
        py::arg("config"), py::arg("u0") = py::none());

  m.def("save_trajectory",
        [](const std::filesystem::path& path, const CArray& u, double dt, double t0, double length) {
          save_trajectory(path, to_trajectory(u, length, t0, dt));
        },
        py::arg("path"), py::arg("trajectory"), py::arg("dt"), py::arg("t0"),
        py::arg("length") = 2.0 * std::numbers::pi);
  m.def("load_trajectory", [](const std::filesystem::path& path) {
    const Trajectory u = load_trajectory(path);
    return py::make_tuple(from_trajectory(u), u.dt, u.t0, u.grid.length());
  });
}
