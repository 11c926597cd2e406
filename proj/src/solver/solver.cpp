#include "fsl/solver/solver.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fsl/common/error.hpp"
#include "fsl/common/io.hpp"
#include "fsl/common/parallel.hpp"
#include "fsl/norms/norms.hpp"
#include "fsl/spectral/fslb.hpp"

namespace fsl {

NonlinearitySpec NonlinearitySpec::standard(double s) {
  NonlinearitySpec spec;
  spec.terms.push_back({2.0 * s - 1.0, {false, true, false}, {1.0, 0.0}});
  return spec;
}

void NonlinearitySpec::validate(double s) const {
  const double lo = -(2.0 * s - 1.0) / 2.0, hi = 2.0 * s - 1.0;
  for (const auto& t : terms)
    if (!(t.beta >= lo - 1e-12 && t.beta <= hi + 1e-12))
      throw InvalidArgument("nonlinearity beta outside [-(2s-1)/2, 2s-1]");
}

Field apply_nonlinearity(const Field& u, const NonlinearitySpec& spec, double s,
                         ZeroModePolicy policy) {
  spec.validate(s);
  Field out(u.grid);
  if (spec.terms.empty()) return out;
  Field conj_u = u;
  for (auto& z : conj_u.values) z = std::conj(z);
  for (const auto& t : spec.terms) {
    const Field& a = t.conjugate[0] ? conj_u : u;
    const Field& b = t.conjugate[1] ? conj_u : u;
    const Field& c = t.conjugate[2] ? conj_u : u;
    Field ab(u.grid);
    for (std::size_t i = 0; i < ab.values.size(); ++i) ab.values[i] = a.values[i] * b.values[i];
    const Field low = t.beta == 0.0 ? ab : apply_fractional(ab, -t.beta, policy);
    const Field high = t.beta == 0.0 ? c : apply_fractional(c, t.beta, policy);
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] += t.coeff * low.values[i] * high.values[i];
  }
  return out;
}

Grid SolveConfig::grid() const { return make_grid(dim, points, length); }

void SolveConfig::validate() const {
  try {
    (void)grid();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (dim > 4) throw ConfigError("solver supports n <= 4");
  if (dim == 4 && points > 8) throw ConfigError("n = 4 runs are supported at m = 8 only");
  if (!(s > 0.5 && s < 1.0)) throw ConfigError("s must lie in (1/2, 1)");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!is_power_of_two(static_cast<long long>(frames)) || frames < 4)
    throw ConfigError("frames must be a power of two >= 4");
  if (!(cutoff.inner > 0.0 && cutoff.outer > cutoff.inner)) throw ConfigError("cutoff needs 0 < inner < outer");
  if (-t0() < cutoff.outer) throw ConfigError("time window must contain the cutoff support");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  try {
    nonlinearity.validate(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

SolveConfig default_solve_config(double s) {
  SolveConfig c;
  c.s = s;
  c.nonlinearity = NonlinearitySpec::standard(s);
  return c;
}

namespace {

Transition transition_from(const std::string& name) {
  if (name == "exponential") return Transition::kExponential;
  if (name == "polynomial") return Transition::kPolynomial;
  throw ConfigError("unknown transition '" + name + "'");
}

}  // namespace

SolveConfig solve_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a key-value document");
  try {
    const auto eq = doc.value("equation", nlohmann::json::object());
    SolveConfig c = default_solve_config(eq.value("s", 0.75));
    const std::string zm = eq.value("zero_mode", std::string("zero_out"));
    if (zm == "zero_out")
      c.zero_mode = ZeroModePolicy::kZeroOut;
    else if (zm == "reject")
      c.zero_mode = ZeroModePolicy::kReject;
    else
      throw ConfigError("zero_mode must be zero_out or reject");

    const auto grid = doc.value("grid", nlohmann::json::object());
    c.dim = grid.value("dim", c.dim);
    c.points = grid.value("points", c.points);
    c.length = grid.value("length", c.length);

    const auto time = doc.value("time", nlohmann::json::object());
    c.frames = time.value("frames", c.frames);
    c.dt = time.value("dt", c.dt);
    if (time.contains("cutoff")) {
      const auto& cut = time["cutoff"];
      c.cutoff.inner = cut.value("inner", c.cutoff.inner);
      c.cutoff.outer = cut.value("outer", c.cutoff.outer);
      c.cutoff.kind = transition_from(cut.value("transition", std::string("exponential")));
    }

    if (doc.contains("nonlinearity")) {
      c.nonlinearity.terms.clear();
      for (const auto& t : doc["nonlinearity"].value("terms", nlohmann::json::array())) {
        NonlinearTerm term;
        term.beta = t.value("beta", 2.0 * c.s - 1.0);
        if (t.contains("conjugate")) term.conjugate = t["conjugate"].get<std::array<bool, 3>>();
        if (t.contains("coeff")) {
          const auto v = t["coeff"].get<std::vector<double>>();
          if (v.size() != 2) throw ConfigError("coeff must be [re, im]");
          term.coeff = {v[0], v[1]};
        }
        c.nonlinearity.terms.push_back(term);
      }
    }

    const auto pic = doc.value("picard", nlohmann::json::object());
    c.max_iterations = pic.value("max_iterations", c.max_iterations);
    c.tolerance = pic.value("tolerance", c.tolerance);
    c.rule = time_rule_from_name(pic.value("rule", std::string("trapezoid")));

    const auto data = doc.value("data", nlohmann::json::object());
    c.data.kind = data.value("kind", c.data.kind);
    c.data.epsilon = data.value("epsilon", c.data.epsilon);
    c.data.width = data.value("width", c.data.width);
    c.data.seed = data.value("seed", c.data.seed);
    c.data.path = data.value("path", std::string());
    if (c.data.kind != "gaussian_spectrum" && c.data.kind != "file")
      throw ConfigError("data.kind must be gaussian_spectrum or file");

    const auto out = doc.value("output", nlohmann::json::object());
    c.output_dir = out.value("directory", c.output_dir.string());
    c.prefix = out.value("prefix", c.prefix);
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json to_json(const SolveConfig& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : c.nonlinearity.terms)
    terms.push_back({{"beta", t.beta}, {"conjugate", t.conjugate}, {"coeff", {t.coeff.real(), t.coeff.imag()}}});
  return {
      {"grid", {{"dim", c.dim}, {"points", c.points}, {"length", c.length}}},
      {"equation",
       {{"s", c.s}, {"zero_mode", c.zero_mode == ZeroModePolicy::kZeroOut ? "zero_out" : "reject"}}},
      {"time",
       {{"frames", c.frames},
        {"dt", c.dt},
        {"cutoff",
         {{"inner", c.cutoff.inner},
          {"outer", c.cutoff.outer},
          {"transition", c.cutoff.kind == Transition::kExponential ? "exponential" : "polynomial"}}}}},
      {"nonlinearity", {{"terms", terms}}},
      {"picard",
       {{"max_iterations", c.max_iterations}, {"tolerance", c.tolerance}, {"rule", time_rule_name(c.rule)}}},
      {"data",
       {{"kind", c.data.kind},
        {"epsilon", c.data.epsilon},
        {"width", c.data.width},
        {"seed", c.data.seed},
        {"path", c.data.path.string()}}},
      {"output", {{"directory", c.output_dir.string()}, {"prefix", c.prefix}}},
  };
}

SolveConfig load_solve_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError("cannot read config '" + path.string() + "': " + e.what());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return solve_config_from_json(doc);
}

Field make_initial_data(const SolveConfig& config) {
  const Grid g = config.grid();
  if (config.data.kind == "file") {
    Field f = load_field(config.data.path);
    if (!(f.grid == g)) throw ConfigError("initial data grid does not match the config grid");
    return f;
  }
  std::mt19937_64 rng(config.data.seed);
  std::normal_distribution<double> normal;
  Spectrum S(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double re = normal(rng), im = normal(rng);
    const double r = g.wavenumber(i);
    if (r == 0.0) continue;
    S.values[i] = Complex(re, im) * std::exp(-r * r / (2.0 * config.data.width * config.data.width));
  }
  const double norm = hdot_norm(S, config.critical_sigma());
  if (config.data.epsilon == 0.0 || norm == 0.0) return Field(g);
  for (auto& z : S.values) z *= config.data.epsilon / norm;
  return dft_inverse(S);
}

namespace {

Trajectory forcing(const Trajectory& v, const NonlinearitySpec& spec, const SolveConfig& config) {
  Trajectory F(v.grid, v.t0, v.dt, v.frames);
  if (spec.terms.empty()) return F;
  parallel_for(v.frames, [&](std::size_t f) {
    if (config.cutoff(v.time(f)) == 0.0) return;
    F.set_frame(f, apply_nonlinearity(v.field(f), spec, config.s, config.zero_mode));
  });
  return F;
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  Trajectory d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  return d;
}

double sup_hdot(const Trajectory& u, double sigma) {
  double best = 0.0;
  for (std::size_t f = 0; f < u.frames; ++f) best = std::max(best, hdot_norm(u.field(f), sigma));
  return best;
}

NormContext solver_norm_context(const SolveConfig& c) {
  if (c.dim >= 2) return make_norm_context(c.dim, c.s);
  NormContext ctx;
  ctx.bumps = build_bumps();
  ctx.s = c.s;
  return ctx;
}

void check_data(const Field& u0, const SolveConfig& config) {
  config.validate();
  if (!(u0.grid == config.grid())) throw InvalidArgument("initial data grid does not match the config");
}

}  // namespace

Trajectory duhamel_map(const Trajectory& v, const Field& u0, const NonlinearitySpec& spec,
                       const SolveConfig& config) {
  check_data(u0, config);
  if (!(v.grid == u0.grid) || v.frames != config.frames || v.dt != config.dt || v.t0 != config.t0())
    throw InvalidArgument("trajectory does not live on the config time lattice");
  Trajectory out = free_evolution(u0, config.t0(), config.dt, config.frames, config.s);
  if (spec.terms.empty()) return out;
  const Plateau psi = config.cutoff;
  const Trajectory D = duhamel_term(forcing(v, spec, config), config.s, [&](double t) { return psi(t); },
                                    config.rule);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += D.values[i];
  return out;
}

double residual_check(const Trajectory& u, const Field& u0, const NonlinearitySpec& spec,
                      const SolveConfig& config) {
  const Trajectory d = difference(u, duhamel_map(u, u0, spec, config));
  double best = 0.0;
  for (std::size_t f = 0; f < d.frames; ++f) {
    if (!(std::abs(d.time(f)) < 1.0)) continue;
    best = std::max(best, l2_norm(d.field(f)));
  }
  const double scale = l2_norm(u0);
  return scale > 0.0 ? best / scale : best;
}

double quadrature_error_estimate(const Trajectory& u, const NonlinearitySpec& spec,
                                 const SolveConfig& config) {
  const Trajectory F = forcing(u, spec, config);
  std::vector<Spectrum> G(F.frames);
  parallel_for(F.frames, [&](std::size_t f) {
    G[f] = linear_propagate(dft_forward(F.field(f)), -F.time(f), config.s);
  });
  double total = 0.0;
  const double h2 = config.dt * config.dt;
  for (std::size_t f = 1; f + 1 < F.frames; ++f) {
    if (!(std::abs(F.time(f)) < config.cutoff.outer)) continue;
    Spectrum second(F.grid);
    for (std::size_t i = 0; i < second.values.size(); ++i)
      second.values[i] = (G[f + 1].values[i] - 2.0 * G[f].values[i] + G[f - 1].values[i]) / h2;
    total += l2_norm(second) * config.dt;
  }
  return h2 / 12.0 * total;
}

SolveResult picard_solve(const Field& u0, const NonlinearitySpec& spec, const SolveConfig& config) {
  check_data(u0, config);
  spec.validate(config.s);
  const double sc = config.critical_sigma();
  const NormContext ctx = solver_norm_context(config);
  const double scale = l2_norm(u0);

  SolveResult res;
  Trajectory u = free_evolution(u0, config.t0(), config.dt, config.frames, config.s);
  int rising = 0;
  for (int m = 1; m <= config.max_iterations; ++m) {
    Trajectory next = duhamel_map(u, u0, spec, config);
    const Trajectory d = difference(next, u);
    const double dn = linf_l2_norm(d);
    if (!std::isfinite(dn)) {
      std::ostringstream diag;
      diag << "iteration " << m << ": non-finite difference";
      throw DivergenceError("Picard iteration diverged", diag.str());
    }
    res.diff_linf_l2.push_back(dn);
    res.diff_f_sigma.push_back(dn == 0.0 ? 0.0 : f_sigma_norm(d, sc, ctx));
    if (res.diff_linf_l2.size() >= 2) {
      const double prev = res.diff_linf_l2[res.diff_linf_l2.size() - 2];
      const double ratio = prev > 0.0 ? dn / prev : 0.0;
      res.contraction.push_back(ratio);
      rising = ratio >= 1.0 ? rising + 1 : 0;
    }
    u = std::move(next);
    res.iterations = m;
    if (dn <= config.tolerance * scale) {
      res.converged = true;
      break;
    }
    if (rising >= 3) {
      std::ostringstream diag;
      diag << "differences:";
      for (double v : res.diff_linf_l2) diag << ' ' << v;
      throw DivergenceError("Picard contraction ratio >= 1 for three consecutive iterations", diag.str());
    }
  }
  if (!res.converged) res.notes.push_back("maximum iterations reached before the tolerance");
  res.residual = residual_check(u, u0, spec, config);
  const double h0 = hdot_norm(u0, sc);
  res.apriori_ratio = h0 > 0.0 ? sup_hdot(u, sc) / h0 : 0.0;
  res.f_sigma = f_sigma_norm(u, sc, ctx);
  res.quadrature_estimate = quadrature_error_estimate(u, spec, config);
  res.notes.push_back("dimension caveat: well-posedness for this nonlinearity is only established for n >= 4; this is a desk-scale run at n = " +
                      std::to_string(config.dim));
  res.notes.push_back("H^{(n-2s)/2} is the lattice seminorm with the zero mode excluded");
  res.solution = std::move(u);
  return res;
}

nlohmann::json to_json(const SolveResult& r, const SolveConfig& config) {
  return {{"config", to_json(config)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"diff_linf_l2", r.diff_linf_l2},
          {"diff_f_sigma", r.diff_f_sigma},
          {"contraction", r.contraction},
          {"residual", r.residual},
          {"apriori_ratio", r.apriori_ratio},
          {"f_sigma", r.f_sigma},
          {"quadrature_estimate", r.quadrature_estimate},
          {"notes", r.notes}};
}

DependenceProbe continuous_dependence_probe(const Field& u0, const Field& v0,
                                            const NonlinearitySpec& spec, const SolveConfig& config) {
  DependenceProbe out;
  Field d0 = u0;
  for (std::size_t i = 0; i < d0.values.size(); ++i) d0.values[i] -= v0.values[i];
  const double base = l2_norm(d0);
  if (base == 0.0) {
    out.identical_data = true;
    return out;
  }
  const SolveResult a = picard_solve(u0, spec, config);
  const SolveResult b = picard_solve(v0, spec, config);
  const Trajectory d = difference(a.solution, b.solution);
  const double sc = config.critical_sigma();
  out.ratio_linf_l2 = linf_l2_norm(d) / base;
  const double hb = hdot_norm(d0, sc);
  out.ratio_hdot = hb > 0.0 ? sup_hdot(d, sc) / hb : 0.0;
  return out;
}

}  // namespace fsl
