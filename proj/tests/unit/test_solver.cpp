#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "fsl/common/error.hpp"
#include "fsl/solver/solver.hpp"
#include "fsl/solver/suites.hpp"
#include "fsl/spectral/fslb.hpp"
#include "test_util.hpp"

namespace fsl {
namespace {

using testing::Rng;

namespace fs = std::filesystem;

SolveConfig small_config(double epsilon = 1e-2) {
  SolveConfig c = default_solve_config(0.75);
  c.data.epsilon = epsilon;
  return c;
}

Field scaled(Field f, Complex c) {
  for (auto& z : f.values) z *= c;
  return f;
}

double max_rel_diff(const Trajectory& a, const Trajectory& b) {
  return testing::max_diff(a.values, b.values) / testing::max_abs(a.values);
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fslab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(Nonlinearity, ZeroInZeroOut) {
  const Grid g = make_grid(2, 16, 6.0);
  const Field u(g);
  const Field f = apply_nonlinearity(u, NonlinearitySpec::standard(0.75), 0.75);
  EXPECT_EQ(testing::max_abs(f.values), 0.0);
}

TEST(Nonlinearity, CubicScaling) {
  Rng rng(3);
  const Grid g = make_grid(2, 16, 6.0);
  const Field u = testing::random_field(g, rng);
  const auto spec = NonlinearitySpec::standard(0.75);
  const Complex lambda(0.7, -1.3);
  const Field a = apply_nonlinearity(u, spec, 0.75);
  const Field b = apply_nonlinearity(scaled(u, lambda), spec, 0.75);
  const Field expect = scaled(a, std::norm(lambda) * lambda);
  EXPECT_LT(testing::max_diff(b.values, expect.values), 1e-12 * testing::max_abs(expect.values));
}

TEST(Nonlinearity, PlaneWaveHasConstantDensity) {
  // |u|^2 is constant, and D^{-beta} removes the zero mode
  const Grid g = make_grid(2, 16, 6.0);
  const Field u = testing::plane_wave(g, {2, -1});
  const Field f = apply_nonlinearity(u, NonlinearitySpec::standard(0.75), 0.75);
  EXPECT_LT(testing::max_abs(f.values), 1e-12);
  EXPECT_THROW(apply_nonlinearity(u, NonlinearitySpec::standard(0.75), 0.75, ZeroModePolicy::kReject), Error);
}

TEST(Nonlinearity, BetaRange) {
  NonlinearitySpec spec = NonlinearitySpec::standard(0.75);
  EXPECT_DOUBLE_EQ(spec.terms.at(0).beta, 0.5);
  EXPECT_NO_THROW(spec.validate(0.75));
  spec.terms[0].beta = -0.25;
  EXPECT_NO_THROW(spec.validate(0.75));
  spec.terms[0].beta = -0.3;
  EXPECT_THROW(spec.validate(0.75), InvalidArgument);
  spec.terms[0].beta = 0.51;
  EXPECT_THROW(spec.validate(0.75), InvalidArgument);
}

TEST(InitialData, NormalizedAndSeeded) {
  const SolveConfig c = small_config(0.02);
  const Field u0 = make_initial_data(c);
  EXPECT_NEAR(hdot_norm(u0, c.critical_sigma()), 0.02, 1e-12);
  EXPECT_LT(std::abs(dft_forward(u0).values[0]), 1e-12);
  const Field again = make_initial_data(c);
  EXPECT_EQ(u0.values, again.values);
  SolveConfig other = c;
  other.data.seed = 8;
  EXPECT_NE(make_initial_data(other).values, u0.values);
}

TEST(InitialData, FromFile) {
  const fs::path dir = scratch_dir("data");
  SolveConfig c = small_config();
  const Field u0 = make_initial_data(c);
  save_field(dir / "u0.fslb", u0);
  c.data.kind = "file";
  c.data.path = dir / "u0.fslb";
  EXPECT_EQ(make_initial_data(c).values, u0.values);
  c.points = 16;
  EXPECT_THROW(make_initial_data(c), ConfigError);
}

TEST(DuhamelMap, EmptyNonlinearityIsFreeEvolution) {
  const SolveConfig c = small_config();
  const Field u0 = make_initial_data(c);
  const Trajectory free = free_evolution(u0, c.t0(), c.dt, c.frames, c.s);
  const Trajectory v = duhamel_map(free, u0, NonlinearitySpec{}, c);
  EXPECT_LT(max_rel_diff(free, v), 1e-14);
}

TEST(DuhamelMap, OriginFrameIsData) {
  const SolveConfig c = small_config(0.5);
  const Field u0 = make_initial_data(c);
  const Trajectory free = free_evolution(u0, c.t0(), c.dt, c.frames, c.s);
  const Trajectory v = duhamel_map(free, u0, c.nonlinearity, c);
  const Field origin = v.field(c.frames / 2);
  EXPECT_EQ(v.time(c.frames / 2), 0.0);
  EXPECT_EQ(origin.values, u0.values);
}

TEST(Picard, ZeroDataStaysZero) {
  const SolveConfig c = small_config();
  const SolveResult r = picard_solve(Field(c.grid()), c.nonlinearity, c);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(testing::max_abs(r.solution.values), 0.0);
}

TEST(Picard, LinearProblemConvergesImmediately) {
  const SolveConfig c = small_config();
  const Field u0 = make_initial_data(c);
  const SolveResult r = picard_solve(u0, NonlinearitySpec{}, c);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LT(max_rel_diff(free_evolution(u0, c.t0(), c.dt, c.frames, c.s), r.solution), 1e-14);
}

TEST(Picard, SmallDataContracts) {
  const SolveConfig c = small_config();
  const Field u0 = make_initial_data(c);
  const SolveResult r = picard_solve(u0, c.nonlinearity, c);
  ASSERT_TRUE(r.converged);
  for (double q : r.contraction) EXPECT_LT(q, 0.5);
  EXPECT_LT(r.residual, 10.0 * c.tolerance);
  EXPECT_NEAR(r.apriori_ratio, 1.0, 0.1);
  EXPECT_GT(r.f_sigma, 0.0);
  EXPECT_FALSE(r.notes.empty());
  const auto doc = to_json(r, c);
  EXPECT_TRUE(doc["converged"].get<bool>());
}

TEST(Picard, AprioriRatioStableUnderHalving) {
  const SolveConfig a = small_config(1e-2), b = small_config(5e-3);
  const SolveResult ra = picard_solve(make_initial_data(a), a.nonlinearity, a);
  const SolveResult rb = picard_solve(make_initial_data(b), b.nonlinearity, b);
  EXPECT_NEAR(ra.apriori_ratio / rb.apriori_ratio, 1.0, 0.1);
}

TEST(Picard, PhaseCovariance) {
  const SolveConfig c = small_config(0.1);
  const Field u0 = make_initial_data(c);
  const Complex phase = std::polar(1.0, 0.9);
  const SolveResult a = picard_solve(u0, c.nonlinearity, c);
  const SolveResult b = picard_solve(scaled(u0, phase), c.nonlinearity, c);
  Trajectory rotated = a.solution;
  for (auto& z : rotated.values) z *= phase;
  EXPECT_LT(max_rel_diff(rotated, b.solution), 1e-8);
}

TEST(Picard, SimpsonAgreesWithTrapezoid) {
  SolveConfig c = small_config(0.1);
  const Field u0 = make_initial_data(c);
  const SolveResult trap = picard_solve(u0, c.nonlinearity, c);
  c.rule = TimeRule::kSimpson;
  const SolveResult simp = picard_solve(u0, c.nonlinearity, c);
  const double diff = testing::max_diff(trap.solution.values, simp.solution.values);
  EXPECT_LE(diff, 4.0 * trap.quadrature_estimate * l2_norm(u0) + 1e-14);
}

TEST(Picard, ResidualDetectsPerturbation) {
  const SolveConfig c = small_config();
  const Field u0 = make_initial_data(c);
  SolveResult r = picard_solve(u0, c.nonlinearity, c);
  Trajectory bent = r.solution;
  for (std::size_t f = 0; f < bent.frames; ++f) {
    const double t = bent.time(f);
    for (auto& z : bent.frame(f)) z *= 1.0 + 1e-3 * t * t;
  }
  EXPECT_GE(residual_check(bent, u0, c.nonlinearity, c), 1e-4);
}

TEST(Picard, LargeDataDiverges) {
  const SolveConfig c = small_config(200.0);
  EXPECT_THROW(picard_solve(make_initial_data(c), c.nonlinearity, c), DivergenceError);
}

TEST(Dependence, LipschitzRatioStable) {
  const SolveConfig c = small_config();
  const Field u0 = make_initial_data(c);
  SolveConfig pc = c;
  pc.data.seed = 99;
  pc.data.epsilon = 1.0;
  const Field w = make_initial_data(pc);
  Field v1 = u0, v2 = u0;
  for (std::size_t i = 0; i < u0.values.size(); ++i) {
    v1.values[i] += 1e-4 * w.values[i];
    v2.values[i] += 1e-5 * w.values[i];
  }
  const DependenceProbe a = continuous_dependence_probe(u0, v1, c.nonlinearity, c);
  const DependenceProbe b = continuous_dependence_probe(u0, v2, c.nonlinearity, c);
  EXPECT_FALSE(a.identical_data);
  EXPECT_NEAR(a.ratio_linf_l2 / b.ratio_linf_l2, 1.0, 0.2);
  EXPECT_NEAR(a.ratio_hdot / b.ratio_hdot, 1.0, 0.2);
  EXPECT_TRUE(continuous_dependence_probe(u0, u0, c.nonlinearity, c).identical_data);
}

TEST(Config, JsonRoundTrip) {
  SolveConfig c = small_config(0.03);
  c.frames = 128;
  c.rule = TimeRule::kSimpson;
  c.nonlinearity.terms.push_back({-0.25, {true, false, false}, {0.0, 2.0}});
  const SolveConfig back = solve_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, ValidationErrors) {
  auto bad = [](auto edit) {
    SolveConfig c = small_config();
    edit(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  bad([](SolveConfig& c) { c.s = 1.0; });
  bad([](SolveConfig& c) { c.s = 0.5; });
  bad([](SolveConfig& c) { c.frames = 48; });
  bad([](SolveConfig& c) { c.dt = 0.0; });
  bad([](SolveConfig& c) { c.points = 12; });
  bad([](SolveConfig& c) { c.tolerance = -1.0; });
  bad([](SolveConfig& c) { c.frames = 16; });  // window shorter than the cutoff support
  bad([](SolveConfig& c) { c.nonlinearity.terms[0].beta = 2.0; });
}

TEST(Config, JsonErrors) {
  EXPECT_THROW(solve_config_from_json(nlohmann::json{{"equation", {{"s", "fast"}}}}), ConfigError);
  EXPECT_THROW(solve_config_from_json(nlohmann::json{{"picard", {{"rule", "midpoint"}}}}), ConfigError);
  EXPECT_THROW(solve_config_from_json(nlohmann::json{{"grid", {{"points", 33}}}}), ConfigError);
  EXPECT_THROW(load_solve_config("/nonexistent/config.json"), ConfigError);
  const fs::path dir = scratch_dir("config");
  std::ofstream(dir / "broken.json") << "{ \"grid\": ";
  EXPECT_THROW(load_solve_config(dir / "broken.json"), ConfigError);
}

TEST(Suites, NamesAndUnknown) {
  EXPECT_EQ(suite_names().size(), 6u);
  EXPECT_THROW(run_suite("everything", {}), InvalidArgument);
}

TEST(Suites, NpropsWritesAndAggregates) {
  SuiteOptions opt;
  opt.k = 4;
  opt.samples = 400;
  const SuiteResult r = run_suite("nprops", opt);
  EXPECT_EQ(r.name, "nprops");
  EXPECT_TRUE(r.document.contains("passed"));
  const fs::path dir = scratch_dir("suites");
  EXPECT_EQ(write_suite(dir, r), dir / "nprops.json");
  std::ofstream(dir / "garbage.json") << "not json";
  const auto summary = aggregate_reports(dir);
  ASSERT_EQ(summary["reports"].size(), 1u);
  EXPECT_EQ(summary["reports"][0]["passed"].get<bool>(), r.passed);
  EXPECT_EQ(summary["unreadable"].size(), 1u);
}

#ifdef FSLAB_CLI
int cli(const std::string& args) {
  const std::string cmd = std::string(FSLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  EXPECT_EQ(cli(""), 2);
  EXPECT_EQ(cli("--help"), 0);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("solve --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(cli("verify nosuch"), 2);

  SolveConfig c = small_config();
  c.output_dir = dir;
  c.prefix = "run";
  std::ofstream(dir / "run.json.cfg") << to_json(c).dump();
  EXPECT_EQ(cli("solve --config " + (dir / "run.json.cfg").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "run_solution.fslb"));
  EXPECT_EQ(cli("norms --in " + (dir / "run_solution.fslb").string() + " --kind fsigma"), 0);
  EXPECT_EQ(cli("norms --in " + (dir / "run_solution.fslb").string() + " --kind bogus"), 2);

  c.data.epsilon = 200.0;
  c.prefix = "big";
  std::ofstream(dir / "big.cfg") << to_json(c).dump();
  EXPECT_EQ(cli("solve --config " + (dir / "big.cfg").string()), 1);
  EXPECT_TRUE(fs::exists(dir / "big.json"));
}
#endif

}  // namespace
}  // namespace fsl
