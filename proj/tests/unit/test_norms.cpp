#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fsl/common/error.hpp"
#include "fsl/lp/projection.hpp"
#include "fsl/norms/estimates.hpp"
#include "fsl/norms/families.hpp"
#include "fsl/norms/norms.hpp"
#include "fsl/spectral/duhamel.hpp"
#include "test_util.hpp"

namespace fsl {
namespace {

using testing::random_field;
using testing::Rng;

constexpr double kPi = std::numbers::pi;
constexpr double kFrozenLinfty = 0.22246453364042695;

const NormContext& ctx2() {
  static const NormContext c = make_norm_context(2, 0.75);
  return c;
}

Trajectory random_trajectory(const Grid& g, std::size_t frames, double dt, Rng& rng) {
  Trajectory u(g, -0.5 * dt * frames, dt, frames);
  for (auto& z : u.values) z = rng.complex_normal();
  return u;
}

Field shell_data(const Grid& g, int k, std::uint64_t seed, bool core = true) {
  return dft_inverse(random_shell_spectrum(g, k, seed, ctx2().bumps, core));
}

Field cone_shell_data(const Grid& g, int k, std::uint64_t seed, const std::vector<double>& e, double margin) {
  Spectrum S = random_shell_spectrum(g, k, seed, ctx2().bumps, true);
  std::vector<double> xi(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.wavevector(i, xi);
    double dot = 0.0, r = 0.0;
    for (int d = 0; d < g.dim(); ++d) {
      dot += xi[d] * e[d];
      r += xi[d] * xi[d];
    }
    if (!(dot > 0.0 && dot >= margin * std::sqrt(r))) S.values[i] = 0.0;
  }
  return dft_inverse(S);
}

std::size_t cone_index(const std::vector<double>& e) {
  for (std::size_t i = 0; i < ctx2().atlas.size(); ++i)
    if (ctx2().atlas.direction(i) == e) return i;
  return ctx2().atlas.size();
}

double window_factor(std::size_t frames, double dt) {
  double sum = 0.0;
  for (double w : TimeWindow{}.weights(frames)) sum += w * w;
  return std::sqrt(sum * dt);
}

TEST(MixedNorm, SinglePointMass) {
  for (int n : {1, 2, 3}) {
    const Grid g = make_grid(n, 8, 2.0);
    Trajectory u(g, 0.0, 0.25, 4);
    u.values[3 * g.size() + 5] = 1.0;
    const double expect = g.dx() * std::sqrt(std::pow(g.dx(), n - 1) * 0.25);
    std::vector<double> e(n, 0.0);
    e[n - 1] = 1.0;
    EXPECT_NEAR(mixed_norm(u, {e, 1.0, 2.0}), expect, 1e-14);
  }
}

TEST(MixedNorm, ConstantField) {
  const Grid g = make_grid(2, 8, 3.0);
  Trajectory u(g, 0.0, 0.5, 8);
  for (auto& z : u.values) z = 2.0;
  EXPECT_NEAR(mixed_norm(u, {{0.0, 1.0}, INFINITY, 2.0}), 2.0 * std::sqrt(3.0 * 8 * 0.5), 1e-12);
}

TEST(MixedNorm, FubiniMatchesSpaceTimeL2) {
  Rng rng(1);
  for (int n : {1, 2, 3}) {
    const Trajectory u = random_trajectory(make_grid(n, 8, 1.7), 8, 0.3, rng);
    std::vector<double> e(n, 0.0);
    e[0] = -1.0;
    EXPECT_NEAR(mixed_norm(u, {e, 2.0, 2.0}), l2_norm(u), 1e-12 * l2_norm(u));
  }
}

TEST(MixedNorm, HomogeneityAndTriangle) {
  Rng rng(2);
  const Grid g = make_grid(2, 8, 2.0);
  for (auto [p, q] : {std::pair{1.0, 2.0}, {INFINITY, 2.0}, {2.0, INFINITY}}) {
    const MixedNormSpec spec{{1.0, 0.0}, p, q};
    const Trajectory a = random_trajectory(g, 8, 0.25, rng), b = random_trajectory(g, 8, 0.25, rng);
    Trajectory c = a, d = a;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      c.values[i] += b.values[i];
      d.values[i] *= Complex(0.0, -3.0);
    }
    EXPECT_LE(mixed_norm(c, spec), mixed_norm(a, spec) + mixed_norm(b, spec) + 1e-10);
    EXPECT_NEAR(mixed_norm(d, spec), 3.0 * mixed_norm(a, spec), 1e-12 * mixed_norm(d, spec));
  }
}

TEST(MixedNorm, Errors) {
  const Trajectory u(make_grid(2, 8, 1.0), 0.0, 1.0, 4);
  EXPECT_THROW(mixed_norm(u, {{0.6, 0.8}, 1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(mixed_norm(u, {{1.0, 0.0, 0.0}, 1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(mixed_norm(u, {{1.0, 0.0}, 0.5, 2.0}), InvalidArgument);
  int sign = 0;
  EXPECT_EQ(lattice_axis({0.0, -1.0}, 2, &sign), 1);
  EXPECT_EQ(sign, -1);
}

TEST(XNorm, FreeEvolutionIsLowModulation) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const std::size_t T = 64;
  const double dt = 0.25;
  for (int k : {1, 2, 3}) {
    const Field u0 = shell_data(g, k, 10 + k);
    const Trajectory u = free_evolution(u0, -0.5 * T * dt, dt, T, 0.75);
    const double expect = l2_norm(u0) * window_factor(T, dt);
    const double x = xk_norm(u, k, ctx2());
    EXPECT_GE(x, expect * (1.0 - 1e-10));
    EXPECT_LE(x, expect * 1.3);  // taper leakage reaches the Q_1 transition
  }
}

TEST(XNorm, ModulatedShellWeight) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const double dt = 0.125;
  for (int j : {1, 2, 3}) {
    FamilySpec spec;
    spec.kind = FamilyKind::kModulated;
    spec.k = 2;
    spec.j = j;
    spec.core = true;
    const Trajectory u = make_family_member(spec, g, -8.0, dt, 128, ctx2());
    const ResolutionSpace sp = ResolutionSpace::for_trajectory(ctx2(), u);
    const auto V = sp.transform(u);
    const double ratio = sp.x_norm(V, 2) / (std::exp2(0.5 * j) * sp.l2(V));
    EXPECT_GT(ratio, 0.9);
    EXPECT_LT(ratio, 1.45);
  }
}

TEST(XNorm, ZeroAndSupportGate) {
  const Grid g = make_grid(2, 16, 2.0 * kPi);
  EXPECT_EQ(xk_norm(Trajectory(g, -2.0, 0.25, 16), 1, ctx2()), 0.0);
  const Trajectory u = free_evolution(shell_data(g, 1, 3), -2.0, 0.25, 16, 0.75);
  std::string diag;
  EXPECT_EQ(xk_norm(u, 3, ctx2(), &diag), kUnbounded);
  EXPECT_FALSE(diag.empty());
}

TEST(YNorm, FreeConeWavesSeeOnlyTheDampingTerm) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const std::size_t T = 64;
  const double dt = 0.25;
  const std::vector<double> e{1.0, 0.0};
  for (int k : {2, 3}) {
    const Field u0 = cone_shell_data(g, k, 40 + k, e, ctx2().atlas.margin());
    const Trajectory u = free_evolution(u0, -0.5 * T * dt, dt, T, 0.75);
    const double y = yk_norm(u, k, e, ctx2());
    const double expect = std::exp2(-k * 0.25) * mixed_norm(apply_window(u, TimeWindow{}), {e, 1.0, 2.0});
    // the taper's time derivative adds to the damping term
    EXPECT_GT(y / expect, 0.98) << k;
    EXPECT_LT(y / expect, 1.1) << k;
  }
}

TEST(YNorm, ZeroAndConeGate) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const std::vector<double> e{1.0, 0.0};
  EXPECT_EQ(yk_norm(Trajectory(g, -2.0, 0.25, 16), 2, e, ctx2()), 0.0);
  const Field u0 = cone_shell_data(g, 2, 5, {-1.0, 0.0}, 0.35);
  const Trajectory u = free_evolution(u0, -2.0, 0.25, 16, 0.75);
  std::string diag;
  EXPECT_EQ(yk_norm(u, 2, e, ctx2(), &diag), kUnbounded);
  EXPECT_FALSE(diag.empty());
  EXPECT_LT(yk_norm(u, 2, {-1.0, 0.0}, ctx2()), kUnbounded);
}

TEST(Norms, HomogeneityAndTriangleForXAndY) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const std::vector<double> e{0.0, 1.0};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    FamilySpec fa;
    fa.kind = FamilyKind::kCone;
    fa.direction = cone_index(e);
    fa.seed = seed;
    FamilySpec fb = fa;
    fb.seed = seed + 100;
    const Trajectory a = make_family_member(fa, g, -8.0, 0.25, 64, ctx2());
    const Trajectory b = make_family_member(fb, g, -8.0, 0.25, 64, ctx2());
    Trajectory sum = a, scaled = a;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      sum.values[i] += b.values[i];
      scaled.values[i] *= -2.5;
    }
    EXPECT_LE(xk_norm(sum, 2, ctx2()), xk_norm(a, 2, ctx2()) + xk_norm(b, 2, ctx2()) + 1e-10);
    EXPECT_LE(yk_norm(sum, 2, e, ctx2()), yk_norm(a, 2, e, ctx2()) + yk_norm(b, 2, e, ctx2()) + 1e-10);
    EXPECT_NEAR(xk_norm(scaled, 2, ctx2()), 2.5 * xk_norm(a, 2, ctx2()), 1e-12 * xk_norm(scaled, 2, ctx2()));
    EXPECT_NEAR(yk_norm(scaled, 2, e, ctx2()), 2.5 * yk_norm(a, 2, e, ctx2()), 1e-12 * yk_norm(scaled, 2, e, ctx2()));
    EXPECT_NEAR(zk_upper(scaled, 2, ctx2()).value, 2.5 * zk_upper(a, 2, ctx2()).value,
                1e-12 * zk_upper(scaled, 2, ctx2()).value);
  }
}

TEST(ZNorm, UpperBoundBranches) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const Trajectory zero(g, -8.0, 0.25, 64);
  EXPECT_EQ(zk_upper(zero, 2, ctx2()).value, 0.0);

  const Trajectory free = free_evolution(shell_data(g, 2, 8), -8.0, 0.25, 64, 0.75);
  const NormReport zf = zk_upper(free, 2, ctx2());
  EXPECT_EQ(zf.branch, "all_x");
  EXPECT_NEAR(zf.value, xk_norm(free, 2, ctx2()), 1e-12 * zf.value);

  FamilySpec spec;
  spec.kind = FamilyKind::kModulated;
  spec.k = 2;
  spec.j = 2;
  spec.core = true;
  const Trajectory modulated = make_family_member(spec, g, -8.0, 0.25, 64, ctx2());
  const NormReport zm = zk_upper(modulated, 2, ctx2());
  EXPECT_DOUBLE_EQ(zm.value, std::min(zm.details["all_x"].get<double>(), zm.details["cone_split"].get<double>()));
  EXPECT_FALSE(zm.details["pieces"].empty());

  // short torus: L^1_e costs little, so free cone waves prefer the Y piece
  const Grid small = make_grid(2, 16, kPi / 2.0);
  const Field u0 = cone_shell_data(small, 3, 9, {1.0, 0.0}, 0.9);
  const Trajectory coned = free_evolution(u0, -4.0, 0.125, 64, 0.75);
  const NormReport zc = zk_upper(coned, 3, ctx2());
  EXPECT_EQ(zc.branch, "cone_split");
  EXPECT_LT(zc.value, xk_norm(coned, 3, ctx2()));
}

TEST(ZNorm, NeverAboveX) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  for (FamilyKind kind : {FamilyKind::kFree, FamilyKind::kRandomModulation, FamilyKind::kCone, FamilyKind::kShell}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      FamilySpec spec;
      spec.kind = kind;
      spec.seed = seed;
      spec.direction = seed % 4;
      const Trajectory u = make_family_member(spec, g, -8.0, 0.25, 64, ctx2());
      EXPECT_LE(zk_upper(u, 2, ctx2()).value, xk_norm(u, 2, ctx2()) * (1.0 + 1e-12));
    }
  }
}

TEST(ZNorm, SupportViolationReport) {
  const Grid g = make_grid(2, 16, 2.0 * kPi);
  const Trajectory u = free_evolution(shell_data(g, 1, 3), -2.0, 0.25, 16, 0.75);
  const NormReport r = zk_upper(u, 3, ctx2());
  EXPECT_FALSE(r.bounded());
  EXPECT_TRUE(to_json(r)["value"].is_null());
  EXPECT_TRUE(to_json(r)["support_violation"].get<bool>());
}

TEST(FSigma, SingleShellAndPythagoras) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const double sigma = 0.25;
  const Trajectory a = free_evolution(shell_data(g, 1, 21), -8.0, 0.25, 64, 0.75);
  const Trajectory b = free_evolution(shell_data(g, 3, 22), -8.0, 0.25, 64, 0.75);
  const double fa = f_sigma_norm(a, sigma, ctx2());
  EXPECT_NEAR(fa, std::exp2(sigma) * zk_upper(a, 1, ctx2()).value, 1e-10 * fa);
  const double fb = f_sigma_norm(b, sigma, ctx2());
  Trajectory sum = a;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += b.values[i];
  EXPECT_NEAR(f_sigma_norm(sum, sigma, ctx2()), std::hypot(fa, fb), 1e-10 * std::hypot(fa, fb));
  EXPECT_EQ(f_sigma_norm(Trajectory(g, -8.0, 0.25, 64), sigma, ctx2()), 0.0);
}

TEST(FSigma, MonotoneInSigma) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  for (int k : {1, 2, 3}) {
    const Trajectory u = free_evolution(shell_data(g, k, 30 + k), -8.0, 0.25, 64, 0.75);
    double prev = 0.0;
    for (double sigma : {-0.5, 0.0, 0.25, 1.0}) {
      const double v = f_sigma_norm(u, sigma, ctx2());
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(NSigma, InverseOfForward) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  Rng rng(4);
  const Trajectory u = random_trajectory(g, 64, 0.25, rng);
  const ResolutionSpace sp = ResolutionSpace::for_trajectory(ctx2(), u);
  const auto V = sp.transform(u);
  const double f = sp.f_sigma(V, 0.25).value;
  const double n = sp.n_sigma(sp.schrodinger(V), 0.25).value;
  EXPECT_NEAR(n, f, 1e-8 * f);
  EXPECT_EQ(n_sigma_norm(Trajectory(g, -8.0, 0.25, 64), 0.25, ctx2()), 0.0);
}

TEST(NSigma, SingleModeScaling) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const std::size_t T = 64;
  const double dt = 0.25;
  const Field w = testing::plane_wave(g, {3, 0});
  const double dtau = 2.0 * kPi / (T * dt);
  const double tau0 = 5.0 * dtau;
  Trajectory u(g, 0.0, dt, T);
  for (std::size_t f = 0; f < T; ++f) {
    Field frame = w;
    for (auto& z : frame.values) z *= std::polar(1.0, -tau0 * u.time(f));
    u.set_frame(f, frame);
  }
  NormContext ctx = ctx2();
  ctx.window = TimeWindow::none();
  const ResolutionSpace sp = ResolutionSpace::for_trajectory(ctx, u);
  const auto V = sp.transform(u);
  const double a = modulation(tau0, 3.0, 0.75, dt);
  const double ratio = sp.n_sigma(V, 0.25).value / sp.f_sigma(V, 0.25).value;
  EXPECT_NEAR(ratio, 1.0 / std::abs(Complex(a, 1.0)), 1e-10);
}

TEST(ResolutionSpace, Errors) {
  NormContext ctx = ctx2();
  ctx.s = 0.4;
  EXPECT_THROW(ResolutionSpace(ctx, make_grid(2, 8, 1.0), 8, 0.5), InvalidArgument);
  EXPECT_THROW(ResolutionSpace(ctx2(), make_grid(3, 8, 1.0), 8, 0.5), InvalidArgument);
}

TEST(Families, NamesAndErrors) {
  for (auto kind : {FamilyKind::kShell, FamilyKind::kFree, FamilyKind::kModulated, FamilyKind::kRandomModulation,
                    FamilyKind::kCone, FamilyKind::kBroadband})
    EXPECT_EQ(family_from_name(family_name(kind)), kind);
  EXPECT_THROW(family_from_name("pink_noise"), InvalidArgument);
  const Grid g = make_grid(2, 16, 2.0 * kPi);
  FamilySpec spec;
  spec.kind = FamilyKind::kModulated;
  spec.j = 12;
  EXPECT_THROW(make_family_member(spec, g, -2.0, 0.25, 16, ctx2()), InvalidArgument);
  spec.kind = FamilyKind::kCone;
  spec.direction = 99;
  EXPECT_THROW(make_family_member(spec, g, -2.0, 0.25, 16, ctx2()), InvalidArgument);
}

TEST(Estimates, NamesAndInputs) {
  for (auto kind : all_estimates()) EXPECT_EQ(estimate_from_name(estimate_name(kind)), kind);
  EXPECT_THROW(estimate_from_name("strichartz"), InvalidArgument);
  EXPECT_THROW(default_inputs(4), InvalidArgument);
  EXPECT_EQ(default_inputs(3).points, 16);
  EstimateInputs in = default_inputs(2);
  in.draws = 1;
  EXPECT_THROW(verify_estimate(EstimateKind::kEmbedding, in, ctx2()), InvalidArgument);
  in.draws = 4;
  EXPECT_THROW(verify_estimate(EstimateKind::kEmbedding, in, make_norm_context(3, 0.75)), InvalidArgument);
}

TEST(Estimates, TrilinearVanishesWithZeroFactors) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const Trajectory f = free_evolution(shell_data(g, 2, 1), -8.0, 0.25, 64, 0.75);
  const Trajectory zero(g, -8.0, 0.25, 64);
  const TrilinearTerms t = trilinear_terms(f, zero, zero, 0.5, 0.25, {false, true, false}, ctx2());
  EXPECT_EQ(t.lhs, 0.0);
}

TEST(Estimates, LinftyOnFreeEvolutionSeesDataNorm) {
  const Grid g = make_grid(2, 32, 2.0 * kPi);
  const Field u0 = shell_data(g, 2, 77, false);
  const Trajectory u = free_evolution(u0, -8.0, 0.25, 64, 0.75);
  EXPECT_NEAR(linf_l2_norm(u), l2_norm(u0), 1e-12 * l2_norm(u0));
}

TEST(Estimates, SmallSweepsAreStableAndFrozen) {
  EstimateInputs in = default_inputs(2);
  in.draws = 8;
  const RatioReport r = verify_estimate(EstimateKind::kLinftyL2, in, ctx2());
  EXPECT_TRUE(std::isfinite(r.c_star));
  EXPECT_EQ(r.draws, 8u);
  EXPECT_NEAR(r.c_star, kFrozenLinfty, 1e-9 * r.c_star);
  const RatioReport s = verify_estimate(EstimateKind::kSmoothing, in, ctx2());
  EXPECT_NEAR(s.find("f")->max, s.find("fbar")->max, 1e-9 * s.c_star);
}

}  // namespace
}  // namespace fsl
