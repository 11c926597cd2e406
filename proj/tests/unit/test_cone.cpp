#include <cmath>

#include <gtest/gtest.h>

#include "fsl/common/error.hpp"
#include "fsl/cone/multiplier.hpp"
#include "fsl/lp/bumps.hpp"
#include "test_util.hpp"

namespace fsl {
namespace {

using testing::Rng;

TEST(NMultiplier, ClosedForms) {
  EXPECT_DOUBLE_EQ(n_multiplier(0.0, -1.0, 1.0), 1.0);
  EXPECT_NEAR(n_multiplier(0.0, -4.0, 0.75), std::pow(2.0, 4.0 / 3.0), 1e-12);
  EXPECT_NEAR(n_multiplier(0.0, -4.0, 0.75), 2.5198, 1e-4);
  EXPECT_NEAR(n_multiplier(1.0, -3.0, 1.0), std::sqrt(2.0), 1e-15);
}

TEST(NMultiplier, OutsideDomain) {
  EXPECT_THROW(n_multiplier(0.0, 1.0, 0.75), OutsideDomainError);
  EXPECT_THROW(n_multiplier(0.0, 0.0, 0.75), OutsideDomainError);
  EXPECT_THROW(n_multiplier(5.0, -2.0, 1.0), OutsideDomainError);
  EXPECT_THROW(k_weight(5.0, -2.0, 1.0), OutsideDomainError);
}

TEST(NMultiplier, Monotone) {
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    const double s = rng.uniform(0.55, 1.0);
    const double tau = -rng.uniform(1.0, 100.0);
    const double top = std::pow(-tau, 1.0 / s);
    const double z1 = rng.uniform(0.0, 0.9 * top), z2 = rng.uniform(0.0, 0.9 * top);
    if (z1 != z2) {
      EXPECT_EQ(n_multiplier(z1, tau, s) > n_multiplier(z2, tau, s), z1 < z2);
    }
    EXPECT_GT(n_multiplier(z1, tau * 1.01, s), n_multiplier(z1, tau, s));
  }
}

TEST(NMultiplier, OnCharacteristicAtSOne) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double x1 = rng.uniform(0.01, 20.0), x2 = rng.uniform(-20.0, 20.0);
    const double tau = -(x1 * x1 + x2 * x2);
    EXPECT_NEAR(n_multiplier(x2 * x2, tau, 1.0), x1, 1e-12 * (1.0 + x1 * 100));
  }
}

TEST(KWeight, ClosedForms) {
  EXPECT_DOUBLE_EQ(k_weight(0.0, -1.0, 1.0), 2.0);
  EXPECT_NEAR(k_weight(0.0, -4.0, 0.75), 1.5 * std::pow(2.0, 2.0 / 3.0), 1e-12);
  EXPECT_NEAR(k_weight(0.0, -4.0, 0.75), 2.3811, 1e-4);
}

TEST(KWeight, ComparableToScaleOnAdmissibleSamples) {
  for (int k : {3, 6, 9}) {
    ConeParams p;
    p.k = k;
    AdmissibleSampler sampler(p, 7);
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const SymbolSample q = sampler.draw();
      double perp = q.xi_perp_normsq();
      const double r = k_weight(perp, q.tau, q.s) / std::exp2(k * (2.0 * q.s - 1.0));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_GT(lo, 0.25);
    EXPECT_LT(hi, 4.0);
  }
}

TEST(Factorization, WorkedExampleAtSOne) {
  const std::vector<double> e{1.0, 0.0};
  EXPECT_NEAR(s1_factorization_residual(std::vector<double>{2.0, 1.0}, -3.0, e), 0.0, 1e-14);
  EXPECT_NEAR(s1_factorization_residual(std::vector<double>{1.0, 0.0}, -1.0, e), 0.0, 1e-15);
}

TEST(Factorization, ResidualOnAdmissibleSOnePoints) {
  ConeParams p;
  p.s = 1.0;
  p.k = 5;
  p.e = {0.6, 0.8};
  AdmissibleSampler sampler(p, 3);
  for (int i = 0; i < 1000; ++i) {
    const SymbolSample q = sampler.draw();
    const double scale = 1.0 + std::abs(q.tau) + q.abs_xi() * q.abs_xi();
    ASSERT_LT(s1_factorization_residual(q.xi, q.tau, q.e), 1e-10 * scale);
  }
}

TEST(Factorization, RejectsNonUnitDirection) {
  EXPECT_THROW(s1_factorization_residual(std::vector<double>{1.0, 0.0}, -1.0, std::vector<double>{1.0, 1.0}),
               InvalidArgument);
}

TEST(Factorization, OffConeIsZero) {
  ConeParams p;
  const BumpPair b = build_bumps();
  const auto t = factorization_decomposition(std::vector<double>{-16.0, 2.0}, -20.0, p, b);
  EXPECT_EQ(t.lhs, Complex(0.0));
  EXPECT_EQ(t.main_term, Complex(0.0));
  EXPECT_EQ(t.error_term, Complex(0.0));
}

TEST(Factorization, OnCharacteristicPoint) {
  ConeParams p;
  p.k = 6;
  const BumpPair b = build_bumps();
  const std::vector<double> xi{80.0, 10.0};
  const double tau = -std::pow(80.0 * 80.0 + 100.0, 0.75);
  const auto t = factorization_decomposition(xi, tau, p, b);
  const double cut = b.eta_band(80.0, p.k - p.c_tilde, p.k + p.c_tilde);
  EXPECT_NEAR(std::abs(t.lhs - cut / Complex(0.0, 1.0)), 0.0, 1e-12);
  EXPECT_TRUE(std::isfinite(std::abs(t.main_term)));
  EXPECT_EQ(t.error_term, t.lhs - t.main_term);
  const double env = std::exp2(-2.0 * p.s * p.k) + 1.0;
  EXPECT_LT(std::abs(t.error_term) / env, 100.0);
}

TEST(Factorization, EnvelopeReportFinite) {
  ConeParams p;
  p.k = 6;
  const RatioReport r = factorization_envelope(p, build_bumps(), 2000, 1);
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.c_star, 0.0);
  EXPECT_GT(r.parameters["points_in_support"].get<int>(), 100);
}

TEST(ConeParams, Validation) {
  ConeParams p;
  EXPECT_NO_THROW(p.validate());
  ConeParams q = p;
  q.c_prime = 4.0;
  EXPECT_THROW(q.validate(), InvalidArgument);
  q = p;
  q.s = 0.5;
  EXPECT_THROW(q.validate(), InvalidArgument);
  q = p;
  q.e = {1.0, 1.0};
  EXPECT_THROW(q.validate(), InvalidArgument);
  q = p;
  q.c1 = 0.5;
  EXPECT_THROW(q.validate(), InvalidArgument);
}

TEST(Sampler, DrawsAreAdmissible) {
  ConeParams p;
  p.e = {0.0, 0.0, 1.0};
  AdmissibleSampler sampler(p, 11);
  for (int i = 0; i < 500; ++i) ASSERT_TRUE(is_admissible(sampler.draw(), p));
}

TEST(Sampler, DegenerateBandIsAnError) {
  ConeParams p;
  p.c_prime = 60.0;
  EXPECT_THROW(AdmissibleSampler(p, 1), EmptyDomainError);
  EXPECT_THROW(verify_n_properties(p, 10), EmptyDomainError);
}

TEST(NProperties, SOneItemThreeBracket) {
  ConeParams p;
  p.s = 1.0;
  const RatioReport r = verify_n_properties(p, 4000, 2);
  const RatioItem* item = r.find("xi1_minus_N_over_2^{-k(2s-1)}|a|");
  ASSERT_NE(item, nullptr);
  EXPECT_GE(item->min, 1.0 / (2.0 * p.c1 * std::exp2(p.c_tilde + 1.0)));
  EXPECT_LE(item->max, 2.0);
}

TEST(NProperties, AxisSliceItemTwo) {
  // xi' = 0 in one dimension.
  ConeParams p;
  p.e = {1.0};
  const RatioReport r = verify_n_properties(p, 2000, 3);
  const RatioItem* item = r.find("N_over_2^k");
  ASSERT_NE(item, nullptr);
  // N^{2s} = |xi|^{2s} - a with |xi| <= c1 2^k and |a| <= 2^{2sk - c'}
  const double hi = std::pow(std::pow(p.c1, 2.0 * p.s) + std::exp2(-p.c_prime), 1.0 / (2.0 * p.s));
  const double lo = std::pow(std::pow(1.0 / p.c1, 2.0 * p.s) - std::exp2(-p.c_prime), 1.0 / (2.0 * p.s));
  EXPECT_GE(item->min, lo);
  EXPECT_LE(item->max, hi);
}

TEST(NProperties, ScalingInvariance) {
  for (double s : {0.6, 0.75, 0.9}) {
    ConeParams p;
    p.s = s;
    p.k = 4;
    const RatioReport a = verify_n_properties(p, 5000, 9);
    p.k = 5;
    const RatioReport b = verify_n_properties(p, 5000, 9);
    EXPECT_NEAR(a.c_star / b.c_star, 1.0, 5e-4);
    EXPECT_TRUE(std::isfinite(a.c_star));
  }
}

TEST(NProperties, FrozenConstant) {
  ConeParams p;
  p.k = 6;
  const RatioReport r = verify_n_properties(p, 10000, 1);
  EXPECT_NEAR(r.c_star, 7.940877888813441, 1e-9);
  EXPECT_EQ(r.skipped, 0u);
}

}  // namespace
}  // namespace fsl
