#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fsl/common/report.hpp"
#include "fsl/lp/bumps.hpp"

namespace fsl {

/// Point (xi, tau) together with the order s and a unit direction e.
struct SymbolSample {
  std::vector<double> xi;
  double tau = 0.0;
  double s = 0.75;
  std::vector<double> e;

  double xi_e1() const;            // <xi, e>
  double xi_perp_normsq() const;   // |xi - <xi,e> e|^2
  double abs_xi() const;
  double modulation() const;       // tau + |xi|^{2s}
};

/// Parameters of the cone region: C1^{-1} 2^k <= |xi| <= C1 2^k,
/// <xi, e> >= 2^{k - c_tilde}, |tau + |xi|^{2s}| <= 2^{2sk - c_prime}.
struct ConeParams {
  int k = 4;
  double c1 = 2.0;
  double c_tilde = 1.0;
  double c_prime = 6.0;
  double s = 0.75;
  std::vector<double> e{1.0, 0.0};

  // Throws InvalidArgument unless c1 >= 1, c_tilde > 0, s in (1/2, 1], |e| = 1
  // and c_prime >= c_tilde + log2(c1) + 4.
  void validate() const;
  nlohmann::json to_json() const;
};

/// N = ((-tau)^{1/s} - |zeta'|^2)^{1/2}; OutsideDomainError unless tau < 0 and
/// (-tau)^{1/s} > |zeta'|^2.
double n_multiplier(double zeta_normsq, double tau, double s);

/// K = 2s (N^2 + |zeta'|^2)^{s-1} N.
double k_weight(double zeta_normsq, double tau, double s);

/// |-(|xi|^2 + tau) - (N + xi_1)(N - xi_1)| at s = 1.
double s1_factorization_residual(std::span<const double> xi, double tau, std::span<const double> e);

bool is_admissible(const SymbolSample& p, const ConeParams& params);

/// Seeded sampler, uniform in (xi_{e,1}, |xi'_e|, tau + |xi|^{2s}) over the
/// admissible box, by rejection. Draws are produced in units of (2^k, 2^{2sk})
/// so the same seed gives the same normalized points for every k.
/// Throws EmptyDomainError when the box is empty or numerically unresolvable.
class AdmissibleSampler {
 public:
  AdmissibleSampler(const ConeParams& params, std::uint64_t seed);
  SymbolSample draw();

 private:
  ConeParams params_;
  std::mt19937_64 rng_;
  std::vector<double> perp_;  // unit vector orthogonal to e
};

/// Sweep of the three comparability ratios: (tau + |xi'|^{2s}) / (-2^{2sk}),
/// N / 2^k and |xi_{e,1} - N| / (2^{-k(2s-1)} |tau + |xi|^{2s}|).
RatioReport verify_n_properties(const ConeParams& params, std::size_t num_samples,
                                std::uint64_t seed = 1);

struct FactorizationTerms {
  std::complex<double> lhs;
  std::complex<double> main_term;
  std::complex<double> error_term;  // lhs - main_term
};

/// Cone-localized resolvent 1/(tau + |xi|^{2s} + i) with its cutoffs, the main
/// term 1/(K (xi_{e,1} - N + i 2^{-k(2s-1)})) with the N-side cutoffs, and the
/// difference.
FactorizationTerms factorization_decomposition(std::span<const double> xi, double tau,
                                               const ConeParams& params, const BumpPair& bumps);

/// |E| / (2^{-2sk} + (1 + |tau + |xi|^{2s}|)^{-2}) over seeded samples around
/// the cone region; c_star is the largest ratio.
RatioReport factorization_envelope(const ConeParams& params, const BumpPair& bumps,
                                   std::size_t num_samples, std::uint64_t seed = 1);

}  // namespace fsl
