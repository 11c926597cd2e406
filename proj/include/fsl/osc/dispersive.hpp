#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "fsl/common/smooth.hpp"
#include "fsl/osc/quadrature.hpp"

namespace fsl {

enum class CutoffKind {
  kAnnulus,         // profile(r / 2^k) - profile(2 r / 2^k)
  kBall,            // profile(r / 2^k)
  kShiftedAnnulus,  // profile(r - lambda)
};

/// Radial frequency cutoff; `profile` defaults to the Littlewood-Paley eta.
struct RadialCutoff {
  CutoffKind kind = CutoffKind::kAnnulus;
  double scale = 0.0;   // k (annulus) or l (ball)
  double lambda = 10.0; // shifted annulus centre
  Plateau profile{1.5, 1.9};

  double operator()(double r) const;
  double r_min() const;
  double r_max() const;

  static RadialCutoff annulus(double k) { return {CutoffKind::kAnnulus, k}; }
  static RadialCutoff ball(double l, Plateau profile = {1.5, 1.9}) {
    return {CutoffKind::kBall, l, 10.0, profile};
  }
  static RadialCutoff shifted(double lambda) { return {CutoffKind::kShiftedAnnulus, 0.0, lambda}; }
};

/// I(x, t) = int e^{i (t |xi - shift|^{2s} - <x, xi>)} cutoff(|xi|) dxi.
struct PhaseIntegralSpec {
  int n = 2;
  double s = 0.75;
  std::vector<double> shift;  // empty or zero: radial reduction applies
  RadialCutoff cutoff;
  double rel_tol = 1e-10;     // relative to I(0, 0) = int cutoff

  bool radial() const;
};

struct PhaseValue {
  std::complex<double> value;
  double error = 0.0;
  bool converged = true;
};

/// int cutoff(|xi|) dxi = I(0, 0).
double cutoff_mass(const PhaseIntegralSpec& spec);

/// Radial reduction int e^{i t r^{2s}} S(r |x|) cutoff(r) r^{n-1} dr with S the
/// sphere integral in Bessel form; panels keep the phase change of both
/// e^{i t r^{2s}} and S(r |x|) below pi/4. Requires a radial spec.
PhaseValue dispersive_integral_radial(const PhaseIntegralSpec& spec, double abs_x, double t);

/// General evaluation: radial reduction when shift = 0, nested angular
/// quadrature (n = 2, 3) otherwise.
PhaseValue dispersive_integral(const PhaseIntegralSpec& spec, std::span<const double> x, double t);

/// sup over |x| of |I(x, t)| for a radial spec: coarse scan over
/// [0, 1.2 * 2s t r_max^{2s-1} + 10] followed by golden-section refinement.
/// Returns the maximum and stores the maximizing |x| in *arg if given.
double sup_over_x(const PhaseIntegralSpec& spec, double t, double* arg = nullptr, int scan = 48);

enum class DecayProbe { kOrigin, kSupremum };

struct DecayFit {
  std::vector<double> t;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms deviation of the log-log fit
  bool degenerate = false;
  bool passed = false;    // slope <= -n/2 + 0.15
  DecayProbe probe = DecayProbe::kSupremum;
};

/// Least-squares slope of log |I| against log t over log-spaced t values.
DecayFit fit_dispersive_decay(const PhaseIntegralSpec& spec, std::span<const double> t_values,
                              DecayProbe probe = DecayProbe::kSupremum);

std::vector<double> log_spaced(double lo, double hi, int count);

nlohmann::json to_json(const DecayFit& fit);

struct L1SupProfile {
  std::vector<double> x1;
  std::vector<double> sup;      // approximate sup over (x', t): a lower bound
  double integral = 0.0;        // trapezoid over x1, doubled for x1 < 0
  double bound = 0.0;           // 2^{(n-1) l} 2^{k - l}
  double ratio = 0.0;
  bool stagnated = false;
};

/// int sup_{x', t} |int e^{i <x, xi>} e^{-i t |xi - shift|^{2s}} eta(|xi| / 2^l) dxi| dx1
/// approximated on x1_grid (nonnegative, increasing).
L1SupProfile l1_sup_profile(int k, int l, std::span<const double> shift, double s, int n,
                            std::span<const double> x1_grid, int sample_budget = 256,
                            std::uint64_t seed = 7);

}  // namespace fsl
