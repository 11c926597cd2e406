#pragma once

#include <span>

#include <json.hpp>

#include "fsl/common/smooth.hpp"

namespace fsl {

/// Littlewood-Paley cutoffs.
///   eta: even, 1 on [-1.5, 1.5], 0 outside (-1.9, 1.9)
///   phi(r) = eta(r) - eta(2r): 1 on [0.95, 1.5], supported in (0.75, 1.9)
///   chi: even, 1 on [-1/3, 1/3], 0 outside (-2/3, 2/3); integer translates sum to 1
/// so that eta(r) + sum_{k>=1} phi(r / 2^k) = 1 and sum_{k in Z} phi(r / 2^k) = 1
/// for r > 0.
struct BumpPair {
  Plateau eta_profile{1.5, 1.9};
  Transition kind = Transition::kExponential;
  int order = 2;

  double eta(double r) const { return eta_profile(r); }
  double phi(double r) const { return eta_profile(r) - eta_profile(2.0 * r); }
  double chi(double x) const;

  // eta_{[a, b]}(r) = sum over integers m in [a, b] of phi(r / 2^m).
  double eta_band(double r, double a, double b) const;

  // prod_i chi((xi_i - center_i) / 2^k)
  double box(std::span<const double> xi, int k, std::span<const double> center) const;
};

/// smoothness >= 2. The default transition is the C-infinity exp(-1/y)
/// construction; Transition::kPolynomial gives a C^smoothness smoothstep.
BumpPair build_bumps(int smoothness = 2, Transition kind = Transition::kExponential);

nlohmann::json to_json(const BumpPair& b);
BumpPair bumps_from_json(const nlohmann::json& doc);

}  // namespace fsl
