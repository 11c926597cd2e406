#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fsl/common/report.hpp"
#include "fsl/norms/norms.hpp"

namespace fsl {

enum class EstimateKind {
  kEmbedding,
  kLinftyL2,
  kSmoothing,
  kMaximal,
  kDsCommute,
  kMultiplierBound,
  kHomogeneous,
  kInhomogeneous,
  kTrilinear,
};

std::string estimate_name(EstimateKind kind);
EstimateKind estimate_from_name(const std::string& name);
const std::vector<EstimateKind>& all_estimates();

/// Lattice and family parameters for one ratio sweep.
struct EstimateInputs {
  int n = 2;
  int points = 32;
  double length = 6.283185307179586;
  std::size_t frames = 64;
  double dt = 0.25;
  int k = 2;
  std::size_t draws = 128;  // C* is compared against the first half
  std::uint64_t seed = 1;
  double sigma = -1.0;      // < 0: (n - 2s) / 2
  double beta = -1e9;       // trilinear; below range: drawn per sample
  std::array<bool, 3> conjugate{false, true, false};
  double inhomogeneous_span = 16.0;  // time span of the forcing lattice
};

// Suite defaults (T = frame count): n=2 m=32 T=64 dt=0.25, n=3 m=16 T=32 dt=0.5, k=2.
EstimateInputs default_inputs(int n);

nlohmann::json to_json(const EstimateInputs& in);

/// Worst ratio LHS / RHS over the seeded family. C* is the largest ratio over
/// all draws, c_star_half the largest over the first half; the report passes
/// when C* is finite and moves by less than 25% between the two.
RatioReport verify_estimate(EstimateKind kind, const EstimateInputs& inputs, const NormContext& ctx);

struct TrilinearTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

// (D^{-beta}(f1~ f2~)) D^{beta} f3~ in N^sigma against the three-term F^sigma
// product. conjugate[i] selects f_i or its complex conjugate.
TrilinearTerms trilinear_terms(const Trajectory& f1, const Trajectory& f2, const Trajectory& f3,
                               double beta, double sigma, const std::array<bool, 3>& conjugate,
                               const NormContext& ctx);

// Smoothing LHS: max over atlas axes e of ||F^{-1}(theta_e F(f))||_{L^inf_e L^2}.
double smoothing_lhs(const Trajectory& windowed, const NormContext& ctx);

}  // namespace fsl
