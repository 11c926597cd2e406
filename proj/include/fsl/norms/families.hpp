#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fsl/norms/norms.hpp"

namespace fsl {

/// Seeded random inputs for the ratio checks. All members share Gaussian
/// Fourier coefficients on the dyadic shell(s); they differ in time
/// dependence. Each mode xi evolves as c_xi e^{i t (|xi|^{2s} - mu_xi)}, so mu
/// is the modulation a = tau + |xi|^{2s} it occupies.
///   shell             mu = |xi|^{2s} (static in time)
///   free              mu = 0
///   modulated         mu = 1.5 * 2^j
///   random_modulation mu log-uniform in [1/2, 3 pi / (4 dt)] with random sign
///   cone              random_modulation times theta_e
///   broadband         random_modulation on shells k..k_hi with random weights
enum class FamilyKind { kShell, kFree, kModulated, kRandomModulation, kCone, kBroadband };

struct FamilySpec {
  FamilyKind kind = FamilyKind::kFree;
  int k = 2;
  int k_hi = 2;
  int j = 0;
  std::size_t direction = 0;
  bool core = false;  // keep only modes where phi(|xi| / 2^k) == 1
  std::uint64_t seed = 1;
};

std::string family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);
nlohmann::json to_json(const FamilySpec& spec);

// Gaussian coefficients times phi(|xi| / 2^k), as a spectrum.
Spectrum random_shell_spectrum(const Grid& g, int k, std::uint64_t seed, const BumpPair& bumps,
                               bool core = false);

Trajectory make_family_member(const FamilySpec& spec, const Grid& g, double t0, double dt,
                              std::size_t frames, const NormContext& ctx);

}  // namespace fsl
