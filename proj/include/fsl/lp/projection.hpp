#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fsl/lp/bumps.hpp"
#include "fsl/lp/cone_atlas.hpp"
#include "fsl/spectral/field.hpp"

namespace fsl {

enum class ProjectionKind { kDyadic, kDyadicLeq, kModulation, kBox, kCone };

struct ProjectionSpec {
  ProjectionKind kind = ProjectionKind::kDyadic;
  int k = 0;                    // Delta_k, Delta_{<=k}, P_{k,l}
  int j = 0;                    // Q_j
  double s = 0.75;              // Q_j
  std::vector<double> center;   // P_{k,l}: l in 2^k Z^n
  std::size_t direction = 0;    // theta_e: index into the atlas

  static ProjectionSpec dyadic(int k) {
    ProjectionSpec p;
    p.k = k;
    return p;
  }
  static ProjectionSpec dyadic_leq(int k) {
    ProjectionSpec p;
    p.kind = ProjectionKind::kDyadicLeq;
    p.k = k;
    return p;
  }
  static ProjectionSpec modulation(int j, double s) {
    ProjectionSpec p;
    p.kind = ProjectionKind::kModulation;
    p.j = j;
    p.s = s;
    return p;
  }
  static ProjectionSpec box(int k, std::vector<double> center) {
    ProjectionSpec p;
    p.kind = ProjectionKind::kBox;
    p.k = k;
    p.center = std::move(center);
    return p;
  }
  static ProjectionSpec cone(std::size_t e) {
    ProjectionSpec p;
    p.kind = ProjectionKind::kCone;
    p.direction = e;
    return p;
  }
};

/// Modulation a = tau + |xi|^{2s}, wrapped into the sampled tau period
/// [-pi/dt, pi/dt).
double modulation(double tau, double abs_xi, double s, double dt);

/// Q_j symbol: eta(a) for j = 0, phi(a / 2^j) for j >= 1.
double modulation_symbol(const BumpPair& b, int j, double a);

/// Value of a spatial-frequency cutoff (anything but Q_j) at xi.
/// Delta_k and Delta_{<=k} vanish at xi = 0.
double spatial_symbol(const ProjectionSpec& spec, std::span<const double> xi,
                      const BumpPair& bumps, const ConeAtlas* atlas = nullptr);

Spectrum project(const Spectrum& F, const ProjectionSpec& spec, const BumpPair& bumps,
                 const ConeAtlas* atlas = nullptr);
SpacetimeSpectrum project(const SpacetimeSpectrum& U, const ProjectionSpec& spec,
                          const BumpPair& bumps, const ConeAtlas* atlas = nullptr);

// Physical-space conveniences (transform, multiply, transform back).
Field project(const Field& f, const ProjectionSpec& spec, const BumpPair& bumps,
              const ConeAtlas* atlas = nullptr);
// Spatial projections act frame by frame without windowing.
Trajectory project_spatial(const Trajectory& u, const ProjectionSpec& spec, const BumpPair& bumps,
                           const ConeAtlas* atlas = nullptr);

/// Dyadic indices k whose shell phi(|xi| / 2^k) meets a nonzero lattice point.
std::pair<int, int> dyadic_range(const Grid& g);

/// Box centers l in 2^k Z^n whose box cutoff meets the frequency lattice.
std::vector<std::vector<double>> box_centers(const Grid& g, int k);

/// Smallest J with 1.5 * 2^J >= pi / dt, so eta(a / 2^J) = 1 on the whole
/// wrapped tau period and the modulation remainder vanishes.
int default_j_max(double dt);

struct ModulationSplit {
  std::vector<std::pair<int, Trajectory>> pieces;  // (j, Q_j u)
  Trajectory remainder;
  double remainder_fraction = 0.0;  // remainder energy / windowed energy
  bool warning = false;             // remainder above 1% of the energy
};

/// Q_0 u, ..., Q_{j_max} u of the windowed trajectory plus the remainder
/// (1 - eta(a / 2^{j_max})) u. Pieces sum to the windowed trajectory.
/// j_max < 0 selects default_j_max(u.dt).
ModulationSplit modulation_split(const Trajectory& u, double s, int j_max, const BumpPair& bumps,
                                 const TimeWindow& window = {});

}  // namespace fsl
