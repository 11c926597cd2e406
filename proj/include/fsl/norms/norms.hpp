#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fsl/lp/bumps.hpp"
#include "fsl/lp/cone_atlas.hpp"
#include "fsl/spectral/field.hpp"

namespace fsl {

/// L^p over the e-coordinate of L^q over (e-perp, t). e must be a lattice
/// axis (either sign); p, q >= 1, infinity allowed.
struct MixedNormSpec {
  std::vector<double> e;
  double p = 1.0;
  double q = 2.0;
};

// Lattice axis and sign of e; throws InvalidArgument if e is not +-axis.
int lattice_axis(const std::vector<double>& e, int dim, int* sign = nullptr);

double mixed_norm(const Trajectory& u, const MixedNormSpec& spec);

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct NormContext {
  BumpPair bumps;
  ConeAtlas atlas;
  double s = 0.75;
  TimeWindow window;
  int j_max = -1;              // < 0: default_j_max(dt)
  double support_tol = 1e-8;   // relative L^2 mass allowed outside the support
};

NormContext make_norm_context(int n, double s, double margin = 0.35);

struct NormReport {
  std::string kind;
  nlohmann::json parameters = nlohmann::json::object();
  double value = 0.0;
  std::string branch;
  nlohmann::json details = nlohmann::json::object();
  std::string diagnostic;

  bool bounded() const { return value < kUnbounded; }
};

nlohmann::json to_json(const NormReport& r);

struct ShellNorm {
  int k = 0;
  double z = 0.0;
  std::string branch;
};

struct DyadicSum {
  double value = 0.0;
  std::vector<ShellNorm> shells;  // only shells carrying mass

  double z(int k) const;
};

/// Precomputed symbols for one space-time lattice; every norm is evaluated on
/// the windowed space-time spectrum V of a trajectory.
class ResolutionSpace {
 public:
  ResolutionSpace(NormContext ctx, const Grid& grid, std::size_t frames, double dt);
  static ResolutionSpace for_trajectory(const NormContext& ctx, const Trajectory& u);

  const NormContext& context() const noexcept { return ctx_; }
  const Grid& grid() const noexcept { return grid_; }
  int j_max() const noexcept { return j_max_; }

  SpacetimeSpectrum transform(const Trajectory& u) const;
  Trajectory inverse(const SpacetimeSpectrum& V) const;

  // Multipliers on V.
  SpacetimeSpectrum shell(const SpacetimeSpectrum& V, int k) const;
  SpacetimeSpectrum shell_leq(const SpacetimeSpectrum& V, int k) const;
  SpacetimeSpectrum cone(const SpacetimeSpectrum& V, std::size_t e) const;
  SpacetimeSpectrum modulation_piece(const SpacetimeSpectrum& V, int j) const;
  SpacetimeSpectrum fractional(const SpacetimeSpectrum& V, double beta) const;
  // Arbitrary spatial multiplier m(xi), one value per lattice point.
  SpacetimeSpectrum spatial(const SpacetimeSpectrum& V, const std::vector<Complex>& m) const;
  // (i d_t + D^{2s} + i), symbol a + i with a the wrapped modulation.
  SpacetimeSpectrum schrodinger(const SpacetimeSpectrum& V) const;
  SpacetimeSpectrum schrodinger_inverse(const SpacetimeSpectrum& V) const;

  double l2(const SpacetimeSpectrum& V) const;
  double modulation(std::size_t index) const { return a_[index]; }

  // Relative L^2 mass of V outside supp phi(|xi| / 2^k) (and, with a cone
  // axis, outside {<xi, e> >= margin |xi|}).
  double outside_shell(const SpacetimeSpectrum& V, int k) const;
  double outside_cone(const SpacetimeSpectrum& V, int k, const std::vector<double>& e) const;

  double x_norm(const SpacetimeSpectrum& V, int k, std::string* diagnostic = nullptr) const;
  double y_norm(const SpacetimeSpectrum& V, int k, const std::vector<double>& e,
                std::string* diagnostic = nullptr) const;
  NormReport z_upper(const SpacetimeSpectrum& V, int k) const;

  DyadicSum f_sigma(const SpacetimeSpectrum& V, double sigma) const;
  DyadicSum n_sigma(const SpacetimeSpectrum& V, double sigma) const;

 private:
  struct Bins {
    int first = 0;     // Q-slot of w[0]; slot j_max + 1 is the remainder
    double w[3] = {0.0, 0.0, 0.0};
  };

  void check(const SpacetimeSpectrum& V) const;
  std::vector<double> shell_symbol(int k) const;
  double q_weight(std::size_t index, int slot) const;
  // X_k sum of the spatially weighted spectrum m V without the support gate.
  double x_value(const SpacetimeSpectrum& V, const std::vector<double>* m) const;
  double y_value(const SpacetimeSpectrum& V, const std::vector<double>* m, int k,
                 const std::vector<double>& e) const;

  NormContext ctx_;
  Grid grid_;
  std::size_t frames_;
  double dt_;
  int j_max_;
  double parseval_;
  std::vector<double> abs_xi_;
  std::vector<double> a_;
  std::vector<Bins> q_;
  std::vector<std::vector<double>> cone_;
  std::pair<int, int> k_range_;
};

double xk_norm(const Trajectory& u, int k, const NormContext& ctx, std::string* diagnostic = nullptr);
double yk_norm(const Trajectory& u, int k, const std::vector<double>& e, const NormContext& ctx,
               std::string* diagnostic = nullptr);
NormReport zk_upper(const Trajectory& u, int k, const NormContext& ctx);
double f_sigma_norm(const Trajectory& u, double sigma, const NormContext& ctx);
double n_sigma_norm(const Trajectory& F, double sigma, const NormContext& ctx);

}  // namespace fsl
