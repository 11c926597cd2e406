#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsl/common/smooth.hpp"
#include "fsl/spectral/duhamel.hpp"
#include "fsl/spectral/field.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fsl {

/// coeff * (D^{-beta}(u~1 u~2)) D^{beta} u~3, u~i = conj(u) when conjugate[i].
struct NonlinearTerm {
  double beta = 0.5;
  std::array<bool, 3> conjugate{false, true, false};
  Complex coeff{1.0, 0.0};
};

struct NonlinearitySpec {
  std::vector<NonlinearTerm> terms;

  // Single term beta = 2s - 1 with pattern (u, conj u, u): D^{-(2s-1)}|u|^2 D^{2s-1} u.
  static NonlinearitySpec standard(double s);
  // Throws InvalidArgument unless every beta lies in [-(2s-1)/2, 2s-1].
  void validate(double s) const;
};

Field apply_nonlinearity(const Field& u, const NonlinearitySpec& spec, double s,
                         ZeroModePolicy policy = ZeroModePolicy::kZeroOut);

struct InitialData {
  std::string kind = "gaussian_spectrum";  // or "file"
  double epsilon = 1e-2;                   // target lattice H^{(n-2s)/2} norm
  double width = 4.0;                      // Gaussian envelope width in |xi|
  std::uint64_t seed = 7;
  std::filesystem::path path;
};

struct SolveConfig {
  int dim = 2;
  int points = 32;
  double length = 6.283185307179586;
  double s = 0.75;
  std::size_t frames = 64;   // window [-frames dt / 2, frames dt / 2)
  double dt = 0.125;
  Plateau cutoff{1.0, 2.0};  // psi: 1 on [-1, 1], 0 outside (-2, 2)
  ZeroModePolicy zero_mode = ZeroModePolicy::kZeroOut;
  NonlinearitySpec nonlinearity;
  int max_iterations = 60;
  double tolerance = 1e-10;  // relative to ||u0||_{L^2}
  TimeRule rule = TimeRule::kTrapezoid;
  InitialData data;
  std::filesystem::path output_dir = "fslab_out";
  std::string prefix = "solve";

  Grid grid() const;
  double t0() const { return -0.5 * static_cast<double>(frames) * dt; }
  double critical_sigma() const { return (dim - 2.0 * s) / 2.0; }
  // Throws ConfigError on inconsistent settings.
  void validate() const;
};

SolveConfig default_solve_config(double s = 0.75);
SolveConfig solve_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SolveConfig& config);
// Reads a JSON config file; missing file or malformed content -> ConfigError.
SolveConfig load_solve_config(const std::filesystem::path& path);

Field make_initial_data(const SolveConfig& config);

/// T v(t) = e^{itD^{2s}} u0 - psi(t) i int_0^t e^{i(t-t')D^{2s}} F(v)(t') dt'.
Trajectory duhamel_map(const Trajectory& v, const Field& u0, const NonlinearitySpec& spec,
                       const SolveConfig& config);

struct SolveResult {
  Trajectory solution;
  std::vector<double> diff_linf_l2;   // ||u^{m+1} - u^m||_{L^inf L^2}
  std::vector<double> diff_f_sigma;   // same in the F^{(n-2s)/2} surrogate
  std::vector<double> contraction;    // successive ratios of diff_linf_l2
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  double apriori_ratio = 0.0;         // sup_t ||u||_{H^sc} / ||u0||_{H^sc}
  double f_sigma = 0.0;               // ||u||_{F^{sc}} surrogate
  double quadrature_estimate = 0.0;   // dt^2 heuristic for the time integral
  std::vector<std::string> notes;
};

nlohmann::json to_json(const SolveResult& r, const SolveConfig& config);

/// Picard iteration seeded with the free evolution. Throws DivergenceError when
/// the contraction ratio is >= 1 for three consecutive iterations or a
/// difference stops being finite.
SolveResult picard_solve(const Field& u0, const NonlinearitySpec& spec, const SolveConfig& config);

// ||u - T u||_{L^inf L^2} over |t| < 1, divided by ||u0||_{L^2} (absolute when u0 = 0).
double residual_check(const Trajectory& u, const Field& u0, const NonlinearitySpec& spec,
                      const SolveConfig& config);

// (dt^2 / 12) int |d_t^2 G| dt of the interaction-picture integrand of F(u).
double quadrature_error_estimate(const Trajectory& u, const NonlinearitySpec& spec,
                                 const SolveConfig& config);

struct DependenceProbe {
  double ratio_linf_l2 = 0.0;  // ||u - v||_{L^inf L^2} / ||u0 - v0||_{L^2}
  double ratio_hdot = 0.0;     // sup_t ||u - v||_{H^sc} / ||u0 - v0||_{H^sc}
  bool identical_data = false;
};

DependenceProbe continuous_dependence_probe(const Field& u0, const Field& v0,
                                            const NonlinearitySpec& spec, const SolveConfig& config);

}  // namespace fsl
