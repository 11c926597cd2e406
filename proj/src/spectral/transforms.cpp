#include "fsl/spectral/transforms.hpp"

#include <cmath>

#include "fft_plan.hpp"
#include "fsl/common/error.hpp"

namespace fsl {

namespace {

double volume_element(const Grid& g) { return std::pow(g.dx(), g.dim()); }
double box_volume(const Grid& g) { return std::pow(g.length(), g.dim()); }

void check_finite(const std::vector<Complex>& v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("field contains non-finite values");
}

}  // namespace

Spectrum dft_forward(const Field& f) {
  if (f.values.size() != f.grid.size()) throw InvalidArgument("field length does not match grid");
  check_finite(f.values);
  Spectrum out(f.grid, f.values);
  detail::fft_blocks(out.values.data(), f.grid.dim(), f.grid.points(), 1, -1);
  const double scale = volume_element(f.grid);
  for (auto& z : out.values) z *= scale;
  return out;
}

Field dft_inverse(const Spectrum& F) {
  if (F.values.size() != F.grid.size()) throw InvalidArgument("spectrum length does not match grid");
  Field out(F.grid, F.values);
  detail::fft_blocks(out.values.data(), F.grid.dim(), F.grid.points(), 1, +1);
  const double scale = 1.0 / box_volume(F.grid);
  for (auto& z : out.values) z *= scale;
  return out;
}

Trajectory apply_window(const Trajectory& u, const TimeWindow& window) {
  Trajectory out = u;
  if (window.kind == WindowKind::kNone) return out;
  const auto w = window.weights(u.frames);
  for (std::size_t f = 0; f < u.frames; ++f)
    for (auto& z : out.frame(f)) z *= w[f];
  return out;
}

SpacetimeSpectrum spacetime_dft(const Trajectory& u, const TimeWindow& window) {
  if (u.values.size() != u.grid.size() * u.frames)
    throw InvalidArgument("trajectory frames do not match the grid");
  if (!is_power_of_two(static_cast<long long>(u.frames)))
    throw InvalidArgument("frame count must be a power of two");
  SpacetimeSpectrum out;
  out.grid = u.grid;
  out.t0 = u.t0;
  out.dt = u.dt;
  out.frames = u.frames;
  out.window = window;
  out.values = apply_window(u, window).values;
  check_finite(out.values);
  const int block = static_cast<int>(u.grid.size());
  detail::fft_blocks(out.values.data(), u.grid.dim(), u.grid.points(), static_cast<int>(u.frames), -1);
  detail::fft_columns(out.values.data(), static_cast<int>(u.frames), block, +1);
  const double scale = volume_element(u.grid) * u.dt;
  for (auto& z : out.values) z *= scale;
  return out;
}

Trajectory spacetime_idft(const SpacetimeSpectrum& U) {
  Trajectory out(U.grid, U.t0, U.dt, U.frames);
  out.values = U.values;
  const int block = static_cast<int>(U.grid.size());
  detail::fft_columns(out.values.data(), static_cast<int>(U.frames), block, -1);
  detail::fft_blocks(out.values.data(), U.grid.dim(), U.grid.points(), static_cast<int>(U.frames), +1);
  const double scale = 1.0 / (box_volume(U.grid) * U.dt * static_cast<double>(U.frames));
  for (auto& z : out.values) z *= scale;
  return out;
}

double fractional_symbol_norm(double abs_xi, double beta) {
  if (beta == 0.0) return 1.0;
  if (abs_xi == 0.0) {
    if (beta < 0.0) throw ZeroModeError("zero mode with negative order");
    return 0.0;
  }
  return std::pow(abs_xi, beta);
}

double fractional_symbol(std::span<const double> xi, double beta) {
  double sum = 0.0;
  for (double c : xi) sum += c * c;
  return fractional_symbol_norm(std::sqrt(sum), beta);
}

Spectrum apply_fractional(const Spectrum& f, double beta, ZeroModePolicy policy) {
  Spectrum out = f;
  if (beta == 0.0) return out;
  if (beta < 0.0) {
    double total = 0.0;
    for (const auto& z : f.values) total += std::norm(z);
    const double zero = std::abs(f.values[0]);
    if (policy == ZeroModePolicy::kReject && zero > 1e-12 * std::sqrt(total))
      throw ZeroModeError("zero mode with negative order (policy: reject)");
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double k = f.grid.wavenumber(i);
    out.values[i] *= (k == 0.0) ? 0.0 : std::pow(k, beta);
  }
  return out;
}

Field apply_fractional(const Field& f, double beta, ZeroModePolicy policy) {
  if (beta == 0.0) return f;
  return dft_inverse(apply_fractional(dft_forward(f), beta, policy));
}

Spectrum linear_propagate(const Spectrum& f, double t, double s) {
  if (!(s > 0.5 && s <= 1.0)) throw InvalidArgument("order s must lie in (1/2, 1]");
  Spectrum out = f;
  if (t == 0.0) return out;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double w = std::pow(f.grid.wavenumber(i), 2.0 * s);
    out.values[i] *= std::polar(1.0, t * w);
  }
  return out;
}

Field linear_propagate(const Field& f, double t, double s) {
  if (t == 0.0) {
    if (!(s > 0.5 && s <= 1.0)) throw InvalidArgument("order s must lie in (1/2, 1]");
    return f;
  }
  return dft_inverse(linear_propagate(dft_forward(f), t, s));
}

double l2_norm(const Field& f) {
  double sum = 0.0;
  for (const auto& z : f.values) sum += std::norm(z);
  return std::sqrt(sum * volume_element(f.grid));
}

double l2_norm(const Spectrum& F) {
  double sum = 0.0;
  for (const auto& z : F.values) sum += std::norm(z);
  return std::sqrt(sum / box_volume(F.grid));
}

double hdot_norm(const Spectrum& F, double sigma) {
  double sum = 0.0;
  for (std::size_t i = 1; i < F.values.size(); ++i) {
    const double k = F.grid.wavenumber(i);
    sum += std::pow(k, 2.0 * sigma) * std::norm(F.values[i]);
  }
  return std::sqrt(sum / box_volume(F.grid));
}

double hdot_norm(const Field& f, double sigma) { return hdot_norm(dft_forward(f), sigma); }

double l2_norm(const Trajectory& u) {
  double sum = 0.0;
  for (const auto& z : u.values) sum += std::norm(z);
  return std::sqrt(sum * volume_element(u.grid) * u.dt);
}

double linf_l2_norm(const Trajectory& u) {
  double best = 0.0;
  for (std::size_t f = 0; f < u.frames; ++f) {
    double sum = 0.0;
    for (const auto& z : u.frame(f)) sum += std::norm(z);
    best = std::max(best, sum);
  }
  return std::sqrt(best * volume_element(u.grid));
}

double l2_norm(const SpacetimeSpectrum& U) {
  double sum = 0.0;
  for (const auto& z : U.values) sum += std::norm(z);
  return std::sqrt(sum / (box_volume(U.grid) * U.dt * static_cast<double>(U.frames)));
}

}  // namespace fsl
