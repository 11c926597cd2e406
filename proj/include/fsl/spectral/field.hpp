#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsl/spectral/grid.hpp"

namespace fsl {

/// Complex lattice function at one time.
struct Field {
  Grid grid;
  std::vector<Complex> values;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), values(g.size()) {}
  Field(const Grid& g, std::vector<Complex> v);
};

/// Frequency-domain counterpart of Field (FFT order), normalized so that
/// a constant c maps to c * L^n at xi = 0.
struct Spectrum {
  Grid grid;
  std::vector<Complex> values;

  Spectrum() = default;
  explicit Spectrum(const Grid& g) : grid(g), values(g.size()) {}
  Spectrum(const Grid& g, std::vector<Complex> v);
};

/// Uniformly sampled sequence of fields; frame f lives at t0 + f * dt.
/// Values are frame-major: values[f * grid.size() + x].
struct Trajectory {
  Grid grid;
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t frames = 0;
  std::vector<Complex> values;

  Trajectory() = default;
  Trajectory(const Grid& g, double t0, double dt, std::size_t frames);

  double time(std::size_t f) const noexcept { return t0 + dt * static_cast<double>(f); }
  double duration() const noexcept { return dt * static_cast<double>(frames); }
  std::span<Complex> frame(std::size_t f);
  std::span<const Complex> frame(std::size_t f) const;
  Field field(std::size_t f) const;
  void set_frame(std::size_t f, const Field& field);

  // Builds a trajectory from fields; throws InvalidArgument on grid mismatch
  // or a non power-of-two frame count.
  static Trajectory from_fields(double t0, double dt, const std::vector<Field>& fields);
};

enum class WindowKind { kNone, kTaper };

/// Temporal window applied before the space-time transform. The taper ramps
/// smoothly from 0 to 1 over `fraction` of the frames at each end.
struct TimeWindow {
  WindowKind kind = WindowKind::kTaper;
  double fraction = 0.1;

  static TimeWindow none() { return {WindowKind::kNone, 0.0}; }
  static TimeWindow taper(double fraction = 0.1) { return {WindowKind::kTaper, fraction}; }

  std::vector<double> weights(std::size_t frames) const;
};

/// Space-time transform of a (windowed) trajectory. Layout matches
/// Trajectory: values[tau_index * grid.size() + xi_index], both in FFT order.
/// tau lattice: (2 pi / (frames * dt)) * {-frames/2, ..., frames/2 - 1}.
struct SpacetimeSpectrum {
  Grid grid;
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t frames = 0;
  TimeWindow window;
  std::vector<Complex> values;

  double dtau() const noexcept;
  double tau(std::size_t f) const noexcept;
  // Period of the tau variable, 2 pi / dt.
  double tau_period() const noexcept;

 private:
  SpacetimeSpectrum() = default;
  friend SpacetimeSpectrum spacetime_dft(const Trajectory&, const TimeWindow&);
  friend SpacetimeSpectrum blank_like(const SpacetimeSpectrum&);
};

// Zero-valued spectrum with the same lattices and window as `like`.
SpacetimeSpectrum blank_like(const SpacetimeSpectrum& like);

}  // namespace fsl
