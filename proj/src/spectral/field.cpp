#include "fsl/spectral/field.hpp"

#include <algorithm>
#include <numbers>

#include "fsl/common/error.hpp"
#include "fsl/common/smooth.hpp"

namespace fsl {

Field::Field(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw InvalidArgument("field length does not match grid");
}

Spectrum::Spectrum(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw InvalidArgument("spectrum length does not match grid");
}

Trajectory::Trajectory(const Grid& g, double t0_, double dt_, std::size_t frames_)
    : grid(g), t0(t0_), dt(dt_), frames(frames_), values(g.size() * frames_) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  if (!is_power_of_two(static_cast<long long>(frames)))
    throw InvalidArgument("frame count must be a power of two");
}

std::span<Complex> Trajectory::frame(std::size_t f) {
  return {values.data() + f * grid.size(), grid.size()};
}

std::span<const Complex> Trajectory::frame(std::size_t f) const {
  return {values.data() + f * grid.size(), grid.size()};
}

Field Trajectory::field(std::size_t f) const {
  auto fr = frame(f);
  return Field(grid, std::vector<Complex>(fr.begin(), fr.end()));
}

void Trajectory::set_frame(std::size_t f, const Field& field) {
  if (!(field.grid == grid)) throw InvalidArgument("frame grid mismatch");
  std::copy(field.values.begin(), field.values.end(), frame(f).begin());
}

Trajectory Trajectory::from_fields(double t0, double dt, const std::vector<Field>& fields) {
  if (fields.empty()) throw InvalidArgument("trajectory needs at least one frame");
  Trajectory u(fields.front().grid, t0, dt, fields.size());
  for (std::size_t f = 0; f < fields.size(); ++f) u.set_frame(f, fields[f]);
  return u;
}

std::vector<double> TimeWindow::weights(std::size_t frames) const {
  std::vector<double> w(frames, 1.0);
  if (kind == WindowKind::kNone || fraction <= 0.0) return w;
  const double n = static_cast<double>(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / n;
    const double edge = std::min(x, 1.0 - x);
    w[i] = smooth_transition(edge / fraction);
  }
  return w;
}

double SpacetimeSpectrum::dtau() const noexcept {
  return 2.0 * std::numbers::pi / (dt * static_cast<double>(frames));
}

double SpacetimeSpectrum::tau(std::size_t f) const noexcept {
  const long half = static_cast<long>(frames / 2);
  const long i = static_cast<long>(f);
  return dtau() * static_cast<double>(i < half ? i : i - static_cast<long>(frames));
}

double SpacetimeSpectrum::tau_period() const noexcept { return 2.0 * std::numbers::pi / dt; }

SpacetimeSpectrum blank_like(const SpacetimeSpectrum& like) {
  SpacetimeSpectrum out;
  out.grid = like.grid;
  out.t0 = like.t0;
  out.dt = like.dt;
  out.frames = like.frames;
  out.window = like.window;
  out.values.assign(like.values.size(), Complex{});
  return out;
}

}  // namespace fsl
