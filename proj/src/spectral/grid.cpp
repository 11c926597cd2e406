#include "fsl/spectral/grid.hpp"

#include <cmath>
#include <numbers>

#include "fsl/common/error.hpp"

namespace fsl {

bool is_power_of_two(long long v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

Grid make_grid(int dim, int points, double length) {
  if (dim < 1) throw InvalidArgument("grid dimension must be >= 1");
  if (points < 4 || !is_power_of_two(points))
    throw InvalidArgument("points per axis must be a power of two >= 4");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("box length must be positive");
  Grid g;
  g.dim_ = dim;
  g.points_ = points;
  g.length_ = length;
  g.size_ = 1;
  for (int d = 0; d < dim; ++d) g.size_ *= static_cast<std::size_t>(points);
  return g;
}

double Grid::dk() const noexcept { return 2.0 * std::numbers::pi / length_; }

void Grid::unflatten(std::size_t flat, std::span<int> out) const noexcept {
  for (int d = dim_ - 1; d >= 0; --d) {
    out[d] = static_cast<int>(flat % points_);
    flat /= points_;
  }
}

std::size_t Grid::flatten(std::span<const int> index) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) {
    const int i = ((index[d] % points_) + points_) % points_;
    flat = flat * points_ + static_cast<std::size_t>(i);
  }
  return flat;
}

void Grid::position(std::size_t flat, std::span<double> x) const noexcept {
  const double h = dx();
  for (int d = dim_ - 1; d >= 0; --d) {
    x[d] = h * static_cast<double>(flat % points_);
    flat /= points_;
  }
}

void Grid::wavevector(std::size_t flat, std::span<double> xi) const noexcept {
  const double step = dk();
  for (int d = dim_ - 1; d >= 0; --d) {
    xi[d] = step * frequency_index(static_cast<int>(flat % points_));
    flat /= points_;
  }
}

double Grid::wavenumber(std::size_t flat) const noexcept {
  double sum = 0.0;
  for (int d = 0; d < dim_; ++d) {
    const double q = frequency_index(static_cast<int>(flat % points_));
    sum += q * q;
    flat /= points_;
  }
  return dk() * std::sqrt(sum);
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = wavenumber(i);
  return out;
}

double Grid::max_wavenumber() const noexcept {
  return dk() * (points_ / 2) * std::sqrt(static_cast<double>(dim_));
}

}  // namespace fsl
