#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fsl {

using Complex = std::complex<double>;

/// Periodic lattice [0, L)^n with m points per axis and its dual frequency
/// lattice (2 pi / L) * {-m/2, ..., m/2 - 1}^n. Storage is row-major with the
/// last axis fastest; frequencies are kept in FFT order.
class Grid {
 public:
  Grid() = default;

  int dim() const noexcept { return dim_; }
  int points() const noexcept { return points_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / points_; }
  double dk() const noexcept;
  std::size_t size() const noexcept { return size_; }

  // Signed frequency index of storage index i along one axis.
  int frequency_index(int i) const noexcept { return i < points_ / 2 ? i : i - points_; }

  // Multi-index of a flat storage offset.
  void unflatten(std::size_t flat, std::span<int> out) const noexcept;
  std::size_t flatten(std::span<const int> index) const noexcept;

  void position(std::size_t flat, std::span<double> x) const noexcept;
  void wavevector(std::size_t flat, std::span<double> xi) const noexcept;
  double wavenumber(std::size_t flat) const noexcept;

  // |xi| for every lattice point, cached per call site by the caller.
  std::vector<double> wavenumbers() const;

  // Largest |xi| on the lattice and smallest nonzero |xi|.
  double max_wavenumber() const noexcept;
  double min_wavenumber() const noexcept { return dk(); }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.length_ == b.length_;
  }

  friend Grid make_grid(int dim, int points, double length);

 private:
  int dim_ = 0;
  int points_ = 0;
  double length_ = 0.0;
  std::size_t size_ = 0;
};

// Throws InvalidArgument unless dim >= 1, points is a power of two >= 4 and
// length > 0.
Grid make_grid(int dim, int points, double length);

bool is_power_of_two(long long v) noexcept;

}  // namespace fsl
