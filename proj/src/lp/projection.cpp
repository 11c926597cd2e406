#include "fsl/lp/projection.hpp"

#include <cmath>
#include <numbers>

#include "fsl/common/error.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fsl {

double modulation(double tau, double abs_xi, double s, double dt) {
  const double a = tau + std::pow(abs_xi, 2.0 * s);
  const double period = 2.0 * std::numbers::pi / dt;
  return a - period * std::floor((a + 0.5 * period) / period);
}

double modulation_symbol(const BumpPair& b, int j, double a) {
  return j == 0 ? b.eta(a) : b.phi(a / std::exp2(j));
}

double spatial_symbol(const ProjectionSpec& spec, std::span<const double> xi,
                      const BumpPair& bumps, const ConeAtlas* atlas) {
  double r2 = 0.0;
  for (double c : xi) r2 += c * c;
  const double r = std::sqrt(r2);
  switch (spec.kind) {
    case ProjectionKind::kDyadic:
      return r == 0.0 ? 0.0 : bumps.phi(r / std::exp2(spec.k));
    case ProjectionKind::kDyadicLeq:
      return r == 0.0 ? 0.0 : bumps.eta(r / std::exp2(spec.k));
    case ProjectionKind::kBox:
      if (spec.center.size() != xi.size()) throw InvalidArgument("box center has wrong dimension");
      return bumps.box(xi, spec.k, spec.center);
    case ProjectionKind::kCone:
      if (!atlas) throw InvalidArgument("cone projection needs an atlas");
      return atlas->weight(spec.direction, xi);
    case ProjectionKind::kModulation:
      break;
  }
  throw InvalidArgument("modulation projection needs a space-time spectrum");
}

namespace {

std::vector<double> spatial_symbols(const Grid& g, const ProjectionSpec& spec,
                                    const BumpPair& bumps, const ConeAtlas* atlas) {
  std::vector<double> m(g.size());
  std::vector<double> xi(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.wavevector(i, xi);
    m[i] = spatial_symbol(spec, xi, bumps, atlas);
  }
  return m;
}

}  // namespace

Spectrum project(const Spectrum& F, const ProjectionSpec& spec, const BumpPair& bumps,
                 const ConeAtlas* atlas) {
  if (spec.kind == ProjectionKind::kModulation)
    throw InvalidArgument("Q_j needs a space-time spectrum (no tau variable on a field)");
  const auto m = spatial_symbols(F.grid, spec, bumps, atlas);
  Spectrum out = F;
  for (std::size_t i = 0; i < m.size(); ++i) out.values[i] *= m[i];
  return out;
}

SpacetimeSpectrum project(const SpacetimeSpectrum& U, const ProjectionSpec& spec,
                          const BumpPair& bumps, const ConeAtlas* atlas) {
  SpacetimeSpectrum out = U;
  const std::size_t block = U.grid.size();
  if (spec.kind == ProjectionKind::kModulation) {
    const auto k = U.grid.wavenumbers();
    for (std::size_t f = 0; f < U.frames; ++f) {
      const double tau = U.tau(f);
      for (std::size_t i = 0; i < block; ++i)
        out.values[f * block + i] *=
            modulation_symbol(bumps, spec.j, modulation(tau, k[i], spec.s, U.dt));
    }
    return out;
  }
  const auto m = spatial_symbols(U.grid, spec, bumps, atlas);
  for (std::size_t f = 0; f < U.frames; ++f)
    for (std::size_t i = 0; i < block; ++i) out.values[f * block + i] *= m[i];
  return out;
}

Field project(const Field& f, const ProjectionSpec& spec, const BumpPair& bumps,
              const ConeAtlas* atlas) {
  return dft_inverse(project(dft_forward(f), spec, bumps, atlas));
}

Trajectory project_spatial(const Trajectory& u, const ProjectionSpec& spec, const BumpPair& bumps,
                           const ConeAtlas* atlas) {
  if (spec.kind == ProjectionKind::kModulation)
    throw InvalidArgument("Q_j is not a spatial projection");
  const auto m = spatial_symbols(u.grid, spec, bumps, atlas);
  Trajectory out = u;
  for (std::size_t f = 0; f < u.frames; ++f) {
    Spectrum F = dft_forward(u.field(f));
    for (std::size_t i = 0; i < m.size(); ++i) F.values[i] *= m[i];
    out.set_frame(f, dft_inverse(F));
  }
  return out;
}

std::pair<int, int> dyadic_range(const Grid& g) {
  const int lo = static_cast<int>(std::floor(std::log2(g.min_wavenumber() / 1.9)));
  const int hi = static_cast<int>(std::ceil(std::log2(g.max_wavenumber() / 0.75)));
  return {lo, hi};
}

std::vector<std::vector<double>> box_centers(const Grid& g, int k) {
  const double side = std::exp2(k);
  const double reach = side * (2.0 / 3.0);
  std::vector<double> coords;
  for (int i = -g.points() / 2; i < g.points() / 2; ++i) coords.push_back(i * g.dk());
  std::vector<double> axis;
  const long first = static_cast<long>(std::floor(coords.front() / side)) - 1;
  const long last = static_cast<long>(std::ceil(coords.back() / side)) + 1;
  for (long c = first; c <= last; ++c) {
    const double l = c * side;
    for (double x : coords)
      if (std::abs(x - l) < reach) {
        axis.push_back(l);
        break;
      }
  }
  std::vector<std::vector<double>> out{{}};
  for (int d = 0; d < g.dim(); ++d) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (double l : axis) {
        auto v = prefix;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

int default_j_max(double dt) {
  const double top = std::numbers::pi / dt;
  int j = 0;
  while (1.5 * std::exp2(j) < top) ++j;
  return j;
}

ModulationSplit modulation_split(const Trajectory& u, double s, int j_max, const BumpPair& bumps,
                                 const TimeWindow& window) {
  if (j_max < 0) j_max = default_j_max(u.dt);
  const SpacetimeSpectrum U = spacetime_dft(u, window);
  ModulationSplit out;
  const auto k = u.grid.wavenumbers();
  const std::size_t block = u.grid.size();
  std::vector<double> a(U.values.size());
  for (std::size_t f = 0; f < U.frames; ++f)
    for (std::size_t i = 0; i < block; ++i) a[f * block + i] = modulation(U.tau(f), k[i], s, U.dt);

  for (int j = 0; j <= j_max; ++j) {
    SpacetimeSpectrum P = U;
    for (std::size_t i = 0; i < P.values.size(); ++i) P.values[i] *= modulation_symbol(bumps, j, a[i]);
    out.pieces.emplace_back(j, spacetime_idft(P));
  }
  SpacetimeSpectrum R = U;
  const double scale = std::exp2(-j_max);
  for (std::size_t i = 0; i < R.values.size(); ++i) R.values[i] *= 1.0 - bumps.eta(a[i] * scale);
  const double total = l2_norm(U);
  const double rest = l2_norm(R);
  out.remainder = spacetime_idft(R);
  out.remainder_fraction = total > 0.0 ? (rest * rest) / (total * total) : 0.0;
  out.warning = out.remainder_fraction > 0.01;
  return out;
}

}  // namespace fsl
