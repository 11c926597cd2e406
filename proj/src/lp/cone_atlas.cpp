#include "fsl/lp/cone_atlas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fsl/common/error.hpp"

namespace fsl {

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double angle_between(std::span<const double> w, const std::vector<double>& e, double wnorm) {
  double dot = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) dot += w[i] * e[i];
  return std::acos(std::clamp(dot / wnorm, -1.0, 1.0));
}

// Quasi-uniform points on S^{n-1}: an angular grid for n = 2, a Fibonacci
// lattice for n = 3, seeded Gaussian samples otherwise.
std::vector<std::vector<double>> candidates(int n) {
  std::vector<std::vector<double>> pts;
  if (n == 2) {
    const int count = 2048;
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * i / count;
      pts.push_back({std::cos(a), std::sin(a)});
    }
  } else if (n == 3) {
    const int count = 6000;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(1.0 - z * z);
      pts.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
  } else {
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(n));
    std::normal_distribution<double> g;
    const int count = 4000 * n;
    for (int i = 0; i < count; ++i) {
      std::vector<double> v(n);
      for (auto& c : v) c = g(rng);
      const double r = norm(v);
      for (auto& c : v) c /= r;
      pts.push_back(std::move(v));
    }
  }
  return pts;
}

}  // namespace

ConeAtlas::ConeAtlas(int dim, double margin, std::vector<std::vector<double>> directions,
                     Transition kind)
    : dim_(dim), margin_(margin), cap_angle_(std::acos(margin)), kind_(kind),
      directions_(std::move(directions)) {
  if (dim < 2) throw InvalidArgument("cone atlas needs n >= 2");
  if (!(margin > 0.0 && margin < 1.0)) throw InvalidArgument("cone margin must lie in (0, 1)");
  for (auto& e : directions_) {
    if (static_cast<int>(e.size()) != dim) throw InvalidArgument("direction has wrong dimension");
    const double r = norm(e);
    if (std::abs(r - 1.0) > 1e-12) throw InvalidArgument("direction is not a unit vector");
  }
}

int ConeAtlas::axis_of(std::size_t e, int* sign) const {
  const auto& d = directions_.at(e);
  for (int i = 0; i < dim_; ++i) {
    if (std::abs(std::abs(d[i]) - 1.0) < 1e-14) {
      if (sign) *sign = d[i] > 0 ? 1 : -1;
      return i;
    }
  }
  return -1;
}

double ConeAtlas::cap(std::size_t e, std::span<const double> xi) const {
  const double r = norm(xi);
  if (r == 0.0) return 1.0;
  const double theta = angle_between(xi, directions_.at(e), r);
  const double half = 0.5 * cap_angle_;
  return 1.0 - smooth_transition((theta - half) / half, kind_);
}

std::vector<double> ConeAtlas::weights(std::span<const double> xi) const {
  std::vector<double> w(directions_.size());
  double total = 0.0;
  for (std::size_t e = 0; e < w.size(); ++e) total += (w[e] = cap(e, xi));
  if (total <= 0.0) throw Error("cone atlas does not cover this direction");
  for (auto& v : w) v /= total;
  return w;
}

double ConeAtlas::weight(std::size_t e, std::span<const double> xi) const {
  return weights(xi)[e];
}

double ConeAtlas::nearest_angle(std::span<const double> w) const {
  const double r = norm(w);
  double best = std::numbers::pi;
  for (const auto& e : directions_) best = std::min(best, angle_between(w, e, r));
  return best;
}

ConeAtlas build_cone_atlas(int n, double margin, double cover_fraction) {
  if (n < 2) throw InvalidArgument("cone atlas needs n >= 2");
  if (!(margin > 0.0 && margin < 1.0)) throw InvalidArgument("cone margin must lie in (0, 1)");
  if (!(cover_fraction > 0.0 && cover_fraction < 1.0))
    throw InvalidArgument("cover fraction must lie in (0, 1)");
  const double radius = cover_fraction * std::acos(margin);

  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < n; ++i)
    for (int sg : {1, -1}) {
      std::vector<double> e(n, 0.0);
      e[i] = sg;
      dirs.push_back(std::move(e));
    }

  const auto pts = candidates(n);
  std::vector<double> dist(pts.size(), std::numbers::pi);
  auto absorb = [&](const std::vector<double>& e) {
    for (std::size_t p = 0; p < pts.size(); ++p)
      dist[p] = std::min(dist[p], angle_between(pts[p], e, 1.0));
  };
  for (const auto& e : dirs) absorb(e);
  for (;;) {
    const auto far = std::max_element(dist.begin(), dist.end());
    if (*far <= radius) break;
    dirs.push_back(pts[static_cast<std::size_t>(far - dist.begin())]);
    absorb(dirs.back());
  }
  return ConeAtlas(n, margin, std::move(dirs));
}

nlohmann::json to_json(const ConeAtlas& atlas) {
  return {{"dim", atlas.dim()},
          {"margin", atlas.margin()},
          {"cap_angle", atlas.cap_angle()},
          {"directions", atlas.directions()}};
}

ConeAtlas cone_atlas_from_json(const nlohmann::json& doc) {
  return ConeAtlas(doc.at("dim").get<int>(), doc.at("margin").get<double>(),
                   doc.at("directions").get<std::vector<std::vector<double>>>());
}

}  // namespace fsl
