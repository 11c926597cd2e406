#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "fsl/common/smooth.hpp"

namespace fsl {

/// Finite direction set on S^{n-1} with a smooth partition of unity
/// theta_e(w) = psi_e(w) / sum_e' psi_e'(w), where psi_e is 1 within half the
/// cap angle arccos(margin) of e and vanishes from the cap angle on. Hence
/// theta_e(w) > 0 only if <w, e> > margin.
class ConeAtlas {
 public:
  ConeAtlas() = default;
  ConeAtlas(int dim, double margin, std::vector<std::vector<double>> directions,
            Transition kind = Transition::kExponential);

  int dim() const noexcept { return dim_; }
  double margin() const noexcept { return margin_; }
  double cap_angle() const noexcept { return cap_angle_; }
  std::size_t size() const noexcept { return directions_.size(); }
  const std::vector<double>& direction(std::size_t e) const { return directions_.at(e); }
  const std::vector<std::vector<double>>& directions() const noexcept { return directions_; }

  // Axis index and sign when direction e is +-(unit axis), else -1.
  int axis_of(std::size_t e, int* sign = nullptr) const;

  // psi_e and theta_e at a (not necessarily normalized) nonzero vector.
  // theta_e(0) is defined as 1 / size().
  double cap(std::size_t e, std::span<const double> xi) const;
  double weight(std::size_t e, std::span<const double> xi) const;
  std::vector<double> weights(std::span<const double> xi) const;

  // Largest angle from w to the nearest direction.
  double nearest_angle(std::span<const double> w) const;

 private:
  int dim_ = 0;
  double margin_ = 0.5;
  double cap_angle_ = 0.0;
  Transition kind_ = Transition::kExponential;
  std::vector<std::vector<double>> directions_;
};

/// Greedy covering of S^{n-1} by caps of angular radius
/// cover_fraction * arccos(margin), seeded with the +-axes; candidates are a
/// deterministic quasi-uniform point set. Throws InvalidArgument unless
/// n >= 2 and margin in (0, 1).
ConeAtlas build_cone_atlas(int n, double margin, double cover_fraction = 0.8);

nlohmann::json to_json(const ConeAtlas& atlas);
ConeAtlas cone_atlas_from_json(const nlohmann::json& doc);

}  // namespace fsl
