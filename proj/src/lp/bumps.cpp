#include "fsl/lp/bumps.hpp"

#include <cmath>

#include "fsl/common/error.hpp"

namespace fsl {

double BumpPair::chi(double x) const {
  const double a = std::abs(x);
  if (a <= 1.0 / 3.0) return 1.0;
  if (a >= 2.0 / 3.0) return 0.0;
  return 1.0 - smooth_transition(3.0 * a - 1.0, kind, order);
}

double BumpPair::eta_band(double r, double a, double b) const {
  double sum = 0.0;
  for (double m = std::ceil(a); m <= b; m += 1.0) sum += phi(r / std::exp2(m));
  return sum;
}

double BumpPair::box(std::span<const double> xi, int k, std::span<const double> center) const {
  const double scale = std::exp2(-k);
  double v = 1.0;
  for (std::size_t i = 0; i < xi.size() && v != 0.0; ++i) v *= chi((xi[i] - center[i]) * scale);
  return v;
}

BumpPair build_bumps(int smoothness, Transition kind) {
  if (smoothness < 2) throw InvalidArgument("bump smoothness must be at least 2");
  BumpPair b;
  b.kind = kind;
  b.order = smoothness;
  b.eta_profile = Plateau{1.5, 1.9, kind, smoothness};
  return b;
}

nlohmann::json to_json(const BumpPair& b) {
  return {{"eta_inner", b.eta_profile.inner},
          {"eta_outer", b.eta_profile.outer},
          {"transition", b.kind == Transition::kExponential ? "exponential" : "polynomial"},
          {"order", b.order}};
}

BumpPair bumps_from_json(const nlohmann::json& doc) {
  const auto kind = doc.value("transition", std::string("exponential")) == "polynomial"
                        ? Transition::kPolynomial
                        : Transition::kExponential;
  BumpPair b = build_bumps(doc.value("order", 2), kind);
  b.eta_profile.inner = doc.value("eta_inner", 1.5);
  b.eta_profile.outer = doc.value("eta_outer", 1.9);
  return b;
}

}  // namespace fsl
