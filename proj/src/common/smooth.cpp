#include "fsl/common/smooth.hpp"

#include <cmath>

namespace fsl {

namespace {

double exp_ramp(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double smooth_transition(double y, Transition kind, int order) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  if (kind == Transition::kExponential) {
    const double a = exp_ramp(y);
    const double b = exp_ramp(1.0 - y);
    return a / (a + b);
  }
  // S_k(y) = y^{k+1} sum_{j=0}^{k} C(k+j, j) (1-y)^j
  double sum = 0.0;
  double pw = 1.0;
  for (int j = 0; j <= order; ++j) {
    sum += binomial(order + j, j) * pw;
    pw *= 1.0 - y;
  }
  return std::pow(y, order + 1) * sum;
}

double Plateau::operator()(double r) const {
  const double a = std::abs(r);
  if (a <= inner) return 1.0;
  if (a >= outer) return 0.0;
  return 1.0 - smooth_transition((a - inner) / (outer - inner), kind, order);
}

}  // namespace fsl
