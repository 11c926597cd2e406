#include "fsl/osc/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsl/common/error.hpp"

namespace fsl {

namespace {

constexpr double kSeriesLimit = 20.0;

// sum_m (-1)^m (x/2)^{2m} / (m! Gamma(m + nu + 1)), i.e. (x/2)^{-nu} J_nu(x)
long double reduced_series(double nu, double x) {
  const long double q = -(static_cast<long double>(x) * x) / 4.0L;
  long double term = 1.0L / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  long double peak = std::fabs(term);
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<long double>(m) * (m + nu));
    sum += term;
    peak = std::max(peak, std::fabs(term));
    if (std::fabs(term) < 1e-24L * peak) break;
  }
  return sum;
}

double hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double a = 1.0;  // a_k(nu) / x^k
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * x);
    if (a == 0.0 || std::abs(a) > last) break;
    last = std::abs(a);
    // a_k contributes to P for even k and to Q for odd k, with sign (-1)^{k/2}
    const int r = k % 4;
    if (r == 1) q += a;
    else if (r == 2) p -= a;
    else if (r == 3) q -= a;
    else p += a;
    if (last < 1e-17) break;
  }
  const double w = x - 0.5 * nu * std::numbers::pi - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace

double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0) throw InvalidArgument("bessel_j needs nu >= 0 and x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x > kSeriesLimit) return hankel(nu, x);
  return static_cast<double>(reduced_series(nu, x) * std::pow(0.5L * x, static_cast<long double>(nu)));
}

double bessel_j_scaled(double nu, double x) {
  if (nu < 0.0 || x < 0.0) throw InvalidArgument("bessel_j_scaled needs nu >= 0 and x >= 0");
  if (x > kSeriesLimit) return hankel(nu, x) * std::pow(x, -nu);
  return static_cast<double>(reduced_series(nu, x) * std::pow(0.5L, static_cast<long double>(nu)));
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

QuadResult sphere_phase_integral(double rho, int n, double abs_tol) {
  if (n < 2) throw InvalidArgument("sphere integral needs n >= 2");
  if (rho < 0.0) throw InvalidArgument("rho must be nonnegative");
  const double lower = n == 2 ? 2.0 : sphere_area(n - 1);
  const int p = n - 2;
  auto f = [rho, p](double phi) {
    return std::polar(std::pow(std::sin(phi), p), rho * std::cos(phi));
  };
  const int panels = 2 + static_cast<int>(std::ceil(rho / 2.0));
  auto r = integrate(f, 0.0, std::numbers::pi, abs_tol / lower, 0.0, panels);
  r.value *= lower;
  r.error *= lower;
  return r;
}

double sphere_phase_bessel(double rho, int n) {
  if (n < 2) throw InvalidArgument("sphere integral needs n >= 2");
  if (rho == 0.0) return sphere_area(n);
  const double nu = 0.5 * (n - 2);
  return std::pow(2.0 * std::numbers::pi, 0.5 * n) * bessel_j_scaled(nu, rho);
}

}  // namespace fsl
