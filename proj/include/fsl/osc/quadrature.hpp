#pragma once

#include <complex>
#include <functional>

namespace fsl {

struct QuadResult {
  std::complex<double> value;
  double error = 0.0;   // Kronrod-Gauss difference summed over panels
  long evaluations = 0;
  bool converged = true;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// One 7/15-point Gauss-Kronrod panel.
QuadResult gauss_kronrod_15(const ComplexIntegrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod on [a, b], starting from `panels` equal
/// sub-intervals and bisecting the worst panel until the summed error is
/// below max(abs_tol, rel_tol * |value|) or max_panels is reached
/// (converged = false in that case).
QuadResult integrate(const ComplexIntegrand& f, double a, double b, double abs_tol,
                     double rel_tol = 0.0, int panels = 1, int max_panels = 200000);

}  // namespace fsl
