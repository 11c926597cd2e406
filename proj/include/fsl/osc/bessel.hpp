#pragma once

#include <complex>

#include "fsl/osc/quadrature.hpp"

namespace fsl {

/// J_nu(x) for nu >= 0, x >= 0: power series (extended precision) for
/// x <= 20, Hankel asymptotic expansion beyond.
double bessel_j(double nu, double x);

/// x^{-nu} J_nu(x), finite at x = 0 (value 1 / (2^nu Gamma(nu + 1))).
double bessel_j_scaled(double nu, double x);

/// Surface measure |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Integral over S^{n-1} of e^{i rho theta_1} by adaptive quadrature over the
/// polar angle: |S^{n-2}| * int_0^pi e^{i rho cos(phi)} sin^{n-2}(phi) dphi.
QuadResult sphere_phase_integral(double rho, int n, double abs_tol = 1e-13);

/// Same integral through the Bessel closed form
/// (2 pi)^{n/2} rho^{-(n-2)/2} J_{(n-2)/2}(rho).
double sphere_phase_bessel(double rho, int n);

}  // namespace fsl
