#pragma once

namespace fsl {

enum class Transition { kExponential, kPolynomial };

/// Monotone transition 0 -> 1 on [0, 1], constant outside, with
/// h(y) + h(1 - y) = 1. kExponential is C-infinity (built from exp(-1/y));
/// kPolynomial is the symmetric smoothstep of class C^order.
double smooth_transition(double y, Transition kind = Transition::kExponential, int order = 2);

/// Radial plateau: 1 on |r| <= inner, 0 on |r| >= outer, smooth between.
struct Plateau {
  double inner = 1.0;
  double outer = 2.0;
  Transition kind = Transition::kExponential;
  int order = 2;

  double operator()(double r) const;
};

}  // namespace fsl
