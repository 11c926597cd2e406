#include "fsl/osc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace fsl {

namespace {

// Nodes on [0, 1] (symmetric); odd Kronrod nodes are the Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

QuadResult gauss_kronrod_15(const ComplexIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> k = kKronrod[7] * fc;
  std::complex<double> g = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const std::complex<double> s = f(c - dx) + f(c + dx);
    k += kKronrod[i] * s;
    if (i % 2 == 1) g += kGauss[i / 2] * s;
  }
  QuadResult r;
  r.value = k * h;
  r.error = std::abs((k - g) * h);
  r.evaluations = 15;
  return r;
}

QuadResult integrate(const ComplexIntegrand& f, double a, double b, double abs_tol,
                     double rel_tol, int panels, int max_panels) {
  QuadResult out;
  out.value = 0.0;
  if (a == b) return out;
  panels = std::max(panels, 1);
  std::priority_queue<Panel> heap;
  const double w = (b - a) / panels;
  std::complex<double> total = 0.0;
  double err = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + w * i;
    const double hi = (i + 1 == panels) ? b : a + w * (i + 1);
    const auto r = gauss_kronrod_15(f, lo, hi);
    out.evaluations += r.evaluations;
    total += r.value;
    err += r.error;
    heap.push({lo, hi, r.value, r.error});
  }
  int count = panels;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (count >= max_panels) {
      out.converged = false;
      break;
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval cannot be split further in floating point
      out.converged = false;
      heap.push(worst);
      break;
    }
    const auto l = gauss_kronrod_15(f, worst.a, mid);
    const auto r = gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 30;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push({worst.a, mid, l.value, l.error});
    heap.push({mid, worst.b, r.value, r.error});
    ++count;
  }
  // re-sum to limit drift from incremental updates
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = err;
  return out;
}

}  // namespace fsl
