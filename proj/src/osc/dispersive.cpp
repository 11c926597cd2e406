#include "fsl/osc/dispersive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fsl/common/error.hpp"
#include "fsl/common/parallel.hpp"
#include "fsl/osc/bessel.hpp"

namespace fsl {

namespace {

constexpr double kPanelPhase = std::numbers::pi / 4.0;

double sphere_function(double z, int n) {
  if (n == 3) {
    if (z < 1e-8) return 4.0 * std::numbers::pi * (1.0 - z * z / 6.0);
    return 4.0 * std::numbers::pi * std::sin(z) / z;
  }
  return sphere_phase_bessel(z, n);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

int panel_count(double lo, double hi, double rate) {
  const double phase = (hi - lo) * rate;
  return std::max(4, static_cast<int>(std::ceil(phase / kPanelPhase)));
}

// Periodic trapezoid with doubling until two successive estimates agree.
template <class F>
std::complex<double> periodic_trapezoid(F f, double period, double tol, int start) {
  int m = start;
  auto sum = [&](int count) {
    std::complex<double> acc = 0.0;
    const double h = period / count;
    for (int i = 0; i < count; ++i) acc += f(h * i);
    return acc * h;
  };
  std::complex<double> prev = sum(m);
  for (int iter = 0; iter < 10; ++iter) {
    m *= 2;
    const std::complex<double> next = sum(m);
    if (std::abs(next - prev) <= tol) return next;
    prev = next;
  }
  return prev;
}

}  // namespace

double RadialCutoff::operator()(double r) const {
  switch (kind) {
    case CutoffKind::kAnnulus: {
      const double u = r / std::exp2(scale);
      return profile(u) - profile(2.0 * u);
    }
    case CutoffKind::kBall:
      return profile(r / std::exp2(scale));
    case CutoffKind::kShiftedAnnulus:
      return profile(r - lambda);
  }
  return 0.0;
}

double RadialCutoff::r_min() const {
  switch (kind) {
    case CutoffKind::kAnnulus:
      return 0.5 * profile.inner * std::exp2(scale);
    case CutoffKind::kBall:
      return 0.0;
    case CutoffKind::kShiftedAnnulus:
      return std::max(0.0, lambda - profile.outer);
  }
  return 0.0;
}

double RadialCutoff::r_max() const {
  switch (kind) {
    case CutoffKind::kAnnulus:
    case CutoffKind::kBall:
      return profile.outer * std::exp2(scale);
    case CutoffKind::kShiftedAnnulus:
      return lambda + profile.outer;
  }
  return 0.0;
}

bool PhaseIntegralSpec::radial() const {
  return std::all_of(shift.begin(), shift.end(), [](double c) { return c == 0.0; });
}

double cutoff_mass(const PhaseIntegralSpec& spec) {
  const auto& c = spec.cutoff;
  const int n = spec.n;
  auto f = [&](double r) { return std::complex<double>(c(r) * std::pow(r, n - 1), 0.0); };
  const auto q = integrate(f, c.r_min(), c.r_max(), 0.0, 1e-13, 8);
  return sphere_area(n) * q.value.real();
}

PhaseValue dispersive_integral_radial(const PhaseIntegralSpec& spec, double abs_x, double t) {
  if (spec.n < 2) throw InvalidArgument("dispersive integral needs n >= 2");
  if (!(spec.s > 0.5 && spec.s <= 1.0)) throw InvalidArgument("order s must lie in (1/2, 1]");
  if (!spec.radial()) throw InvalidArgument("radial reduction needs a zero shift");
  const auto& c = spec.cutoff;
  const int n = spec.n;
  const double s2 = 2.0 * spec.s;
  const double lo = c.r_min();
  const double hi = c.r_max();
  const double rate = s2 * std::abs(t) * std::max(std::pow(hi, s2 - 1.0), std::pow(std::max(lo, 1e-300), s2 - 1.0)) + abs_x;
  auto f = [&](double r) {
    const double w = c(r);
    if (w == 0.0) return std::complex<double>(0.0, 0.0);
    return std::polar(w * std::pow(r, n - 1) * sphere_function(r * abs_x, n), t * std::pow(r, s2));
  };
  const double tol = spec.rel_tol * cutoff_mass(spec);
  const auto q = integrate(f, lo, hi, tol, 0.0, panel_count(lo, hi, rate));
  return {q.value, q.error, q.converged};
}

PhaseValue dispersive_integral(const PhaseIntegralSpec& spec, std::span<const double> x, double t) {
  if (static_cast<int>(x.size()) != spec.n) throw InvalidArgument("x has the wrong dimension");
  if (spec.radial()) return dispersive_integral_radial(spec, norm(x), t);
  if (spec.n != 2 && spec.n != 3)
    throw InvalidArgument("shifted phase integrals are implemented for n = 2, 3");
  if (static_cast<int>(spec.shift.size()) != spec.n) throw InvalidArgument("shift has the wrong dimension");

  // zeta = xi - shift: I = e^{-i <x, shift>} int e^{i (t |zeta|^{2s} - <x, zeta>)} c(|zeta + shift|)
  const auto& c = spec.cutoff;
  const auto& m = spec.shift;
  const int n = spec.n;
  const double s2 = 2.0 * spec.s;
  const double ax = norm(x);
  const double am = norm(m);
  const double lo = std::max(0.0, am - c.r_max());
  const double hi = am + c.r_max();
  const double mass = cutoff_mass(spec);
  const double tol = spec.rel_tol * mass;
  const double pi = std::numbers::pi;

  auto angular = [&](double r) -> std::complex<double> {
    auto point = [&](const double* w) {
      double q = 0.0, xw = 0.0;
      for (int i = 0; i < n; ++i) {
        const double z = r * w[i] + m[i];
        q += z * z;
        xw += x[i] * w[i];
      }
      const double cut = c(std::sqrt(q));
      return cut == 0.0 ? std::complex<double>(0.0, 0.0) : std::polar(cut, -r * xw);
    };
    const int start = 32 + 4 * static_cast<int>(std::ceil(r * (ax + 2.0)));
    if (n == 2) {
      return periodic_trapezoid(
          [&](double phi) {
            const double w[2] = {std::cos(phi), std::sin(phi)};
            return point(w);
          },
          2.0 * pi, tol * 1e-2, start);
    }
    auto ring = [&](double theta) {
      const double st = std::sin(theta), ct = std::cos(theta);
      return st * periodic_trapezoid(
                      [&](double phi) {
                        const double w[3] = {st * std::cos(phi), st * std::sin(phi), ct};
                        return point(w);
                      },
                      2.0 * pi, tol * 1e-2, start);
    };
    return integrate(ring, 0.0, pi, tol * 1e-2, 0.0, 4 + static_cast<int>(r * (ax + 2.0))).value;
  };

  auto f = [&](double r) {
    return std::polar(std::pow(r, n - 1), t * std::pow(r, s2)) * angular(r);
  };
  const double rate = s2 * std::abs(t) * std::pow(std::max(hi, 1e-300), s2 - 1.0) + ax;
  const auto q = integrate(f, lo, hi, tol, 0.0, panel_count(lo, hi, rate));
  double xm = 0.0;
  for (int i = 0; i < n; ++i) xm += x[i] * m[i];
  return {q.value * std::polar(1.0, -xm), q.error, q.converged};
}

double sup_over_x(const PhaseIntegralSpec& spec, double t, double* arg, int scan) {
  const double s2 = 2.0 * spec.s;
  const double top = 1.2 * s2 * std::abs(t) * std::pow(spec.cutoff.r_max(), s2 - 1.0) + 10.0;
  scan = std::max(scan, 8);
  std::vector<double> rho(scan + 1), val(scan + 1);
  for (int i = 0; i <= scan; ++i) rho[i] = top * i / scan;
  parallel_for(rho.size(), [&](std::size_t i) {
    val[i] = std::abs(dispersive_integral_radial(spec, rho[i], t).value);
  });
  const auto best = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
  double a = rho[std::max(best - 1, 0)];
  double b = rho[std::min(best + 1, scan)];
  auto g = [&](double r) { return std::abs(dispersive_integral_radial(spec, r, t).value); };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 30 && (b - a) > 1e-6 * (1.0 + top); ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + phi * (b - a);
      gd = g(d);
    }
  }
  double best_val = val[best], best_arg = rho[best];
  if (gc > best_val) best_val = gc, best_arg = c;
  if (gd > best_val) best_val = gd, best_arg = d;
  if (arg) *arg = best_arg;
  return best_val;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw InvalidArgument("log_spaced needs 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return out;
}

DecayFit fit_dispersive_decay(const PhaseIntegralSpec& spec, std::span<const double> t_values,
                              DecayProbe probe) {
  DecayFit fit;
  fit.probe = probe;
  fit.t.assign(t_values.begin(), t_values.end());
  fit.values.resize(fit.t.size());
  if (probe == DecayProbe::kOrigin) {
    parallel_for(fit.t.size(), [&](std::size_t i) {
      fit.values[i] = std::abs(dispersive_integral_radial(spec, 0.0, fit.t[i]).value);
    });
  } else {
    for (std::size_t i = 0; i < fit.t.size(); ++i) fit.values[i] = sup_over_x(spec, fit.t[i]);
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < fit.t.size(); ++i) {
    if (fit.t[i] > 0.0 && fit.values[i] > 0.0 && std::isfinite(fit.values[i])) {
      lx.push_back(std::log(fit.t[i]));
      ly.push_back(std::log(fit.values[i]));
    }
  }
  const std::size_t m = lx.size();
  if (m < 2) {
    fit.degenerate = true;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) mx += lx[i], my += ly[i];
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / m);
  const double decades = (lx.back() - lx.front()) / std::log(10.0);
  fit.degenerate = m < 8 || std::abs(decades) < 2.0 - 1e-9 || m != fit.t.size();
  fit.passed = !fit.degenerate && fit.slope <= -0.5 * spec.n + 0.15;
  return fit;
}

nlohmann::json to_json(const DecayFit& fit) {
  return {{"probe", fit.probe == DecayProbe::kOrigin ? "origin" : "supremum"},
          {"t", fit.t},
          {"values", fit.values},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"residual", fit.residual},
          {"degenerate", fit.degenerate},
          {"passed", fit.passed}};
}

L1SupProfile l1_sup_profile(int k, int l, std::span<const double> shift, double s, int n,
                            std::span<const double> x1_grid, int sample_budget, std::uint64_t seed) {
  if (x1_grid.size() < 2) throw InvalidArgument("x1 grid needs at least two points");
  PhaseIntegralSpec spec;
  spec.n = n;
  spec.s = s;
  spec.shift.assign(shift.begin(), shift.end());
  spec.cutoff = RadialCutoff::ball(l);
  spec.rel_tol = 1e-8;
  const bool radial = spec.radial();
  const double s2 = 2.0 * s;
  const double speed = s2 * std::pow(spec.cutoff.r_max(), s2 - 1.0);
  const double mshift = norm(shift);

  L1SupProfile out;
  out.x1.assign(x1_grid.begin(), x1_grid.end());
  out.sup.assign(out.x1.size(), 0.0);
  std::vector<double> mirrored(out.x1.size(), 0.0);
  std::vector<char> stalled(out.x1.size() * 2, 0);

  // value at (x1, free coordinates); free = (rho, t) when radial, (x', t) otherwise
  auto evaluate = [&](double x1, const std::vector<double>& v) {
    if (radial) return std::abs(dispersive_integral_radial(spec, v[0], v[1]).value);
    std::vector<double> x(n);
    x[0] = x1;
    for (int i = 1; i < n; ++i) x[i] = v[i - 1];
    return std::abs(dispersive_integral(spec, x, v.back()).value);
  };

  auto search = [&](double x1, std::uint64_t stream, char* stall) {
    std::mt19937_64 rng(seed * 1000003ULL + stream);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double ax = std::abs(x1);
    const double t_hi = 3.0 * (ax + 2.0) / speed + 1.0;
    const double reach = ax + 4.0 + mshift * t_hi;
    const int dims = radial ? 2 : n;
    std::vector<std::pair<double, std::vector<double>>> starts;
    for (int i = 0; i < sample_budget; ++i) {
      std::vector<double> v(dims);
      if (radial) {
        v[0] = ax + (0.5 * ax + 2.0) * u(rng);
      } else {
        for (int d = 0; d + 1 < dims; ++d) v[d] = reach * (2.0 * u(rng) - 1.0);
      }
      v[dims - 1] = t_hi * u(rng);
      starts.emplace_back(evaluate(x1, v), std::move(v));
    }
    std::sort(starts.begin(), starts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double best = starts.empty() ? 0.0 : starts.front().first;
    const int refine = std::min<int>(8, static_cast<int>(starts.size()));
    bool any_stall = false;
    for (int r = 0; r < refine; ++r) {
      auto [val, v] = starts[r];
      std::vector<double> step(dims, 0.25 * (1.0 + 0.1 * ax));
      step[dims - 1] = 0.05 * t_hi;
      int it = 0;
      for (; it < 60; ++it) {
        bool moved = false;
        for (int d = 0; d < dims; ++d)
          for (double sg : {1.0, -1.0}) {
            auto w = v;
            w[d] += sg * step[d];
            if (d == dims - 1 && w[d] < 0.0) continue;
            if (radial && d == 0 && w[d] < ax) continue;
            const double g = evaluate(x1, w);
            if (g > val) {
              val = g;
              v = std::move(w);
              moved = true;
            }
          }
        if (!moved) {
          bool tiny = true;
          for (auto& st : step) {
            st *= 0.5;
            tiny = tiny && st < 1e-4 * (1.0 + ax);
          }
          if (tiny) break;
        }
      }
      if (it == 60) any_stall = true;
      best = std::max(best, val);
    }
    *stall = any_stall ? 1 : 0;
    return best;
  };

  parallel_for(out.x1.size(), [&](std::size_t i) {
    out.sup[i] = search(out.x1[i], 2 * i, &stalled[2 * i]);
    if (!radial) mirrored[i] = search(-out.x1[i], 2 * i + 1, &stalled[2 * i + 1]);
  });
  double integral = 0.0, other = 0.0;
  for (std::size_t i = 1; i < out.x1.size(); ++i) {
    const double h = out.x1[i] - out.x1[i - 1];
    integral += 0.5 * h * (out.sup[i] + out.sup[i - 1]);
    other += 0.5 * h * (mirrored[i] + mirrored[i - 1]);
  }
  out.integral = radial ? 2.0 * integral : integral + other;
  out.bound = std::exp2((n - 1) * l) * std::exp2(k - l);
  out.ratio = out.integral / out.bound;
  out.stagnated = std::any_of(stalled.begin(), stalled.end(), [](char c) { return c != 0; });
  return out;
}

}  // namespace fsl
