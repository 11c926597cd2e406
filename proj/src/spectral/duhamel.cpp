#include "fsl/spectral/duhamel.hpp"

#include <cmath>
#include <vector>

#include "fsl/common/error.hpp"
#include "fsl/common/parallel.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fsl {

std::string time_rule_name(TimeRule rule) {
  return rule == TimeRule::kSimpson ? "simpson" : "trapezoid";
}

TimeRule time_rule_from_name(const std::string& name) {
  if (name == "trapezoid") return TimeRule::kTrapezoid;
  if (name == "simpson") return TimeRule::kSimpson;
  throw InvalidArgument("unknown quadrature rule '" + name + "'");
}

std::size_t origin_frame(const Trajectory& u) {
  const double pos = -u.t0 / u.dt;
  const double idx = std::round(pos);
  if (std::abs(pos - idx) > 1e-9 || idx < 0.0 || idx >= static_cast<double>(u.frames))
    throw InvalidArgument("time lattice has no frame at t = 0");
  return static_cast<std::size_t>(idx);
}

Trajectory free_evolution(const Field& u0, double t0, double dt, std::size_t frames, double s) {
  Trajectory out(u0.grid, t0, dt, frames);
  const Spectrum U0 = dft_forward(u0);
  parallel_for(frames, [&](std::size_t f) {
    const double t = out.time(f);
    out.set_frame(f, t == 0.0 ? u0 : dft_inverse(linear_propagate(U0, t, s)));
  });
  return out;
}

namespace {

// Cumulative integral of g[0..M] with signed step h, in place into c.
void accumulate(const std::vector<std::vector<Complex>*>& g, double h, TimeRule rule,
                std::vector<std::vector<Complex>>& c) {
  const std::size_t M = g.size() - 1;
  const std::size_t n = g[0]->size();
  c.assign(M + 1, std::vector<Complex>(n));
  for (std::size_t i = 1; i <= M; ++i) {
    auto& out = c[i];
    const auto& a = *g[i - 1];
    const auto& b = *g[i];
    if (rule == TimeRule::kTrapezoid || M == 1) {
      for (std::size_t x = 0; x < n; ++x) out[x] = c[i - 1][x] + 0.5 * h * (a[x] + b[x]);
    } else if (i % 2 == 0) {
      const auto& z = *g[i - 2];
      for (std::size_t x = 0; x < n; ++x)
        out[x] = c[i - 2][x] + h / 3.0 * (z[x] + 4.0 * a[x] + b[x]);
    } else if (i == 1) {
      const auto& next = *g[2];
      for (std::size_t x = 0; x < n; ++x)
        out[x] = h / 12.0 * (5.0 * a[x] + 8.0 * b[x] - next[x]);
    } else {
      const auto& z = *g[i - 2];
      for (std::size_t x = 0; x < n; ++x)
        out[x] = c[i - 1][x] + h / 12.0 * (-z[x] + 8.0 * a[x] + 5.0 * b[x]);
    }
  }
}

}  // namespace

Trajectory duhamel_term(const Trajectory& F, double s, const std::function<double(double)>& cutoff,
                        TimeRule rule) {
  const std::size_t i0 = origin_frame(F);
  const Grid& g = F.grid;
  std::vector<std::vector<Complex>> pulled(F.frames);
  parallel_for(F.frames, [&](std::size_t f) {
    pulled[f] = linear_propagate(dft_forward(F.field(f)), -F.time(f), s).values;
  });

  std::vector<std::vector<Complex>> cum(F.frames);
  std::vector<std::vector<Complex>> part;
  std::vector<std::vector<Complex>*> seq;
  for (std::size_t f = i0; f < F.frames; ++f) seq.push_back(&pulled[f]);
  accumulate(seq, F.dt, rule, part);
  for (std::size_t i = 0; i < part.size(); ++i) cum[i0 + i] = std::move(part[i]);
  seq.clear();
  for (std::size_t f = i0 + 1; f-- > 0;) seq.push_back(&pulled[f]);
  accumulate(seq, -F.dt, rule, part);
  for (std::size_t i = 1; i < part.size(); ++i) cum[i0 - i] = std::move(part[i]);

  Trajectory out(g, F.t0, F.dt, F.frames);
  parallel_for(F.frames, [&](std::size_t f) {
    const double t = F.time(f);
    const double w = cutoff(t);
    if (f == i0 || w == 0.0) return;
    Spectrum S(g, std::move(cum[f]));
    S = linear_propagate(S, t, s);
    for (auto& z : S.values) z *= Complex(0.0, -w);
    out.set_frame(f, dft_inverse(S));
  });
  return out;
}

}  // namespace fsl
