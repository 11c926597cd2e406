#include "fsl/osc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "fsl/common/error.hpp"
#include "fsl/common/io.hpp"
#include "fsl/common/parallel.hpp"
#include "fsl/osc/dispersive.hpp"

namespace fsl {

namespace {

struct Interval {
  double lo, hi;
};

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// xi_1 >= 0 with lo <= xi_1^2 + p <= hi
Interval from_square(double lo, double hi, double p) {
  const double a = lo - p;
  const double b = hi - p;
  if (b < 0.0) return {1.0, 0.0};
  return {std::sqrt(std::max(a, 0.0)), std::sqrt(b)};
}

}  // namespace

double sigma_measure(double k, double j, double xi_perp_normsq, double tau, double s,
                     MeasureMethod method, long grid_points) {
  if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("order s must lie in (0, 1]");
  if (xi_perp_normsq < 0.0) throw InvalidArgument("|xi'|^2 must be nonnegative");
  const double a = std::exp2(k);
  const double b = 2.0 * a;
  const double delta = std::exp2(j);
  const double p = xi_perp_normsq;
  if (method == MeasureMethod::kGrid) {
    if (grid_points < 1) throw InvalidArgument("grid needs at least one cell");
    const double h = (b - a) / static_cast<double>(grid_points);
    long hits = 0;
    for (long i = 0; i < grid_points; ++i) {
      const double x = a + (static_cast<double>(i) + 0.5) * h;
      const double r2 = x * x + p;
      if (r2 < a * a || r2 > b * b) continue;
      if (std::abs(tau + std::pow(r2, s)) <= delta) ++hits;
    }
    return hits * h;
  }
  Interval iv{a, b};
  iv = intersect(iv, from_square(a * a, b * b, p));
  // |xi|^{2s} in [-tau - delta, -tau + delta]
  const double top = -tau + delta;
  if (top <= 0.0) return 0.0;
  const double bottom = std::max(0.0, -tau - delta);
  iv = intersect(iv, from_square(std::pow(bottom, 1.0 / s), std::pow(top, 1.0 / s), p));
  return std::max(0.0, iv.hi - iv.lo);
}

double sigma_bound(double k, double j, double s) {
  return std::min(std::exp2(k), std::exp2(-k * (2.0 * s - 1.0) + j));
}

RatioReport sigma_sweep(const std::vector<double>& orders, int k_lo, int k_hi, int samples) {
  struct Cell {
    double s;
    int k, j;
    double worst = 0.0;
  };
  std::vector<Cell> cells;
  for (double s : orders)
    for (int k = k_lo; k <= k_hi; ++k)
      for (int j = 0; j <= static_cast<int>(std::floor(2.0 * s * k + 2.0)); ++j) cells.push_back({s, k, j});

  parallel_for(cells.size(), [&](std::size_t c) {
    auto& cell = cells[c];
    const double a = std::exp2(cell.k);
    const double bound = sigma_bound(cell.k, cell.j, cell.s);
    double worst = 0.0;
    // |xi'| from 0 to 2^{k+1}; tau placing the band centre across the shell
    for (int p = 0; p < samples; ++p) {
      const double perp = 2.0 * a * p / samples;
      for (int q = 0; q <= samples; ++q) {
        const double r = a * (1.0 + static_cast<double>(q) / samples);
        const double tau = -std::pow(r, 2.0 * cell.s);
        worst = std::max(worst, sigma_measure(cell.k, cell.j, perp * perp, tau, cell.s) / bound);
      }
    }
    cell.worst = worst;
  });

  RatioReport rep;
  rep.kind = "measure";
  rep.parameters = {{"orders", orders}, {"k_lo", k_lo}, {"k_hi", k_hi}, {"samples", samples}};
  rep.draws = cells.size();
  for (const auto& cell : cells) {
    rep.item(fmt::format("s={}", cell.s)).add(cell.worst);
  }
  for (const auto& it : rep.items) rep.c_star = std::max(rep.c_star, it.max);
  rep.c_star_half = rep.c_star;
  rep.stable = true;
  rep.passed = std::isfinite(rep.c_star);
  rep.notes.push_back("sup over a (|xi'|, tau) grid per (s, k, j); ratio to min(2^k, 2^{-k(2s-1)} 2^j)");
  return rep;
}

RatioReport twointegrals_check(int n, double s, int samples, std::uint64_t seed, double c_s) {
  PhaseIntegralSpec spec;
  spec.n = n;
  spec.s = s;
  spec.cutoff = RadialCutoff::ball(0.0, Plateau{0.5, 1.0});
  spec.rel_tol = 1e-9;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Draw {
    double t, x1, perp;
  };
  std::vector<Draw> draws(samples);
  for (auto& d : draws) {
    d.t = std::exp(std::log(0.1) + (std::log(100.0) - std::log(0.1)) * u(rng));
    d.x1 = std::max(c_s * d.t, 1.0) * (1.0 + 9.0 * u(rng));
    d.perp = d.x1 * u(rng);
  }
  std::vector<double> ratio(draws.size());
  parallel_for(draws.size(), [&](std::size_t i) {
    const auto& d = draws[i];
    const double value = std::abs(dispersive_integral_radial(spec, std::hypot(d.x1, d.perp), d.t).value);
    const double env = std::min(1.0, (1.0 + d.t) / (d.x1 * d.x1));
    ratio[i] = value / env;
  });
  RatioReport rep;
  rep.kind = "twointegrals";
  rep.parameters = {{"n", n}, {"s", s}, {"seed", seed}, {"C_s", c_s}};
  rep.draws = draws.size();
  auto& item = rep.item("I_over_envelope");
  RatioItem half{"half"};
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    item.add(ratio[i]);
    if (i < ratio.size() / 2) half.add(ratio[i]);
  }
  rep.c_star = item.max;
  rep.c_star_half = half.max;
  rep.stable = relative_change(rep.c_star, rep.c_star_half) < 0.25;
  rep.passed = std::isfinite(rep.c_star);
  return rep;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt::format("{:.17g}", row[i]);
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace fsl
