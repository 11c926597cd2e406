#include "fsl/cone/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fsl/common/error.hpp"
#include "fsl/common/parallel.hpp"

namespace fsl {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Split {
  double xi1;
  double perp_sq;
  double abs_xi;
};

Split split(std::span<const double> xi, std::span<const double> e) {
  if (xi.size() != e.size()) throw InvalidArgument("xi and e have different dimensions");
  const double r2 = dot(xi, xi);
  const double x1 = dot(xi, e);
  return {x1, std::max(0.0, r2 - x1 * x1), std::sqrt(r2)};
}

void check_unit(std::span<const double> e) {
  if (std::abs(std::sqrt(dot(e, e)) - 1.0) > 1e-12) throw InvalidArgument("e must be a unit vector");
}

}  // namespace

double SymbolSample::xi_e1() const { return dot(xi, e); }
double SymbolSample::xi_perp_normsq() const { return split(xi, e).perp_sq; }
double SymbolSample::abs_xi() const { return std::sqrt(dot(xi, xi)); }
double SymbolSample::modulation() const { return tau + std::pow(abs_xi(), 2.0 * s); }

void ConeParams::validate() const {
  if (!(c1 >= 1.0)) throw InvalidArgument("C1 must be >= 1");
  if (!(c_tilde > 0.0)) throw InvalidArgument("c_tilde must be positive");
  if (!(s > 0.5 && s <= 1.0)) throw InvalidArgument("order s must lie in (1/2, 1]");
  check_unit(e);
  if (c_prime < c_tilde + std::log2(c1) + 4.0)
    throw InvalidArgument("c_prime must satisfy c_prime >= c_tilde + log2(C1) + 4");
}

nlohmann::json ConeParams::to_json() const {
  return {{"k", k}, {"C1", c1}, {"c_tilde", c_tilde}, {"c_prime", c_prime}, {"s", s}, {"e", e}};
}

double n_multiplier(double zeta_normsq, double tau, double s) {
  if (!(tau < 0.0)) throw OutsideDomainError("N is defined only for tau < 0");
  const double top = std::pow(-tau, 1.0 / s);
  if (!(top > zeta_normsq)) throw OutsideDomainError("N is defined only for (-tau)^{1/s} > |zeta'|^2");
  return std::sqrt(top - zeta_normsq);
}

double k_weight(double zeta_normsq, double tau, double s) {
  const double n = n_multiplier(zeta_normsq, tau, s);
  return 2.0 * s * std::pow(n * n + zeta_normsq, s - 1.0) * n;
}

double s1_factorization_residual(std::span<const double> xi, double tau, std::span<const double> e) {
  check_unit(e);
  const auto p = split(xi, e);
  const double n = n_multiplier(p.perp_sq, tau, 1.0);
  return std::abs(-(p.abs_xi * p.abs_xi + tau) - (n + p.xi1) * (n - p.xi1));
}

bool is_admissible(const SymbolSample& p, const ConeParams& params) {
  const double scale = std::exp2(params.k);
  const double r = p.abs_xi();
  if (r < scale / params.c1 || r > params.c1 * scale) return false;
  if (p.xi_e1() < std::exp2(params.k - params.c_tilde)) return false;
  return std::abs(p.modulation()) <= std::exp2(2.0 * params.s * params.k - params.c_prime);
}

AdmissibleSampler::AdmissibleSampler(const ConeParams& params, std::uint64_t seed)
    : params_(params), rng_(seed) {
  params_.validate();
  // tau is stored next to |xi|^{2s} ~ 2^{2sk}; a band narrower than a few
  // ulps of that cannot be sampled.
  if (std::exp2(-params_.c_prime) < 1e-13)
    throw EmptyDomainError("modulation band 2^{2sk - c'} is below floating-point resolution");
  const auto& e = params_.e;
  const std::size_t n = e.size();
  perp_.assign(n, 0.0);
  if (n > 1) {
    std::size_t axis = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(e[i]) < std::abs(e[axis])) axis = i;
    perp_[axis] = 1.0;
    const double d = e[axis];
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      perp_[i] -= d * e[i];
      norm += perp_[i] * perp_[i];
    }
    for (auto& c : perp_) c /= std::sqrt(norm);
  }
}

SymbolSample AdmissibleSampler::draw() {
  const auto& p = params_;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double x_lo = std::exp2(-p.c_tilde);
  const double x_hi = p.c1;
  const double r_hi = perp_.empty() || p.e.size() < 2 ? 0.0 : p.c1;
  const double band = std::exp2(-p.c_prime);
  const double scale = std::exp2(p.k);
  const double tscale = std::exp2(2.0 * p.s * p.k);
  if (x_lo > x_hi) throw EmptyDomainError("admissible set is empty (2^{-c~} > C1)");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double x1 = x_lo + (x_hi - x_lo) * unit(rng_);
    const double rho = r_hi * unit(rng_);
    const double b = band * (2.0 * unit(rng_) - 1.0);
    const double r = std::hypot(x1, rho);
    if (r < 1.0 / p.c1 || r > p.c1) continue;
    SymbolSample out;
    out.s = p.s;
    out.e = p.e;
    out.xi.resize(p.e.size());
    for (std::size_t i = 0; i < out.xi.size(); ++i)
      out.xi[i] = scale * (x1 * p.e[i] + rho * perp_[i]);
    out.tau = tscale * b - std::pow(out.abs_xi(), 2.0 * p.s);
    if (is_admissible(out, p)) return out;
  }
  throw EmptyDomainError("admissible sampler found no point (parameters inconsistent)");
}

RatioReport verify_n_properties(const ConeParams& params, std::size_t num_samples,
                                std::uint64_t seed) {
  params.validate();
  AdmissibleSampler sampler(params, seed);
  std::vector<SymbolSample> pts;
  pts.reserve(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) pts.push_back(sampler.draw());

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 3>> ratios(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto& q = pts[i];
    const double s = q.s;
    const auto sp = split(q.xi, q.e);
    const double a = q.modulation();
    auto& r = ratios[i];
    r[0] = (q.tau + std::pow(sp.perp_sq, s)) / (-std::exp2(2.0 * s * params.k));
    try {
      const double n = n_multiplier(sp.perp_sq, q.tau, s);
      r[1] = n / std::exp2(params.k);
      const double rhs = std::exp2(-params.k * (2.0 * s - 1.0)) * std::abs(a);
      r[2] = rhs > 0.0 ? std::abs(sp.xi1 - n) / rhs : std::numeric_limits<double>::quiet_NaN();
    } catch (const OutsideDomainError&) {
      r[1] = inf;
      r[2] = inf;
    }
  });

  RatioReport rep;
  rep.kind = "n_properties";
  rep.parameters = params.to_json();
  rep.parameters["seed"] = seed;
  rep.draws = pts.size();
  rep.item("tau_plus_perp_over_minus_2^{2sk}");
  rep.item("N_over_2^k");
  rep.item("xi1_minus_N_over_2^{-k(2s-1)}|a|");
  RatioReport half = rep;
  const std::size_t mid = pts.size() / 2;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::isnan(ratios[i][2])) {
      ++rep.skipped;
      continue;
    }
    for (int c = 0; c < 3; ++c) {
      rep.items[c].add(ratios[i][c]);
      if (i < mid) half.items[c].add(ratios[i][c]);
    }
  }
  for (const auto& it : rep.items) rep.c_star = std::max(rep.c_star, it.bracket());
  for (const auto& it : half.items) rep.c_star_half = std::max(rep.c_star_half, it.bracket());
  rep.stable = std::isfinite(rep.c_star) && relative_change(rep.c_star, rep.c_star_half) < 0.25;
  rep.passed = std::isfinite(rep.c_star) && rep.c_star > 0.0;
  rep.notes.push_back("ratios measured on sampled admissible points; C* is the tightest two-sided bracket");
  return rep;
}

FactorizationTerms factorization_decomposition(std::span<const double> xi, double tau,
                                               const ConeParams& params, const BumpPair& bumps) {
  check_unit(params.e);
  const double s = params.s;
  const int k = params.k;
  const auto p = split(xi, params.e);
  const double a = tau + std::pow(p.abs_xi, 2.0 * s);
  const double lo = k - params.c_tilde;
  const double hi = k + params.c_tilde;
  const bool perp_ok = std::sqrt(p.perp_sq) <= params.c1 * std::exp2(k);
  auto eta_plus = [&](double r) { return r >= 0.0 ? bumps.eta_band(r, lo, hi) : 0.0; };

  FactorizationTerms out{};
  if (perp_ok) {
    const double cut = eta_plus(p.xi1) * bumps.eta(a / std::exp2(2.0 * s * k - params.c_prime));
    if (cut != 0.0) out.lhs = cut / std::complex<double>(a, 1.0);
  }
  const double gate = tau + std::pow(p.perp_sq, s);
  if (perp_ok && gate <= -std::exp2(2.0 * s * (k - params.c_prime))) {
    const double n = n_multiplier(p.perp_sq, tau, s);
    const double kw = k_weight(p.perp_sq, tau, s);
    const double cut = eta_plus(n) * bumps.eta((p.xi1 - n) / std::exp2(k - params.c_prime));
    if (cut != 0.0)
      out.main_term =
          cut / (kw * std::complex<double>(p.xi1 - n, std::exp2(-k * (2.0 * s - 1.0))));
  }
  out.error_term = out.lhs - out.main_term;
  return out;
}

RatioReport factorization_envelope(const ConeParams& params, const BumpPair& bumps,
                                   std::size_t num_samples, std::uint64_t seed) {
  params.validate();
  const double s = params.s;
  const int k = params.k;
  const std::size_t n = params.e.size();
  std::vector<double> perp(n, 0.0);
  if (n > 1) {
    // any unit vector orthogonal to e; only |xi'| enters
    std::size_t axis = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(params.e[i]) < std::abs(params.e[axis])) axis = i;
    perp[axis] = 1.0;
    double norm = 0.0;
    const double d = params.e[axis];
    for (std::size_t i = 0; i < n; ++i) {
      perp[i] -= d * params.e[i];
      norm += perp[i] * perp[i];
    }
    for (auto& c : perp) c /= std::sqrt(norm);
  }

  struct Point {
    std::vector<double> xi;
    double tau;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = std::exp2(k);
  const double x_lo = -0.5;
  const double x_hi = 1.9 * std::exp2(params.c_tilde + 1.0);
  const double r_hi = n > 1 ? 1.1 * params.c1 : 0.0;
  const double log_lo = -6.0;
  const double log_hi = 2.0 * s * k - params.c_prime + 1.0;
  std::vector<Point> pts(num_samples);
  for (auto& q : pts) {
    const double x1 = x_lo + (x_hi - x_lo) * unit(rng);
    const double rho = r_hi * unit(rng);
    const double mag = std::exp2(log_lo + (log_hi - log_lo) * unit(rng));
    const double a = unit(rng) < 0.5 ? -mag : mag;
    q.xi.resize(n);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      q.xi[i] = scale * (x1 * params.e[i] + rho * perp[i]);
      r2 += q.xi[i] * q.xi[i];
    }
    q.tau = a - std::pow(r2, s);
  }

  const double floor_term = std::exp2(-2.0 * s * k);
  std::vector<double> ratio(pts.size());
  std::vector<char> active(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto t = factorization_decomposition(pts[i].xi, pts[i].tau, params, bumps);
    double r2 = 0.0;
    for (double c : pts[i].xi) r2 += c * c;
    const double a = pts[i].tau + std::pow(r2, s);
    const double env = floor_term + std::pow(1.0 + std::abs(a), -2.0);
    ratio[i] = std::abs(t.error_term) / env;
    active[i] = (t.lhs != 0.0 || t.main_term != 0.0) ? 1 : 0;
  });

  RatioReport rep;
  rep.kind = "factorization";
  rep.parameters = params.to_json();
  rep.parameters["seed"] = seed;
  rep.draws = pts.size();
  auto& all = rep.item("E_over_envelope");
  RatioItem first_half{"half"};
  std::size_t in_support = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    all.add(ratio[i]);
    if (i < pts.size() / 2) first_half.add(ratio[i]);
    in_support += active[i];
  }
  rep.c_star = all.max;
  rep.c_star_half = first_half.max;
  rep.stable = relative_change(rep.c_star, rep.c_star_half) < 0.25;
  rep.passed = std::isfinite(rep.c_star);
  rep.parameters["points_in_support"] = in_support;
  return rep;
}

}  // namespace fsl
