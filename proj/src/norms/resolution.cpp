#include <cmath>
#include <numbers>
#include <utility>

#include "fsl/common/error.hpp"
#include "fsl/lp/projection.hpp"
#include "fsl/norms/norms.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fsl {

NormContext make_norm_context(int n, double s, double margin) {
  NormContext ctx;
  ctx.bumps = build_bumps();
  ctx.atlas = build_cone_atlas(n, margin);
  ctx.s = s;
  return ctx;
}

nlohmann::json to_json(const NormReport& r) {
  nlohmann::json doc;
  doc["kind"] = r.kind;
  doc["parameters"] = r.parameters;
  if (r.bounded())
    doc["value"] = r.value;
  else
    doc["value"] = nullptr;
  doc["support_violation"] = !r.bounded();
  doc["branch"] = r.branch;
  doc["details"] = r.details;
  if (!r.diagnostic.empty()) doc["diagnostic"] = r.diagnostic;
  return doc;
}

double DyadicSum::z(int k) const {
  for (const auto& sh : shells)
    if (sh.k == k) return sh.z;
  return 0.0;
}

ResolutionSpace::ResolutionSpace(NormContext ctx, const Grid& grid, std::size_t frames, double dt)
    : ctx_(std::move(ctx)), grid_(grid), frames_(frames), dt_(dt) {
  if (!(ctx_.s > 0.5 && ctx_.s <= 1.0)) throw InvalidArgument("order s must lie in (1/2, 1]");
  if (ctx_.atlas.size() > 0 && ctx_.atlas.dim() != grid.dim())
    throw InvalidArgument("cone atlas dimension does not match the grid");
  j_max_ = ctx_.j_max < 0 ? default_j_max(dt) : ctx_.j_max;
  parseval_ = 1.0 / (std::pow(grid.length(), grid.dim()) * dt * static_cast<double>(frames));
  abs_xi_ = grid.wavenumbers();
  k_range_ = dyadic_range(grid);

  const std::size_t block = grid.size();
  const double dtau = 2.0 * std::numbers::pi / (static_cast<double>(frames) * dt);
  a_.resize(block * frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const long idx = f < frames / 2 ? static_cast<long>(f) : static_cast<long>(f) - static_cast<long>(frames);
    const double tau = dtau * static_cast<double>(idx);
    for (std::size_t i = 0; i < block; ++i) a_[f * block + i] = fsl::modulation(tau, abs_xi_[i], ctx_.s, dt);
  }
  q_.resize(a_.size());
  const double top = std::exp2(-j_max_);
  std::vector<double> w(j_max_ + 2);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    for (int j = 0; j <= j_max_; ++j) w[j] = modulation_symbol(ctx_.bumps, j, a_[i]);
    w[j_max_ + 1] = 1.0 - ctx_.bumps.eta(a_[i] * top);
    int first = 0;
    while (first < j_max_ + 1 && w[first] == 0.0) ++first;
    Bins& b = q_[i];
    b.first = first;
    for (int c = 0; c < 3 && first + c <= j_max_ + 1; ++c) b.w[c] = w[first + c];
    for (int j = first + 3; j <= j_max_ + 1; ++j)
      if (w[j] != 0.0) throw Error("modulation partition overlaps more than three bins");
  }
  std::vector<double> xi(grid.dim());
  cone_.assign(ctx_.atlas.size(), std::vector<double>(block));
  for (std::size_t i = 0; i < block; ++i) {
    grid.wavevector(i, xi);
    for (std::size_t e = 0; e < ctx_.atlas.size(); ++e) cone_[e][i] = ctx_.atlas.weight(e, xi);
  }
}

ResolutionSpace ResolutionSpace::for_trajectory(const NormContext& ctx, const Trajectory& u) {
  return ResolutionSpace(ctx, u.grid, u.frames, u.dt);
}

void ResolutionSpace::check(const SpacetimeSpectrum& V) const {
  if (!(V.grid == grid_) || V.frames != frames_ || V.dt != dt_)
    throw InvalidArgument("spectrum does not match the resolution space lattice");
}

SpacetimeSpectrum ResolutionSpace::transform(const Trajectory& u) const {
  if (!(u.grid == grid_) || u.frames != frames_ || u.dt != dt_)
    throw InvalidArgument("trajectory does not match the resolution space lattice");
  return spacetime_dft(u, ctx_.window);
}

Trajectory ResolutionSpace::inverse(const SpacetimeSpectrum& V) const { return spacetime_idft(V); }

std::vector<double> ResolutionSpace::shell_symbol(int k) const {
  std::vector<double> m(abs_xi_.size());
  const double scale = std::exp2(-k);
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = abs_xi_[i] == 0.0 ? 0.0 : ctx_.bumps.phi(abs_xi_[i] * scale);
  return m;
}

namespace {

SpacetimeSpectrum spatial_multiply(const SpacetimeSpectrum& V, const std::vector<double>& m) {
  SpacetimeSpectrum out = V;
  const std::size_t block = m.size();
  for (std::size_t f = 0; f < V.frames; ++f)
    for (std::size_t i = 0; i < block; ++i) out.values[f * block + i] *= m[i];
  return out;
}

}  // namespace

SpacetimeSpectrum ResolutionSpace::shell(const SpacetimeSpectrum& V, int k) const {
  check(V);
  return spatial_multiply(V, shell_symbol(k));
}

SpacetimeSpectrum ResolutionSpace::shell_leq(const SpacetimeSpectrum& V, int k) const {
  check(V);
  std::vector<double> m(abs_xi_.size());
  const double scale = std::exp2(-k);
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = abs_xi_[i] == 0.0 ? 0.0 : ctx_.bumps.eta(abs_xi_[i] * scale);
  return spatial_multiply(V, m);
}

SpacetimeSpectrum ResolutionSpace::cone(const SpacetimeSpectrum& V, std::size_t e) const {
  check(V);
  if (e >= cone_.size()) throw InvalidArgument("cone direction index out of range");
  return spatial_multiply(V, cone_[e]);
}

double ResolutionSpace::q_weight(std::size_t index, int slot) const {
  const Bins& b = q_[index];
  const int c = slot - b.first;
  return c >= 0 && c < 3 ? b.w[c] : 0.0;
}

SpacetimeSpectrum ResolutionSpace::modulation_piece(const SpacetimeSpectrum& V, int j) const {
  check(V);
  if (j < 0 || j > j_max_) throw InvalidArgument("modulation index outside [0, j_max]");
  SpacetimeSpectrum out = V;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= q_weight(i, j);
  return out;
}

SpacetimeSpectrum ResolutionSpace::fractional(const SpacetimeSpectrum& V, double beta) const {
  check(V);
  std::vector<double> m(abs_xi_.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = abs_xi_[i] == 0.0 ? (beta == 0.0 ? 1.0 : 0.0) : std::pow(abs_xi_[i], beta);
  return spatial_multiply(V, m);
}

SpacetimeSpectrum ResolutionSpace::spatial(const SpacetimeSpectrum& V,
                                           const std::vector<Complex>& m) const {
  check(V);
  if (m.size() != grid_.size()) throw InvalidArgument("multiplier length does not match grid");
  SpacetimeSpectrum out = V;
  const std::size_t block = m.size();
  for (std::size_t f = 0; f < V.frames; ++f)
    for (std::size_t i = 0; i < block; ++i) out.values[f * block + i] *= m[i];
  return out;
}

SpacetimeSpectrum ResolutionSpace::schrodinger(const SpacetimeSpectrum& V) const {
  check(V);
  SpacetimeSpectrum out = V;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= Complex(a_[i], 1.0);
  return out;
}

SpacetimeSpectrum ResolutionSpace::schrodinger_inverse(const SpacetimeSpectrum& V) const {
  check(V);
  SpacetimeSpectrum out = V;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] /= Complex(a_[i], 1.0);
  return out;
}

double ResolutionSpace::l2(const SpacetimeSpectrum& V) const {
  double sum = 0.0;
  for (const auto& z : V.values) sum += std::norm(z);
  return std::sqrt(sum * parseval_);
}

double ResolutionSpace::outside_shell(const SpacetimeSpectrum& V, int k) const {
  check(V);
  const auto m = shell_symbol(k);
  const std::size_t block = m.size();
  double total = 0.0, out = 0.0;
  for (std::size_t f = 0; f < frames_; ++f)
    for (std::size_t i = 0; i < block; ++i) {
      const double w = std::norm(V.values[f * block + i]);
      total += w;
      if (m[i] == 0.0) out += w;
    }
  return total > 0.0 ? std::sqrt(out / total) : 0.0;
}

double ResolutionSpace::outside_cone(const SpacetimeSpectrum& V, int k,
                                     const std::vector<double>& e) const {
  check(V);
  if (static_cast<int>(e.size()) != grid_.dim()) throw InvalidArgument("direction has wrong dimension");
  const auto m = shell_symbol(k);
  const std::size_t block = m.size();
  std::vector<char> inside(block);
  std::vector<double> xi(grid_.dim());
  for (std::size_t i = 0; i < block; ++i) {
    grid_.wavevector(i, xi);
    double dot = 0.0;
    for (int d = 0; d < grid_.dim(); ++d) dot += xi[d] * e[d];
    inside[i] = m[i] != 0.0 && dot > 0.0 && dot >= ctx_.atlas.margin() * abs_xi_[i];
  }
  double total = 0.0, out = 0.0;
  for (std::size_t f = 0; f < frames_; ++f)
    for (std::size_t i = 0; i < block; ++i) {
      const double w = std::norm(V.values[f * block + i]);
      total += w;
      if (!inside[i]) out += w;
    }
  return total > 0.0 ? std::sqrt(out / total) : 0.0;
}

double ResolutionSpace::x_value(const SpacetimeSpectrum& V, const std::vector<double>* m) const {
  std::vector<double> sums(j_max_ + 2, 0.0);
  const std::size_t block = grid_.size();
  for (std::size_t f = 0; f < frames_; ++f)
    for (std::size_t i = 0; i < block; ++i) {
      const std::size_t idx = f * block + i;
      double e = std::norm(V.values[idx]);
      if (e == 0.0) continue;
      if (m) e *= (*m)[i] * (*m)[i];
      const Bins& b = q_[idx];
      for (int c = 0; c < 3 && b.first + c <= j_max_ + 1; ++c) sums[b.first + c] += b.w[c] * b.w[c] * e;
    }
  double value = 0.0;
  for (int j = 0; j <= j_max_ + 1; ++j)
    value += std::exp2(0.5 * std::min(j, j_max_)) * std::sqrt(sums[j] * parseval_);
  return value;
}

double ResolutionSpace::y_value(const SpacetimeSpectrum& V, const std::vector<double>* m, int k,
                                const std::vector<double>& e) const {
  SpacetimeSpectrum G = V;
  const std::size_t block = grid_.size();
  for (std::size_t f = 0; f < frames_; ++f)
    for (std::size_t i = 0; i < block; ++i) {
      const std::size_t idx = f * block + i;
      G.values[idx] *= Complex(a_[idx], 1.0) * (m ? (*m)[i] : 1.0);
    }
  return std::exp2(-0.5 * k * (2.0 * ctx_.s - 1.0)) * mixed_norm(spacetime_idft(G), {e, 1.0, 2.0});
}

double ResolutionSpace::x_norm(const SpacetimeSpectrum& V, int k, std::string* diagnostic) const {
  const double leak = outside_shell(V, k);
  if (leak > ctx_.support_tol) {
    if (diagnostic)
      *diagnostic = "mass outside the dyadic shell k=" + std::to_string(k) + ": " + std::to_string(leak);
    return kUnbounded;
  }
  return x_value(V, nullptr);
}

double ResolutionSpace::y_norm(const SpacetimeSpectrum& V, int k, const std::vector<double>& e,
                               std::string* diagnostic) const {
  lattice_axis(e, grid_.dim());
  const double leak = outside_cone(V, k, e);
  if (leak > ctx_.support_tol) {
    if (diagnostic)
      *diagnostic = "mass outside the shell/cone for k=" + std::to_string(k) + ": " + std::to_string(leak);
    return kUnbounded;
  }
  return y_value(V, nullptr, k, e);
}

NormReport ResolutionSpace::z_upper(const SpacetimeSpectrum& V, int k) const {
  NormReport rep;
  rep.kind = "zk";
  rep.parameters = {{"k", k}, {"s", ctx_.s}, {"margin", ctx_.atlas.margin()}};
  const double all_x = x_norm(V, k, &rep.diagnostic);
  if (!(all_x < kUnbounded)) {
    rep.value = kUnbounded;
    rep.branch = "support_violation";
    return rep;
  }
  rep.branch = "all_x";
  if (all_x == 0.0) return rep;

  // Pieces theta_e V inherit the shell support, and theta_e vanishes off the
  // cone of e, so both gates hold by construction.
  std::vector<double> mass(grid_.size(), 0.0);
  const std::size_t block = grid_.size();
  for (std::size_t f = 0; f < frames_; ++f)
    for (std::size_t i = 0; i < block; ++i) mass[i] += std::norm(V.values[f * block + i]);
  double split = 0.0;
  nlohmann::json pieces = nlohmann::json::array();
  for (std::size_t e = 0; e < ctx_.atlas.size(); ++e) {
    const auto& m = cone_[e];
    bool any = false;
    for (std::size_t i = 0; i < block && !any; ++i) any = m[i] != 0.0 && mass[i] > 0.0;
    if (!any) continue;
    const double x = x_value(V, &m);
    double y = kUnbounded;
    if (ctx_.atlas.axis_of(e) >= 0) y = y_value(V, &m, k, ctx_.atlas.direction(e));
    split += std::min(x, y);
    nlohmann::json p{{"direction", e}, {"x", x}};
    p["y"] = y < kUnbounded ? nlohmann::json(y) : nlohmann::json(nullptr);
    pieces.push_back(p);
  }
  rep.details["all_x"] = all_x;
  rep.details["cone_split"] = split;
  rep.details["pieces"] = pieces;
  rep.value = all_x;
  if (split < all_x) {
    rep.value = split;
    rep.branch = "cone_split";
  }
  return rep;
}

DyadicSum ResolutionSpace::f_sigma(const SpacetimeSpectrum& V, double sigma) const {
  check(V);
  const std::size_t block = grid_.size();
  std::vector<double> mass(block, 0.0);
  for (std::size_t f = 0; f < frames_; ++f)
    for (std::size_t i = 0; i < block; ++i) mass[i] += std::norm(V.values[f * block + i]);
  DyadicSum out;
  double sum = 0.0;
  for (int k = k_range_.first; k <= k_range_.second; ++k) {
    const auto m = shell_symbol(k);
    bool any = false;
    for (std::size_t i = 0; i < block && !any; ++i) any = m[i] != 0.0 && mass[i] > 0.0;
    if (!any) continue;
    const NormReport z = z_upper(spatial_multiply(V, m), k);
    out.shells.push_back({k, z.value, z.branch});
    sum += std::exp2(2.0 * k * sigma) * z.value * z.value;
  }
  out.value = std::sqrt(sum);
  return out;
}

DyadicSum ResolutionSpace::n_sigma(const SpacetimeSpectrum& V, double sigma) const {
  return f_sigma(schrodinger_inverse(V), sigma);
}

double xk_norm(const Trajectory& u, int k, const NormContext& ctx, std::string* diagnostic) {
  const auto space = ResolutionSpace::for_trajectory(ctx, u);
  return space.x_norm(space.transform(u), k, diagnostic);
}

double yk_norm(const Trajectory& u, int k, const std::vector<double>& e, const NormContext& ctx,
               std::string* diagnostic) {
  const auto space = ResolutionSpace::for_trajectory(ctx, u);
  return space.y_norm(space.transform(u), k, e, diagnostic);
}

NormReport zk_upper(const Trajectory& u, int k, const NormContext& ctx) {
  const auto space = ResolutionSpace::for_trajectory(ctx, u);
  return space.z_upper(space.transform(u), k);
}

double f_sigma_norm(const Trajectory& u, double sigma, const NormContext& ctx) {
  const auto space = ResolutionSpace::for_trajectory(ctx, u);
  return space.f_sigma(space.transform(u), sigma).value;
}

double n_sigma_norm(const Trajectory& F, double sigma, const NormContext& ctx) {
  const auto space = ResolutionSpace::for_trajectory(ctx, F);
  return space.n_sigma(space.transform(F), sigma).value;
}

}  // namespace fsl
