#include "fsl/norms/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>

#include "fsl/common/error.hpp"
#include "fsl/common/parallel.hpp"
#include "fsl/lp/projection.hpp"
#include "fsl/norms/families.hpp"
#include "fsl/spectral/duhamel.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fsl {

namespace {

const std::pair<EstimateKind, const char*> kNames[] = {
    {EstimateKind::kEmbedding, "embedding"},
    {EstimateKind::kLinftyL2, "linfty_l2"},
    {EstimateKind::kSmoothing, "smoothing"},
    {EstimateKind::kMaximal, "maximal"},
    {EstimateKind::kDsCommute, "ds_commute"},
    {EstimateKind::kMultiplierBound, "multiplier_bound"},
    {EstimateKind::kHomogeneous, "homogeneous"},
    {EstimateKind::kInhomogeneous, "inhomogeneous"},
    {EstimateKind::kTrilinear, "trilinear"},
};

using Ratios = std::vector<std::pair<std::string, double>>;

struct Draw {
  Ratios ratios;
  bool skipped = false;
};

Trajectory conjugated(const Trajectory& u) {
  Trajectory out = u;
  for (auto& z : out.values) z = std::conj(z);
  return out;
}

std::vector<std::size_t> axis_directions(const ConeAtlas& atlas) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < atlas.size(); ++e)
    if (atlas.axis_of(e) >= 0) out.push_back(e);
  if (out.empty()) throw InvalidArgument("cone atlas has no lattice-axis directions");
  return out;
}

std::vector<double> unit_axis(int n, int d) {
  std::vector<double> e(n, 0.0);
  e[d] = 1.0;
  return e;
}

// Largest j with 1.5 * 2^j inside the resolved modulation range.
int top_modulation(double dt) {
  const double top = 0.75 * std::numbers::pi / dt;
  int j = 0;
  while (1.5 * std::exp2(j + 1) <= top) ++j;
  return j;
}

std::uint64_t draw_seed(std::uint64_t base, std::size_t i, std::uint64_t salt = 0) {
  return base * 1000003ULL + static_cast<std::uint64_t>(i) * 7919ULL + salt;
}

FamilySpec cycle_family(std::size_t i, const EstimateInputs& in, const ConeAtlas& atlas) {
  FamilySpec f;
  f.k = in.k;
  f.seed = draw_seed(in.seed, i);
  const std::size_t round = i / 4;
  switch (i % 4) {
    case 0:
      f.kind = FamilyKind::kFree;
      break;
    case 1:
      f.kind = FamilyKind::kModulated;
      f.j = static_cast<int>(round % static_cast<std::size_t>(top_modulation(in.dt) + 1));
      break;
    case 2:
      f.kind = FamilyKind::kRandomModulation;
      break;
    default:
      f.kind = FamilyKind::kCone;
      f.direction = round % atlas.size();
      break;
  }
  return f;
}

double mixed_max_over_axes(const Trajectory& u, double p, double q) {
  double best = 0.0;
  for (int d = 0; d < u.grid.dim(); ++d)
    best = std::max(best, mixed_norm(u, {unit_axis(u.grid.dim(), d), p, q}));
  return best;
}

// Pointwise product per frame, then D^{beta_outer} of it.
Trajectory product(const Trajectory& a, const Trajectory& b) {
  Trajectory out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

Trajectory fractional_frames(const Trajectory& u, double beta) {
  Trajectory out = u;
  parallel_for(u.frames, [&](std::size_t f) {
    out.set_frame(f, apply_fractional(u.field(f), beta, ZeroModePolicy::kZeroOut));
  });
  return out;
}

double kernel_l1(const Grid& g, const std::vector<Complex>& m) {
  const Field K = dft_inverse(Spectrum(g, m));
  double sum = 0.0;
  for (const auto& z : K.values) sum += std::abs(z);
  return sum * std::pow(g.dx(), g.dim());
}

class Runner {
 public:
  Runner(EstimateKind kind, const EstimateInputs& in, const NormContext& ctx)
      : kind_(kind), in_(in), ctx_(ctx), grid_(make_grid(in.n, in.points, in.length)),
        space_(ctx, grid_, in.frames, in.dt), axes_(axis_directions(ctx.atlas)) {
    sigma0_ = (in.n - 2.0 * ctx.s) / 2.0;
    sigma_ = in.sigma < 0.0 ? sigma0_ : in.sigma;
  }

  double sigma() const { return sigma_; }

  Draw run(std::size_t i) const {
    switch (kind_) {
      case EstimateKind::kEmbedding: return embedding(i);
      case EstimateKind::kLinftyL2: return linfty_l2(i);
      case EstimateKind::kSmoothing: return smoothing(i);
      case EstimateKind::kMaximal: return maximal(i);
      case EstimateKind::kDsCommute: return ds_commute(i);
      case EstimateKind::kMultiplierBound: return multiplier(i);
      case EstimateKind::kHomogeneous: return homogeneous(i);
      case EstimateKind::kInhomogeneous: return inhomogeneous(i);
      case EstimateKind::kTrilinear: return trilinear(i);
    }
    return {};
  }

  nlohmann::json family_note() const {
    switch (kind_) {
      case EstimateKind::kEmbedding:
      case EstimateKind::kMultiplierBound:
        return "cone (random modulation times theta_e), axis directions in turn";
      case EstimateKind::kDsCommute:
      case EstimateKind::kInhomogeneous:
      case EstimateKind::kTrilinear:
        return "broadband random modulation on shells k-1..k+1";
      case EstimateKind::kHomogeneous:
        return "free evolution of broadband data on all representable shells k >= 0";
      default:
        return "cycle: free, modulated (j cycling), random_modulation, cone";
    }
  }

 private:
  double t0() const { return -0.5 * static_cast<double>(in_.frames) * in_.dt; }

  Trajectory member(const FamilySpec& f) const {
    return make_family_member(f, grid_, t0(), in_.dt, in_.frames, ctx_);
  }

  FamilySpec broadband(std::size_t i, std::uint64_t salt) const {
    FamilySpec f;
    f.kind = FamilyKind::kBroadband;
    f.k = in_.k - 1;
    f.k_hi = in_.k + 1;
    f.seed = draw_seed(in_.seed, i, salt);
    return f;
  }

  FamilySpec cone_family(std::size_t i) const {
    FamilySpec f;
    f.kind = FamilyKind::kCone;
    f.k = in_.k;
    f.direction = axes_[i % axes_.size()];
    f.seed = draw_seed(in_.seed, i);
    return f;
  }

  static Draw ratio_or_skip(Ratios r, double rhs) {
    Draw d;
    if (!(rhs > 0.0)) {
      d.skipped = true;
      return d;
    }
    d.ratios = std::move(r);
    return d;
  }

  Draw embedding(std::size_t i) const {
    const FamilySpec f = cone_family(i);
    const SpacetimeSpectrum V = space_.transform(member(f));
    const double y = space_.y_norm(V, in_.k, ctx_.atlas.direction(f.direction));
    if (!(y > 0.0) || !(y < kUnbounded)) return ratio_or_skip({}, 0.0);
    double worst = 0.0;
    const double ks = std::exp2(in_.k * ctx_.s);
    for (int j = 0; j <= space_.j_max(); ++j) {
      const double x = space_.x_norm(space_.modulation_piece(V, j), in_.k);
      const double bound = std::min(ks * std::exp2(-0.5 * j), 1.0);
      worst = std::max(worst, x / (bound * y));
    }
    const double xv = space_.x_norm(V, in_.k);
    return ratio_or_skip({{"Qj_X_over_Y", worst}, {"X_over_2^{ks}Y", xv / (ks * y)}}, y);
  }

  Draw linfty_l2(std::size_t i) const {
    const Trajectory u = member(cycle_family(i, in_, ctx_.atlas));
    const double z = space_.z_upper(space_.transform(u), in_.k).value;
    return ratio_or_skip({{"Linf_L2_over_Zk", linf_l2_norm(u) / z}}, z);
  }

  Draw smoothing(std::size_t i) const {
    const SpacetimeSpectrum V = space_.transform(member(cycle_family(i, in_, ctx_.atlas)));
    const double z = space_.z_upper(V, in_.k).value;
    const double rhs = std::exp2(-0.5 * in_.k * (2.0 * ctx_.s - 1.0)) * z;
    const Trajectory w = space_.inverse(V);
    const double f = smoothing_lhs(w, ctx_);
    const double fbar = smoothing_lhs(conjugated(w), ctx_);
    return ratio_or_skip({{"f", f / rhs}, {"fbar", fbar / rhs}}, rhs);
  }

  Draw maximal(std::size_t i) const {
    const SpacetimeSpectrum V = space_.transform(member(cycle_family(i, in_, ctx_.atlas)));
    const double z = space_.z_upper(V, in_.k).value;
    const int n = in_.n;
    const double base = std::exp2(0.5 * in_.k * (n - 1)) * z;
    if (!(base > 0.0)) return ratio_or_skip({}, 0.0);
    Ratios r;
    r.emplace_back("globmax", mixed_max_over_axes(space_.inverse(V), 2.0, kUnbounded) / base);
    const std::size_t block = grid_.size();
    std::vector<double> mass(block, 0.0);
    for (std::size_t f = 0; f < V.frames; ++f)
      for (std::size_t x = 0; x < block; ++x) mass[x] += std::norm(V.values[f * block + x]);
    for (int k1 = in_.k - 1; k1 <= in_.k; ++k1) {
      const auto boxes = boxes_meeting(k1, mass);
      if (boxes.size() > kMaxBoxes) continue;
      std::vector<double> sums(n, 0.0);
      for (const auto& m : boxes) {
        const Trajectory w = space_.inverse(space_.spatial(V, m));
        for (int d = 0; d < n; ++d) {
          const double v = mixed_norm(w, {unit_axis(n, d), 2.0, kUnbounded});
          sums[d] += v * v;
        }
      }
      const double lhs = std::sqrt(*std::max_element(sums.begin(), sums.end()));
      const int gap = in_.k - k1;
      const double rhs = base * std::exp2(-0.5 * gap * (n - 2)) * (1.0 + std::abs(gap));
      r.emplace_back("box_k1=" + std::to_string(k1), lhs / rhs);
    }
    return ratio_or_skip(std::move(r), base);
  }

  // Box multipliers P_{k1, l} whose support meets the lattice points in `mass`.
  std::vector<std::vector<Complex>> boxes_meeting(int k1, const std::vector<double>& mass) const {
    std::vector<std::vector<Complex>> out;
    std::vector<double> xi(in_.n);
    for (const auto& c : box_centers(grid_, k1)) {
      std::vector<Complex> m(grid_.size());
      bool any = false;
      for (std::size_t x = 0; x < grid_.size(); ++x) {
        grid_.wavevector(x, xi);
        m[x] = ctx_.bumps.box(xi, k1, c);
        any = any || (m[x] != Complex(0.0) && mass[x] > 0.0);
      }
      if (any) out.push_back(std::move(m));
    }
    return out;
  }

  static constexpr std::size_t kMaxBoxes = 128;

  Draw ds_commute(std::size_t i) const {
    const SpacetimeSpectrum V = space_.transform(member(broadband(i, 0)));
    const double betas[] = {-(2.0 * ctx_.s - 1.0) / 2.0, 2.0 * ctx_.s - 1.0};
    const std::pair<double, double> pq[] = {{1.0, 2.0}, {kUnbounded, 2.0}, {2.0, kUnbounded}};
    const auto e = unit_axis(in_.n, 0);
    std::vector<Trajectory> pieces;
    const int lo = in_.k - 2;
    for (int l = lo; l <= in_.k + 2; ++l) pieces.push_back(space_.inverse(space_.shell(V, l)));
    double upper = 0.0, lower = 0.0;
    for (double beta : betas) {
      std::vector<Trajectory> lifted;
      for (int l = lo; l <= in_.k + 2; ++l)
        lifted.push_back(space_.inverse(space_.fractional(space_.shell(V, l), beta)));
      for (const auto& [p, q] : pq) {
        std::vector<double> plain, up;
        for (std::size_t a = 0; a < pieces.size(); ++a) {
          plain.push_back(mixed_norm(pieces[a], {e, p, q}));
          up.push_back(mixed_norm(lifted[a], {e, p, q}));
        }
        for (int l = in_.k - 1; l <= in_.k + 1; ++l) {
          const std::size_t a = static_cast<std::size_t>(l - lo);
          const double scale = std::exp2(l * beta);
          const double near = plain[a - 1] + plain[a] + plain[a + 1];
          const double near_up = up[a - 1] + up[a] + up[a + 1];
          if (near > 0.0) upper = std::max(upper, up[a] / (scale * near));
          if (near_up > 0.0) lower = std::max(lower, scale * plain[a] / near_up);
        }
      }
    }
    return ratio_or_skip({{"upper", upper}, {"lower", lower}}, 1.0);
  }

  Draw multiplier(std::size_t i) const {
    const FamilySpec f = cone_family(i);
    const SpacetimeSpectrum V = space_.transform(member(f));
    std::mt19937_64 rng(draw_seed(in_.seed, i, 17));
    std::uniform_real_distribution<double> unit;
    const int n = in_.n;
    std::vector<double> y(n);
    for (auto& c : y) c = unit(rng) * in_.length;
    const double width = 1.0 + 7.0 * unit(rng);
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    std::vector<Complex> m(grid_.size());
    std::vector<double> xi(n);
    for (std::size_t x = 0; x < grid_.size(); ++x) {
      grid_.wavevector(x, xi);
      double dot = 0.0, r2 = 0.0;
      for (int d = 0; d < n; ++d) {
        dot += xi[d] * y[d];
        r2 += xi[d] * xi[d];
      }
      const Complex shift = std::polar(1.0, -dot);
      switch (i % 3) {
        case 0: m[x] = shift; break;
        case 1: m[x] = std::exp(-r2 / (2.0 * width * width)); break;
        default: m[x] = shift * std::polar(std::exp(-r2 / (2.0 * width * width)), phase); break;
      }
    }
    const double K = kernel_l1(grid_, m);
    const SpacetimeSpectrum W = space_.spatial(V, m);
    const auto& e = ctx_.atlas.direction(f.direction);
    const double x0 = space_.x_norm(V, in_.k), x1 = space_.x_norm(W, in_.k);
    const double y0 = space_.y_norm(V, in_.k, e), y1 = space_.y_norm(W, in_.k, e);
    const double z0 = space_.z_upper(V, in_.k).value, z1 = space_.z_upper(W, in_.k).value;
    return ratio_or_skip({{"X", x1 / (K * x0)}, {"Y", y1 / (K * y0)}, {"Z", z1 / (K * z0)}},
                         std::min({x0, y0, z0}));
  }

  Draw homogeneous(std::size_t i) const {
    const auto [lo, hi] = dyadic_range(grid_);
    std::mt19937_64 rng(draw_seed(in_.seed, i, 29));
    std::uniform_real_distribution<double> weight(0.25, 1.0);
    Spectrum c(grid_);
    for (int k = std::max(lo, 0); k <= hi; ++k) {
      const Spectrum piece = random_shell_spectrum(grid_, k, draw_seed(in_.seed, i, 31 + k), ctx_.bumps);
      const double w = weight(rng) * std::exp2(-sigma_ * k);
      for (std::size_t x = 0; x < grid_.size(); ++x) c.values[x] += w * piece.values[x];
    }
    const Field u0 = dft_inverse(c);
    const double rhs = hdot_norm(c, sigma_);
    const Trajectory u = free_evolution(u0, t0(), in_.dt, in_.frames, ctx_.s);
    const double lhs = space_.f_sigma(space_.transform(u), sigma_).value;
    return ratio_or_skip({{"F_over_Hdot", lhs / rhs}}, rhs);
  }

  Draw inhomogeneous(std::size_t i) const {
    std::size_t frames = 1;
    while (static_cast<double>(frames * 2) * in_.dt <= in_.inhomogeneous_span + 1e-12) frames *= 2;
    const double start = -0.5 * static_cast<double>(frames) * in_.dt;
    const ResolutionSpace space(ctx_, grid_, frames, in_.dt);
    const Trajectory F = make_family_member(broadband(i, 0), grid_, start, in_.dt, frames, ctx_);
    const Plateau psi{1.0, 2.0};
    const Trajectory u = duhamel_term(F, ctx_.s, [&](double t) { return psi(t); });
    const double rhs = space.n_sigma(space.transform(F), sigma_).value;
    const double lhs = space.f_sigma(space.transform(u), sigma_).value;
    return ratio_or_skip({{"F_over_N", lhs / rhs}}, rhs);
  }

  Draw trilinear(std::size_t i) const {
    const Trajectory f1 = member(broadband(i, 101));
    const Trajectory f2 = member(broadband(i, 202));
    const Trajectory f3 = member(broadband(i, 303));
    const double lo = -(2.0 * ctx_.s - 1.0) / 2.0, hi = 2.0 * ctx_.s - 1.0;
    double beta = in_.beta;
    if (beta < lo || beta > hi) {
      std::mt19937_64 rng(draw_seed(in_.seed, i, 41));
      beta = std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    const auto main = trilinear_terms(f1, f2, f3, beta, sigma_, in_.conjugate, ctx_);

    // Auxiliary bilinear bounds on the pair (f1~, f2~).
    const Trajectory a = in_.conjugate[0] ? conjugated(f1) : f1;
    const Trajectory b = in_.conjugate[1] ? conjugated(f2) : f2;
    const SpacetimeSpectrum P = space_.transform(product(a, b));
    const DyadicSum F1 = space_.f_sigma(space_.transform(f1), sigma0_);
    const DyadicSum F2 = space_.f_sigma(space_.transform(f2), sigma0_);

    const Trajectory low = space_.inverse(space_.shell_leq(space_.fractional(P, -beta), in_.k));
    const double low_lhs = mixed_max_over_axes(low, 1.0, kUnbounded);
    const double low_rhs = std::exp2(in_.k * (2.0 * ctx_.s - 1.0 - beta)) * F1.value * F2.value;

    const double shell_lhs = space_.l2(space_.shell(P, in_.k));
    double near1 = 0.0, near2 = 0.0, high = 0.0;
    for (int l = in_.k - 2; l <= in_.k + 2; ++l) {
      near1 += F1.z(l);
      near2 += F2.z(l);
    }
    for (const auto& s1 : F1.shells)
      for (const auto& s2 : F2.shells)
        if (s1.k >= in_.k - 2 && s2.k >= in_.k - 2 && std::abs(s1.k - s2.k) <= 2)
          high += std::exp2(s1.k * sigma0_) * s1.z * s2.z;
    const double shell_rhs = F1.value * near2 + near1 * F2.value + high;

    if (!(main.rhs > 0.0) || !(low_rhs > 0.0) || !(shell_rhs > 0.0)) return ratio_or_skip({}, 0.0);
    return {{{"trilinear", main.lhs / main.rhs}, {"low_product", low_lhs / low_rhs}, {"shell_product", shell_lhs / shell_rhs}},
            false};
  }

  EstimateKind kind_;
  EstimateInputs in_;
  NormContext ctx_;
  Grid grid_;
  ResolutionSpace space_;
  std::vector<std::size_t> axes_;
  double sigma0_ = 0.0;
  double sigma_ = 0.0;
};

}  // namespace

std::string estimate_name(EstimateKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

EstimateKind estimate_from_name(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  throw InvalidArgument("unknown estimate kind '" + name + "'");
}

const std::vector<EstimateKind>& all_estimates() {
  static const std::vector<EstimateKind> kinds = [] {
    std::vector<EstimateKind> v;
    for (const auto& [k, name] : kNames) v.push_back(k);
    return v;
  }();
  return kinds;
}

EstimateInputs default_inputs(int n) {
  EstimateInputs in;
  in.n = n;
  if (n == 3) {
    in.points = 16;
    in.frames = 32;
    in.dt = 0.5;
  } else if (n != 2) {
    throw InvalidArgument("estimate suites are defined for n = 2 and n = 3");
  }
  return in;
}

nlohmann::json to_json(const EstimateInputs& in) {
  nlohmann::json doc{{"n", in.n},         {"points", in.points}, {"length", in.length},
                     {"frames", in.frames}, {"dt", in.dt},       {"k", in.k},
                     {"draws", in.draws},   {"seed", in.seed}};
  if (in.sigma >= 0.0) doc["sigma"] = in.sigma;
  doc["conjugate"] = in.conjugate;
  return doc;
}

double smoothing_lhs(const Trajectory& windowed, const NormContext& ctx) {
  double best = 0.0;
  for (std::size_t e = 0; e < ctx.atlas.size(); ++e) {
    if (ctx.atlas.axis_of(e) < 0) continue;
    const Trajectory piece = project_spatial(windowed, ProjectionSpec::cone(e), ctx.bumps, &ctx.atlas);
    best = std::max(best, mixed_norm(piece, {ctx.atlas.direction(e), kUnbounded, 2.0}));
  }
  return best;
}

TrilinearTerms trilinear_terms(const Trajectory& f1, const Trajectory& f2, const Trajectory& f3,
                               double beta, double sigma, const std::array<bool, 3>& conjugate,
                               const NormContext& ctx) {
  if (!(f1.grid == f2.grid) || !(f1.grid == f3.grid) || f1.frames != f2.frames ||
      f1.frames != f3.frames)
    throw InvalidArgument("trilinear inputs live on different lattices");
  const Trajectory a = conjugate[0] ? conjugated(f1) : f1;
  const Trajectory b = conjugate[1] ? conjugated(f2) : f2;
  const Trajectory c = conjugate[2] ? conjugated(f3) : f3;
  const Trajectory lhs_traj = product(fractional_frames(product(a, b), -beta), fractional_frames(c, beta));

  const ResolutionSpace space = ResolutionSpace::for_trajectory(ctx, f1);
  const double sigma0 = (f1.grid.dim() - 2.0 * ctx.s) / 2.0;
  TrilinearTerms out;
  out.lhs = space.n_sigma(space.transform(lhs_traj), sigma).value;
  double top[3], base[3];
  const Trajectory* fs[3] = {&f1, &f2, &f3};
  for (int i = 0; i < 3; ++i) {
    const SpacetimeSpectrum V = space.transform(*fs[i]);
    base[i] = space.f_sigma(V, sigma0).value;
    top[i] = sigma == sigma0 ? base[i] : space.f_sigma(V, sigma).value;
  }
  out.rhs = top[0] * base[1] * base[2] + base[0] * top[1] * base[2] + base[0] * base[1] * top[2];
  return out;
}

RatioReport verify_estimate(EstimateKind kind, const EstimateInputs& inputs, const NormContext& ctx) {
  if (ctx.atlas.dim() != inputs.n) throw InvalidArgument("cone atlas dimension does not match n");
  if (inputs.draws < 2) throw InvalidArgument("at least two draws are needed");
  const Runner runner(kind, inputs, ctx);

  std::vector<Draw> draws(inputs.draws);
  parallel_for(inputs.draws, [&](std::size_t i) { draws[i] = runner.run(i); });

  RatioReport rep;
  rep.kind = estimate_name(kind);
  rep.draws = inputs.draws;
  rep.parameters = to_json(inputs);
  rep.parameters["s"] = ctx.s;
  rep.parameters["sigma"] = runner.sigma();
  rep.parameters["margin"] = ctx.atlas.margin();
  rep.parameters["directions"] = ctx.atlas.size();
  rep.parameters["family"] = runner.family_note();
  const std::size_t half = inputs.draws / 2;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (draws[i].skipped) {
      ++rep.skipped;
      continue;
    }
    for (const auto& [name, r] : draws[i].ratios) {
      rep.item(name).add(r);
      rep.c_star = std::max(rep.c_star, r);
      if (i < half) rep.c_star_half = std::max(rep.c_star_half, r);
    }
  }
  const bool finite = std::isfinite(rep.c_star);
  rep.stable = finite && relative_change(rep.c_star, rep.c_star_half) < 0.25;
  rep.passed = finite && rep.stable && rep.skipped < rep.draws;
  rep.notes.push_back("inequality shape checked at n=" + std::to_string(inputs.n) +
                      "; the dimensional hypotheses of the continuum statements are not checked");
  rep.notes.push_back("Z_k is the two-branch upper bound of the infimum");
  if (kind == EstimateKind::kMultiplierBound)
    rep.notes.push_back("surrogate: Z_k appears on the left-hand side");
  if (kind == EstimateKind::kSmoothing) {
    const auto* f = rep.find("f");
    const auto* fb = rep.find("fbar");
    if (f && fb)
      rep.notes.push_back("f vs conjugate relative change: " +
                          std::to_string(relative_change(f->max, fb->max)));
  }
  return rep;
}

}  // namespace fsl
