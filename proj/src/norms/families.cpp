#include "fsl/norms/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fsl/common/error.hpp"
#include "fsl/common/parallel.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fsl {

namespace {

const std::pair<FamilyKind, const char*> kNames[] = {
    {FamilyKind::kShell, "shell"},
    {FamilyKind::kFree, "free"},
    {FamilyKind::kModulated, "modulated"},
    {FamilyKind::kRandomModulation, "random_modulation"},
    {FamilyKind::kCone, "cone"},
    {FamilyKind::kBroadband, "broadband"},
};

}  // namespace

std::string family_name(FamilyKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

FamilyKind family_from_name(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  throw InvalidArgument("unknown input family '" + name + "'");
}

nlohmann::json to_json(const FamilySpec& spec) {
  nlohmann::json doc{{"family", family_name(spec.kind)}, {"k", spec.k}, {"seed", spec.seed}};
  if (spec.kind == FamilyKind::kBroadband) doc["k_hi"] = spec.k_hi;
  if (spec.kind == FamilyKind::kModulated) doc["j"] = spec.j;
  if (spec.kind == FamilyKind::kCone) doc["direction"] = spec.direction;
  if (spec.core) doc["core"] = true;
  return doc;
}

Spectrum random_shell_spectrum(const Grid& g, int k, std::uint64_t seed, const BumpPair& bumps,
                               bool core) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Spectrum out(g);
  const double scale = std::exp2(-k);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double re = normal(rng), im = normal(rng);
    const double r = g.wavenumber(i);
    if (r == 0.0) continue;
    const double w = bumps.phi(r * scale);
    if (core ? w != 1.0 : w == 0.0) continue;
    out.values[i] = Complex(re, im) * w;
  }
  return out;
}

Trajectory make_family_member(const FamilySpec& spec, const Grid& g, double t0, double dt,
                              std::size_t frames, const NormContext& ctx) {
  const double s = ctx.s;
  Spectrum c(g);
  if (spec.kind == FamilyKind::kBroadband) {
    if (spec.k_hi < spec.k) throw InvalidArgument("broadband family needs k_hi >= k");
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> weight(0.25, 1.0);
    for (int k = spec.k; k <= spec.k_hi; ++k) {
      const Spectrum piece = random_shell_spectrum(g, k, spec.seed * 131 + k, ctx.bumps, spec.core);
      const double w = weight(rng);
      for (std::size_t i = 0; i < g.size(); ++i) c.values[i] += w * piece.values[i];
    }
  } else {
    c = random_shell_spectrum(g, spec.k, spec.seed, ctx.bumps, spec.core);
  }
  if (spec.kind == FamilyKind::kCone) {
    if (spec.direction >= ctx.atlas.size()) throw InvalidArgument("cone direction index out of range");
    std::vector<double> xi(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.wavevector(i, xi);
      c.values[i] *= g.wavenumber(i) == 0.0 ? 0.0 : ctx.atlas.weight(spec.direction, xi);
    }
  }

  const double top = 0.75 * std::numbers::pi / dt;
  std::vector<double> mu(g.size(), 0.0);
  switch (spec.kind) {
    case FamilyKind::kShell:
      for (std::size_t i = 0; i < g.size(); ++i) mu[i] = std::pow(g.wavenumber(i), 2.0 * s);
      break;
    case FamilyKind::kFree:
      break;
    case FamilyKind::kModulated: {
      const double m = 1.5 * std::exp2(spec.j);
      if (m > top) throw InvalidArgument("modulation 1.5 * 2^j is not resolved by the time step");
      std::fill(mu.begin(), mu.end(), m);
      break;
    }
    case FamilyKind::kRandomModulation:
    case FamilyKind::kCone:
    case FamilyKind::kBroadband: {
      std::mt19937_64 rng(spec.seed + 0x51ed27);
      std::uniform_real_distribution<double> u(std::log(0.5), std::log(top));
      for (auto& m : mu) {
        const double v = std::exp(u(rng));
        m = (rng() & 1U) ? v : -v;
      }
      break;
    }
  }

  Trajectory out(g, t0, dt, frames);
  parallel_for(frames, [&](std::size_t f) {
    const double t = out.time(f);
    Spectrum S = c;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (S.values[i] == Complex(0.0)) continue;
      const double phase = t * (std::pow(g.wavenumber(i), 2.0 * s) - mu[i]);
      S.values[i] *= std::polar(1.0, phase);
    }
    out.set_frame(f, dft_inverse(S));
  });
  return out;
}

}  // namespace fsl
