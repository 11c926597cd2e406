#include "fsl/solver/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <fmt/core.h>

#include "fsl/common/error.hpp"
#include "fsl/common/io.hpp"
#include "fsl/common/report.hpp"
#include "fsl/cone/multiplier.hpp"
#include "fsl/lp/bumps.hpp"
#include "fsl/norms/estimates.hpp"
#include "fsl/osc/dispersive.hpp"
#include "fsl/osc/measure.hpp"

namespace fsl {

namespace {

bool bracketed(const RatioReport& r) {
  for (const auto& it : r.items)
    if (it.count == 0 || !std::isfinite(it.bracket())) return false;
  return !r.items.empty();
}

void run_nprops(const SuiteOptions& o, SuiteResult& res) {
  ConeParams p;
  p.s = o.s;
  p.k = o.k;
  const RatioReport a = verify_n_properties(p, o.samples, o.seed);
  p.k = o.k + 1;
  const RatioReport b = verify_n_properties(p, o.samples, o.seed);
  const double change = relative_change(a.c_star, b.c_star);
  res.document["k"] = to_json(a);
  res.document["k_plus_1"] = to_json(b);
  res.document["c_star_change"] = change;
  if (!bracketed(a) || !bracketed(b)) res.failures.push_back("an item ratio is not bracketed");
  if (!(change < 5e-3)) res.failures.push_back(fmt::format("C* moved by {:.3g} under k -> k+1", change));
}

void run_factorization(const SuiteOptions& o, SuiteResult& res) {
  const BumpPair bumps = build_bumps();
  nlohmann::json sweeps = nlohmann::json::array();
  double lo = INFINITY, hi = 0.0;
  for (int k : {4, 6, 8}) {
    ConeParams p;
    p.s = o.s;
    p.k = k;
    const RatioReport r = factorization_envelope(p, bumps, o.samples, o.seed);
    sweeps.push_back(to_json(r));
    if (!r.passed) res.failures.push_back(fmt::format("envelope at k={} has no finite C*", k));
    lo = std::min(lo, r.c_star);
    hi = std::max(hi, r.c_star);
  }
  const double spread = relative_change(lo, hi);
  res.document["envelope"] = sweeps;
  res.document["c_star_spread"] = spread;
  if (!(spread < 0.25)) res.failures.push_back(fmt::format("envelope C* spread {:.3g} across k", spread));
  nlohmann::json tail = nlohmann::json::array();
  for (int k : {10, 12, 14}) {
    ConeParams p;
    p.s = o.s;
    p.k = k;
    tail.push_back({{"k", k}, {"c_star", factorization_envelope(p, bumps, o.samples, o.seed).c_star}});
  }
  res.document["envelope_tail"] = tail;

  ConeParams p;
  p.s = 1.0;
  p.k = 4;
  AdmissibleSampler sampler(p, o.seed);
  double worst = 0.0;
  const std::size_t n = std::min<std::size_t>(o.samples, 1000);
  for (std::size_t i = 0; i < n; ++i) {
    const SymbolSample q = sampler.draw();
    const double scale = q.abs_xi() * q.abs_xi() + std::abs(q.tau);
    worst = std::max(worst, s1_factorization_residual(q.xi, q.tau, q.e) / scale);
  }
  res.document["s1_points"] = n;
  res.document["s1_scaled_residual"] = worst;
  if (!(worst < 1e-10)) res.failures.push_back(fmt::format("s=1 factorization residual {:.3g}", worst));
}

void run_estimates(const SuiteOptions& o, const std::vector<EstimateKind>& defaults, SuiteResult& res) {
  std::vector<EstimateKind> kinds;
  if (o.kinds.empty())
    kinds = defaults;
  else
    for (const auto& name : o.kinds) kinds.push_back(estimate_from_name(name));
  nlohmann::json reports = nlohmann::json::array();
  for (int n : o.dims) {
    const NormContext ctx = make_norm_context(n, o.s);
    for (EstimateKind kind : kinds) {
      EstimateInputs in = default_inputs(n);
      in.draws = o.draws;
      in.seed = o.seed;
      const RatioReport r = verify_estimate(kind, in, ctx);
      reports.push_back(to_json(r));
      if (!r.passed)
        res.failures.push_back(fmt::format("{} n={}: C*={:.4g} half={:.4g}", r.kind, n, r.c_star, r.c_star_half));
      if (kind == EstimateKind::kSmoothing) {
        const RatioItem* f = r.find("f");
        const RatioItem* g = r.find("fbar");
        if (f && g && !(relative_change(f->max, g->max) < 0.25))
          res.failures.push_back(fmt::format("smoothing n={}: f and fbar disagree", n));
      }
    }
  }
  res.document["reports"] = reports;
}

void run_dispersive(const SuiteOptions& o, SuiteResult& res) {
  (void)o;
  nlohmann::json cases = nlohmann::json::array();
  const auto t = log_spaced(10.0, 1000.0, 9);
  for (auto [n, s] : {std::pair{2, 0.75}, {3, 0.75}, {2, 0.9}}) {
    PhaseIntegralSpec spec;
    spec.n = n;
    spec.s = s;
    spec.cutoff = RadialCutoff::annulus(0);
    const DecayFit sup = fit_dispersive_decay(spec, t);
    const DecayFit origin = fit_dispersive_decay(spec, t, DecayProbe::kOrigin);
    nlohmann::json c = {{"n", n}, {"s", s}, {"sup", to_json(sup)}, {"origin", to_json(origin)}};
    if (!(std::abs(sup.slope + 0.5 * n) <= 0.15))
      res.failures.push_back(fmt::format("n={} s={}: sup slope {:.3f}", n, s, sup.slope));
    const double base = sup_over_x(spec, 1000.0);
    nlohmann::json pref = nlohmann::json::array();
    for (int k : {1, 2}) {
      PhaseIntegralSpec sk = spec;
      sk.cutoff = RadialCutoff::annulus(k);
      const double ratio = sup_over_x(sk, 1000.0) / base;
      const double expected = std::exp2(k * n * (1.0 - s));
      pref.push_back({{"k", k}, {"ratio", ratio}, {"expected", expected}});
      if (!(ratio <= 2.0 * expected && ratio >= 0.5 * expected))
        res.failures.push_back(fmt::format("n={} s={} k={}: prefactor ratio {:.3f} vs {:.3f}", n, s, k, ratio, expected));
    }
    c["prefactor"] = pref;
    cases.push_back(c);
  }
  res.document["cases"] = cases;
  res.document["notes"] = {"slopes fitted to sup_x |I(x,t)|; the x = 0 probe is a diagnostic"};
}

void run_measure(const SuiteOptions& o, SuiteResult& res) {
  const RatioReport sweep = sigma_sweep({0.6, 0.75, 0.9}, 0, 8);
  res.document["sweep"] = to_json(sweep);
  if (!sweep.passed) res.failures.push_back("measure sweep C* not finite");
  double worst = 0.0;
  for (int k = 0; k <= 6; ++k)
    for (double j : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const double tau = -std::pow(1.5 * std::exp2(k), 2.0);
      const double exact = sigma_measure(k, j, 0.0, tau, 1.0, MeasureMethod::kClosedForm);
      const double grid = sigma_measure(k, j, 0.0, tau, 1.0, MeasureMethod::kGrid);
      worst = std::max(worst, std::abs(exact - grid));
    }
  res.document["closed_form_vs_grid"] = worst;
  if (!(worst < 1e-3)) res.failures.push_back(fmt::format("closed form vs grid {:.3g}", worst));
  nlohmann::json two = nlohmann::json::array();
  for (int n : o.dims) {
    const RatioReport r = twointegrals_check(n, o.s, 64, o.seed);
    two.push_back(to_json(r));
    if (!r.passed) res.failures.push_back(fmt::format("two-integral regime n={} C* not finite", n));
  }
  res.document["twointegrals"] = two;
}

const std::vector<EstimateKind> kNormKinds{EstimateKind::kEmbedding, EstimateKind::kLinftyL2,
                                           EstimateKind::kSmoothing, EstimateKind::kMaximal,
                                           EstimateKind::kDsCommute, EstimateKind::kMultiplierBound};
const std::vector<EstimateKind> kSolutionKinds{EstimateKind::kHomogeneous, EstimateKind::kInhomogeneous,
                                               EstimateKind::kTrilinear};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"nprops", "factorization", "norms",
                                              "estimates", "dispersive", "measure"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  SuiteResult res;
  res.name = name;
  const auto start = std::chrono::steady_clock::now();
  if (name == "nprops")
    run_nprops(options, res);
  else if (name == "factorization")
    run_factorization(options, res);
  else if (name == "norms")
    run_estimates(options, kNormKinds, res);
  else if (name == "estimates")
    run_estimates(options, kSolutionKinds, res);
  else if (name == "dispersive")
    run_dispersive(options, res);
  else if (name == "measure")
    run_measure(options, res);
  else
    throw InvalidArgument("unknown suite '" + name + "'");
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.passed = res.failures.empty();
  res.document["suite"] = name;
  res.document["passed"] = res.passed;
  res.document["failures"] = res.failures;
  res.document["seconds"] = res.seconds;
  return res;
}

std::filesystem::path write_suite(const std::filesystem::path& dir, const SuiteResult& result) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (result.name + ".json");
  write_json_document(path, result.document);
  return path;
}

nlohmann::json aggregate_reports(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename() != "summary.json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  nlohmann::json entries = nlohmann::json::array();
  nlohmann::json unreadable = nlohmann::json::array();
  bool all = true;
  for (const auto& path : files) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(path));
    } catch (const std::exception&) {
      unreadable.push_back(path.filename().string());
      continue;
    }
    if (!doc.is_object() || !doc.contains("passed")) continue;
    const bool ok = doc["passed"].is_boolean() && doc["passed"].get<bool>();
    all = all && ok;
    nlohmann::json e = {{"file", path.filename().string()}, {"passed", ok}};
    if (doc.contains("failures")) e["failures"] = doc["failures"];
    if (doc.contains("seconds")) e["seconds"] = doc["seconds"];
    entries.push_back(e);
  }
  return {{"directory", dir.string()},
          {"reports", entries},
          {"unreadable", unreadable},
          {"passed", all && unreadable.empty() && !entries.empty()}};
}

}  // namespace fsl
