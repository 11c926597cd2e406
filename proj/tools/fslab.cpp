#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "fsl/common/error.hpp"
#include "fsl/common/report.hpp"
#include "fsl/norms/norms.hpp"
#include "fsl/osc/dispersive.hpp"
#include "fsl/osc/measure.hpp"
#include "fsl/solver/solver.hpp"
#include "fsl/solver/suites.hpp"
#include "fsl/spectral/fslb.hpp"
#include "fsl/spectral/transforms.hpp"

namespace fs = std::filesystem;
using namespace fsl;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct SolveArgs {
  std::string config;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  SolveConfig cfg = load_solve_config(a.config);
  if (!a.out.empty()) cfg.output_dir = a.out;
  fs::create_directories(cfg.output_dir);
  const Field u0 = make_initial_data(cfg);
  save_field(cfg.output_dir / (cfg.prefix + "_u0.fslb"), u0);
  const fs::path report = cfg.output_dir / (cfg.prefix + ".json");
  try {
    const SolveResult r = picard_solve(u0, cfg.nonlinearity, cfg);
    save_trajectory(cfg.output_dir / (cfg.prefix + "_solution.fslb"), r.solution);
    nlohmann::json doc = to_json(r, cfg);
    const bool ok = r.converged && r.residual < 10.0 * cfg.tolerance;
    doc["passed"] = ok;
    write_json_document(report, doc);
    fmt::print("iterations {}  converged {}  residual {:.3e}  a-priori ratio {:.6f}\n", r.iterations,
               r.converged, r.residual, r.apriori_ratio);
    for (const auto& n : r.notes) fmt::print("note: {}\n", n);
    fmt::print("wrote {}\n", report.string());
    return ok ? kOk : kCheckFailed;
  } catch (const DivergenceError& e) {
    write_json_document(report, {{"config", to_json(cfg)},
                                 {"passed", false},
                                 {"failures", {e.what()}},
                                 {"diagnostics", e.diagnostics()}});
    fmt::print(stderr, "solve failed: {}\n{}\n", e.what(), e.diagnostics());
    return kCheckFailed;
  }
}

struct VerifyArgs {
  std::string suite;
  SuiteOptions opt;
  std::string out = "fslab_out";
  std::vector<std::string> kinds;
};

int cmd_verify(VerifyArgs a) {
  a.opt.kinds = a.kinds;
  std::vector<std::string> names;
  if (a.suite == "all")
    names = suite_names();
  else
    names.push_back(a.suite);
  bool ok = true;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, a.opt);
    const fs::path path = write_suite(a.out, r);
    fmt::print("{:<14} {}  ({:.1f} s)  {}\n", name, r.passed ? "PASS" : "FAIL", r.seconds, path.string());
    for (const auto& f : r.failures) fmt::print("    {}\n", f);
    ok = ok && r.passed;
  }
  return ok ? kOk : kCheckFailed;
}

struct NormArgs {
  std::string in;
  std::string kind;
  int k = 0;
  std::vector<double> e;
  double sigma = NAN;
  double s = 0.75;
  double margin = 0.35;
  std::string out;
};

int cmd_norms(const NormArgs& a) {
  const Trajectory u = load_trajectory(a.in);
  const int n = u.grid.dim();
  NormContext ctx;
  if (n >= 2) {
    ctx = make_norm_context(n, a.s, a.margin);
  } else {
    ctx.bumps = build_bumps();
    ctx.s = a.s;
  }
  const double sigma = std::isnan(a.sigma) ? (n - 2.0 * a.s) / 2.0 : a.sigma;
  NormReport rep;
  rep.kind = a.kind;
  rep.parameters = {{"input", a.in}, {"s", a.s}, {"dim", n}};
  if (a.kind == "xk") {
    rep.parameters["k"] = a.k;
    rep.value = xk_norm(u, a.k, ctx, &rep.diagnostic);
  } else if (a.kind == "yk") {
    std::vector<double> e = a.e;
    if (e.empty()) {
      e.assign(n, 0.0);
      e[0] = 1.0;
    }
    rep.parameters["k"] = a.k;
    rep.parameters["e"] = e;
    rep.value = yk_norm(u, a.k, e, ctx, &rep.diagnostic);
  } else if (a.kind == "zk") {
    rep = zk_upper(u, a.k, ctx);
    rep.parameters["input"] = a.in;
  } else if (a.kind == "fsigma" || a.kind == "nsigma") {
    rep.parameters["sigma"] = sigma;
    rep.value = a.kind == "fsigma" ? f_sigma_norm(u, sigma, ctx) : n_sigma_norm(u, sigma, ctx);
  } else if (a.kind == "linfl2") {
    rep.value = linf_l2_norm(u);
  } else {
    throw ConfigError("unknown norm kind '" + a.kind + "'");
  }
  const nlohmann::json doc = to_json(rep);
  if (a.out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    write_json_document(a.out, doc);
  if (!rep.bounded()) {
    fmt::print(stderr, "unbounded: {}\n", rep.diagnostic);
    return kCheckFailed;
  }
  return kOk;
}

struct DispersiveArgs {
  int n = 2;
  double s = 0.75;
  double k = 0.0;
  std::string cutoff = "annulus";
  double t_lo = 10.0;
  double t_hi = 1000.0;
  int count = 9;
  std::string probe = "sup";
  std::string out = "fslab_out/dispersive";
};

int cmd_dispersive(const DispersiveArgs& a) {
  PhaseIntegralSpec spec;
  spec.n = a.n;
  spec.s = a.s;
  if (a.cutoff == "annulus")
    spec.cutoff = RadialCutoff::annulus(a.k);
  else if (a.cutoff == "ball")
    spec.cutoff = RadialCutoff::ball(a.k);
  else
    throw ConfigError("cutoff must be annulus or ball");
  if (!(a.t_lo > 0.0 && a.t_hi > a.t_lo && a.count >= 2)) throw ConfigError("need 0 < t-lo < t-hi and count >= 2");
  const DecayProbe probe = a.probe == "origin" ? DecayProbe::kOrigin : DecayProbe::kSupremum;
  if (a.probe != "origin" && a.probe != "sup") throw ConfigError("probe must be sup or origin");
  const auto t = log_spaced(a.t_lo, a.t_hi, a.count);
  const DecayFit fit = fit_dispersive_decay(spec, t, probe);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < fit.t.size(); ++i) {
    const double bound = std::pow(fit.t[i], -0.5 * a.n);
    rows.push_back({static_cast<double>(a.n), a.s, a.k, fit.t[i], fit.values[i], bound, fit.values[i] / bound});
  }
  const fs::path base(a.out);
  if (base.has_parent_path()) fs::create_directories(base.parent_path());
  write_csv(base.string() + ".csv", {"n", "s", "k", "t", "value", "bound", "ratio"}, rows);
  nlohmann::json doc = to_json(fit);
  doc["n"] = a.n;
  doc["s"] = a.s;
  doc["k"] = a.k;
  doc["cutoff"] = a.cutoff;
  write_json_document(base.string() + ".json", doc);
  fmt::print("slope {:.4f} (target {:.2f})  residual {:.3g}\n", fit.slope, -0.5 * a.n, fit.residual);
  return fit.passed ? kOk : kCheckFailed;
}

int cmd_report(const std::string& dir, const std::string& out) {
  const nlohmann::json summary = aggregate_reports(dir);
  const fs::path path = out.empty() ? fs::path(dir) / "summary.json" : fs::path(out);
  write_json_document(path, summary);
  for (const auto& e : summary["reports"])
    fmt::print("{:<32} {}\n", e["file"].get<std::string>(), e["passed"].get<bool>() ? "PASS" : "FAIL");
  for (const auto& u : summary["unreadable"]) fmt::print("{:<32} unreadable\n", u.get<std::string>());
  fmt::print("summary: {}\n", path.string());
  return summary["passed"].get<bool>() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fslab: fractional Schrodinger estimate lab"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Picard solve from a config file");
  c_solve->add_option("--config", solve.config, "config document")->required();
  c_solve->add_option("--out", solve.out, "output directory (overrides the config)");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  c_verify->add_option("suite", verify.suite, "suite")->required()->check(CLI::IsMember(suites));
  c_verify->add_option("--s", verify.opt.s, "order s");
  c_verify->add_option("--k", verify.opt.k, "frequency level");
  c_verify->add_option("--samples", verify.opt.samples, "samples per sweep");
  c_verify->add_option("--seed", verify.opt.seed, "seed");
  c_verify->add_option("--dims", verify.opt.dims, "dimensions for estimate suites");
  c_verify->add_option("--draws", verify.opt.draws, "draws per estimate family");
  c_verify->add_option("--kind", verify.kinds, "estimate kinds");
  c_verify->add_option("--out", verify.out, "report directory");

  NormArgs norms;
  auto* c_norms = app.add_subcommand("norms", "evaluate a resolution norm of a trajectory");
  c_norms->add_option("--in", norms.in, "trajectory (.fslb)")->required();
  c_norms->add_option("--kind", norms.kind, "xk|yk|zk|fsigma|nsigma|linfl2")->required();
  c_norms->add_option("--k", norms.k, "frequency level");
  c_norms->add_option("--e", norms.e, "direction");
  c_norms->add_option("--sigma", norms.sigma, "regularity (default (n-2s)/2)");
  c_norms->add_option("--s", norms.s, "order s");
  c_norms->add_option("--margin", norms.margin, "cone margin");
  c_norms->add_option("--out", norms.out, "write the report here instead of stdout");

  DispersiveArgs disp;
  auto* c_disp = app.add_subcommand("dispersive", "decay sweep of the oscillatory integral");
  c_disp->add_option("--n", disp.n, "dimension");
  c_disp->add_option("--s", disp.s, "order s");
  c_disp->add_option("--k", disp.k, "cutoff scale");
  c_disp->add_option("--cutoff", disp.cutoff, "annulus|ball");
  c_disp->add_option("--t-lo", disp.t_lo);
  c_disp->add_option("--t-hi", disp.t_hi);
  c_disp->add_option("--count", disp.count);
  c_disp->add_option("--probe", disp.probe, "sup|origin");
  c_disp->add_option("--out", disp.out, "output stem (.csv and .json)");

  std::string report_dir = "fslab_out", report_out;
  auto* c_report = app.add_subcommand("report", "aggregate report documents");
  c_report->add_option("--dir", report_dir, "directory of reports");
  c_report->add_option("--out", report_out, "summary path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_solve) return cmd_solve(solve);
    if (*c_verify) return cmd_verify(verify);
    if (*c_norms) return cmd_norms(norms);
    if (*c_disp) return cmd_dispersive(disp);
    if (*c_report) return cmd_report(report_dir, report_out);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kUsage;
  } catch (const InvalidArgument& e) {
    fmt::print(stderr, "invalid argument: {}\n", e.what());
    return kUsage;
  } catch (const FormatError& e) {
    fmt::print(stderr, "format error: {}\n", e.what());
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    fmt::print(stderr, "file error: {}\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kCheckFailed;
  }
  return kUsage;
}
