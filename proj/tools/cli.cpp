#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "colebrook/approx.hpp"
#include "colebrook/lambert_w.hpp"
#include "colebrook/solvers.hpp"
#include "colebrook/starting_points.hpp"
#include "colebrook/sweep.hpp"
#include "colebrook/tables.hpp"

namespace colebrook::cli {

namespace {

std::string g15(double v) { return fmt::format("{:.15g}", v); }

std::optional<std::string> env(const char* name) {
  if (const char* v = std::getenv(name); v && *v) return std::string(v);
  return std::nullopt;
}

double default_tolerance() {
  if (auto v = env("COLEBROOK_TOL")) {
    try {
      std::size_t used = 0;
      const double t = std::stod(*v, &used);
      if (used == v->size() && t > 0.0) return t;
    } catch (const std::exception&) {
    }
    throw UsageError(fmt::format("COLEBROOK_TOL must be a positive number (got '{}')", *v));
  }
  return 1e-8;
}

int default_max_iterations() {
  if (auto v = env("COLEBROOK_MAXITER")) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(*v, &used);
      if (used == v->size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(fmt::format("COLEBROOK_MAXITER must be a positive integer (got '{}')", *v));
  }
  return 100;
}

struct SolveArgs {
  double re = 0, rr = 0;
  std::string method = "newton-x";
  std::string start = "traditional";
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string stop_on = "working";
  bool trace = false, verify = false, strict = false;
};

struct TableArgs {
  std::string id;
  bool failures_only = false;
};

struct SweepArgs {
  std::string map;
  std::string method = "newton-x";
  std::string start = "traditional";
  std::string estimator = "approx:0";
  std::string grid;
  std::optional<std::size_t> sobol;
  std::string domain = "default";
  std::optional<double> re_min, re_max, rr_min, rr_max;
  std::optional<double> tol;
  std::optional<int> max_iter;
  unsigned jobs = 0;
  std::string out;
};

struct ApproxArgs {
  double re = 0, rr = 0;
  int level = 2;
  std::string variant = "halley";
};

struct LambertArgs {
  std::optional<double> y, re, rr;
  std::string method = "halley";
  double z0 = kDefaultWStart;
  double tol = 1e-12;
  bool trace = false;
};

void print_trace(std::ostream& out, const IterationTrace<double>& tr) {
  const bool x_space = tr.variable == Space::X;
  std::string head = fmt::format("{:<14}{:>24}", "step", "f");
  for (const auto& n : tr.aux_names) head += fmt::format("{:>24}", n);
  head += fmt::format("{:>24}", x_space ? "x" : "lambda");
  if (x_space) head += fmt::format("{:>24}", "lambda");
  fmt::print(out, "{}\n", head);
  auto row = [&](const std::string& label, std::optional<double> f, const std::vector<double>* aux,
                 double it) {
    std::string s = fmt::format("{:<14}{:>24}", label, f ? g15(*f) : "");
    for (std::size_t k = 0; k < tr.aux_names.size(); ++k)
      s += fmt::format("{:>24}", aux && k < aux->size() ? g15((*aux)[k]) : "");
    s += fmt::format("{:>24}", g15(it));
    if (x_space) s += fmt::format("{:>24}", g15(1.0 / (it * it)));
    fmt::print(out, "{}\n", s);
  };
  if (tr.prior) row("prior", std::nullopt, nullptr, *tr.prior);
  row("start", std::nullopt, nullptr, tr.iterates.front());
  for (std::size_t i = 1; i < tr.iterates.size(); ++i)
    row(fmt::format("iteration {}", i), tr.residuals[i - 1], &tr.aux[i - 1], tr.iterates[i]);
  if (tr.control) row("control step", tr.control->residual, &tr.control->aux, tr.control->iterate);
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const FlowConditions<double> fc(a.re, a.rr);
  SolverConfig<double> cfg;
  cfg.method = parse_method(a.method);
  cfg.start = parse_start(a.start);
  cfg.tolerance = a.tol ? *a.tol : default_tolerance();
  cfg.max_iterations = a.max_iter ? *a.max_iter : default_max_iterations();
  cfg.verify = a.verify;
  cfg.strict_domain = a.strict;
  if (a.stop_on == "lambda") cfg.stop_on = StopOn::Lambda;
  else if (a.stop_on != "working") throw UsageError("--stop-on must be working or lambda");
  if (!(cfg.tolerance >= 0.0)) throw UsageError("--tol must be non-negative");
  if (!fc.in_domain())
    fmt::print(err, "warning: Re={} rr={} is outside 4000 <= Re <= 1e8, 0 <= rr <= 0.05\n", a.re,
               a.rr);

  const IterationTrace<double> tr = solve(fc, cfg);
  if (a.trace || !tr.converged) print_trace(out, tr);
  fmt::print(out, "method      {}\nstart       {}\n", method_name(cfg.method), format_start(cfg.start));
  fmt::print(out, "iterations  {}\nconverged   {}\n", tr.iterations, tr.converged ? "yes" : "no");
  if (!tr.converged) {
    fmt::print(err, "error: {} did not converge within {} iterations\n", method_name(cfg.method),
               cfg.max_iterations);
    return kNonConvergence;
  }
  fmt::print(out, "lambda      {}\nx           {}\nresidual    {:.3e}\n", g15(tr.final_lambda.value),
             g15(tr.final_x.value), tr.final_residual);
  return kOk;
}

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  if (!has_table(a.id)) {
    std::string ids;
    for (const auto& id : table_ids()) ids += (ids.empty() ? "" : ", ") + id;
    throw UsageError(fmt::format("unknown table '{}' (available: {})", a.id, ids));
  }
  const TableReport r = replay_table(a.id);
  out << format_report(r, !a.failures_only);
  if (!r.passed()) {
    for (const auto& f : r.failures()) fmt::print(err, "mismatch: {}\n", f);
    return kTableMismatch;
  }
  return kOk;
}

std::filesystem::path summary_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  if (p.extension() == ".csv") return p.replace_extension(".json");
  return std::filesystem::path(p.string() + ".json");
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
  DomainSpec spec;
  if (a.domain == "approx") spec = DomainSpec::approximation_domain();
  else if (a.domain != "default") throw UsageError("--domain must be default or approx");
  if (a.re_min) spec.re_min = *a.re_min;
  if (a.re_max) spec.re_max = *a.re_max;
  if (a.rr_min) spec.rr_min = *a.rr_min;
  if (a.rr_max) spec.rr_max = *a.rr_max;
  if (a.sobol && !a.grid.empty()) throw UsageError("--grid and --sobol are exclusive");
  if (a.sobol) {
    spec.sampler = SobolSampler{*a.sobol};
  } else if (!a.grid.empty()) {
    static const std::regex re(R"((\d+)x(\d+))");
    std::smatch m;
    if (!std::regex_match(a.grid, m, re)) throw UsageError("--grid must look like 256x256");
    spec.sampler = GridSampler{std::stoi(m[1]), std::stoi(m[2])};
  }
  spec.validate();

  SweepOptions opt;
  opt.jobs = a.jobs;
  opt.max_iterations = a.max_iter ? *a.max_iter : default_max_iterations();
  SweepResult r;
  std::string what;
  if (a.map == "iteration") {
    const Method m = parse_method(a.method);
    const StartStrategy s = parse_start(a.start);
    const double tol = a.tol ? *a.tol : default_tolerance();
    r = iteration_map(m, s, spec, tol, opt);
    what = fmt::format("iteration map {} / {}", method_name(m), format_start(s));
  } else if (a.map == "error") {
    const Estimator e = parse_estimator(a.estimator);
    r = error_map(e, spec, opt);
    what = fmt::format("error map {}", format_estimator(e));
  } else {
    throw UsageError("--map must be iteration or error");
  }
  write_csv(a.out, r);
  const auto json = summary_path(a.out);
  write_summary(json, r);
  fmt::print(out, "{}: {} points, max {} at Re={} rr={}, mean {}, non-converged {}\n", what,
             r.size(), g15(r.max_value), g15(r.argmax().re), g15(r.argmax().rr),
             r.n_nonconverged < r.size() ? g15(mean_metric(r)) : "n/a", r.n_nonconverged);
  fmt::print(out, "wrote {} and {}\n", a.out, json.string());
  return kOk;
}

int cmd_approx(const ApproxArgs& a, std::ostream& out, std::ostream&) {
  const FlowConditions<double> fc(a.re, a.rr);
  if (a.level < 0 || a.level > 2) throw UsageError("--level must be 0, 1 or 2");
  const ApproxVariant v = parse_approx_variant(a.variant);
  const ApproxBundle<double> k = approx_bundle(fc, a.level, v);
  fmt::print(out, "A           {}\nB           {}\nC           {}\nnabla       {}\n", g15(k.a),
             g15(k.b), g15(k.c), g15(k.nabla));
  for (std::size_t i = 0; i < k.x_stage.size(); ++i)
    fmt::print(out, "x[{}]        {}\n", i, g15(k.x_stage[i]));
  const double lam = lambda_from_x(TransmissionFactor<double>{k.x_stage.back()}).value;
  fmt::print(out, "lambda      {}\n", g15(lam));
  const double ref = solve_reference(fc).value;
  fmt::print(out, "reference   {}\nerror_pct   {:.6g}\n", g15(ref), 100.0 * std::abs(lam - ref) / ref);
  return kOk;
}

int cmd_lambertw(const LambertArgs& a, std::ostream& out, std::ostream& err) {
  if (a.y && a.re) throw UsageError("give either --y or --re, not both");
  if (!a.y && !a.re) throw UsageError("one of --y or --re is required");
  if (a.rr && !a.re) throw UsageError("--rr needs --re");
  const double y = a.y ? *a.y : lambert_argument(*a.re);
  WConfig<double> cfg;
  cfg.method = parse_w_method(a.method);
  cfg.z0 = a.z0;
  cfg.tolerance = a.tol;
  const WTrace<double> w = lambert_w(y, cfg);
  if (a.trace || !w.converged)
    for (std::size_t i = 0; i < w.iterates.size(); ++i)
      fmt::print(out, "iteration {:<4} z = {}\n", i, g15(w.iterates[i]));
  fmt::print(out, "y           {}\nmethod      {}\niterations  {}\nconverged   {}\n", g15(y),
             w_method_name(cfg.method), w.iterations, w.converged ? "yes" : "no");
  if (!w.converged) {
    fmt::print(err, "error: Lambert W iteration did not converge\n");
    return kNonConvergence;
  }
  fmt::print(out, "W           {}\n", g15(w.value));
  if (a.re && a.rr) {
    const FlowConditions<double> fc(*a.re, *a.rr);
    const double lam = colebrook_via_lambert(fc, cfg).value;
    const double ref = solve_reference(fc).value;
    const AlphaResult<double> al = alpha_argument(fc);
    fmt::print(out, "lambda      {}\nreference   {}\nerror_pct   {:.6g}\n", g15(lam), g15(ref),
               100.0 * std::abs(lam - ref) / ref);
    fmt::print(out, "alpha       {}\noverflow    {}\n", g15(al.alpha), al.overflow ? "yes" : "no");
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colebrook friction-factor solvers, approximations and domain sweeps", "colebrook"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve the Colebrook equation at one (Re, rr)");
  solve->add_option("--re", sa.re, "Reynolds number")->required();
  solve->add_option("--rr", sa.rr, "Relative roughness")->required();
  solve->add_option("--method", sa.method,
                    "fixed-point|newton-lambda|newton-x|halley-x|schroder-x|h3-x|secant-lambda|"
                    "secant-x|3pt")
      ->capture_default_str();
  solve->add_option("--start", sa.start,
                    "traditional|fixed-newton|fixed-halley|fixed-3pt|approx|value:<x0>")
      ->capture_default_str();
  solve->add_option("--tol", sa.tol, "Step tolerance (default 1e-8 or $COLEBROOK_TOL)");
  solve->add_option("--max-iter", sa.max_iter, "Iteration cap (default 100 or $COLEBROOK_MAXITER)");
  solve->add_option("--stop-on", sa.stop_on, "working|lambda")->capture_default_str();
  solve->add_flag("--trace", sa.trace, "Print every iteration");
  solve->add_flag("--verify", sa.verify, "Keep the stopping step as an uncounted control step");
  solve->add_flag("--strict", sa.strict, "Reject conditions outside the validated domain");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Replay a published convergence table");
  table->add_option("id", ta.id, "1..10 or 3pt")->required();
  table->add_flag("--failures-only", ta.failures_only, "Only print mismatches and errata");

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "Iteration-count or relative-error map over a domain");
  sweep->add_option("--map", wa.map, "iteration|error")->required();
  sweep->add_option("--method", wa.method, "Solver for iteration maps")->capture_default_str();
  sweep->add_option("--start", wa.start, "Start for iteration maps")->capture_default_str();
  sweep->add_option("--estimator", wa.estimator,
                    "approx:0|1|2[:variant]|traditional|approx-seeded|lambert")
      ->capture_default_str();
  sweep->add_option("--grid", wa.grid, "Log grid NxM (default 256x256)");
  sweep->add_option("--sobol", wa.sobol, "Sobol sample size");
  sweep->add_option("--domain", wa.domain, "default|approx")->capture_default_str();
  sweep->add_option("--re-min", wa.re_min);
  sweep->add_option("--re-max", wa.re_max);
  sweep->add_option("--rr-min", wa.rr_min);
  sweep->add_option("--rr-max", wa.rr_max);
  sweep->add_option("--tol", wa.tol, "Step tolerance for iteration maps");
  sweep->add_option("--max-iter", wa.max_iter, "Iteration cap for iteration maps");
  sweep->add_option("--jobs", wa.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--out", wa.out, "CSV output path; the JSON summary goes next to it")
      ->required();

  ApproxArgs aa;
  auto* approx = app.add_subcommand("approx", "Explicit approximation with its intermediates");
  approx->add_option("--re", aa.re)->required();
  approx->add_option("--rr", aa.rr)->required();
  approx->add_option("--level", aa.level, "Fixed-point accelerations: 0, 1 or 2")
      ->capture_default_str();
  approx->add_option("--variant", aa.variant, "halley|schroder|h3")->capture_default_str();

  LambertArgs la;
  auto* lw = app.add_subcommand("lambertw", "Lambert W by Newton, Halley or Schroder iteration");
  lw->add_option("--y", la.y, "Argument of W");
  lw->add_option("--re", la.re, "Use y = Re ln10 / 5.02");
  lw->add_option("--rr", la.rr, "With --re, also solve for lambda through W");
  lw->add_option("--method", la.method, "newton|halley|schroder")->capture_default_str();
  lw->add_option("--z0", la.z0, "Initial iterate")->capture_default_str();
  lw->add_option("--tol", la.tol, "Relative bound on |z e^z - y| / y")->capture_default_str();
  lw->add_flag("--trace", la.trace, "Print every iterate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(sa, out, err);
    if (*table) return cmd_table(ta, out, err);
    if (*sweep) return cmd_sweep(wa, out, err);
    if (*approx) return cmd_approx(aa, out, err);
    if (*lw) return cmd_lambertw(la, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const SingularStepError& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}

}  // namespace colebrook::cli
