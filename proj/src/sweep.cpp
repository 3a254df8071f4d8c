#include "colebrook/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <string>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "colebrook/lambert_w.hpp"

namespace colebrook {

namespace {

double log_lerp(double lo, double hi, double t) {
  if (t == 0.0) return lo;
  if (t == 1.0) return hi;
  return std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo)));
}

unsigned resolve_jobs(unsigned jobs, std::size_t n) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
}

// Evaluates fn(i) for i in [0, n) over contiguous chunks, one per worker.
// The first failure by point index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = resolve_jobs(jobs, n);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned w) {
    const std::size_t lo = n * w / jobs, hi = n * (w + 1) / jobs;
    try {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void aggregate(SweepResult& r) {
  r.max_value = -std::numeric_limits<double>::infinity();
  r.argmax_index = 0;
  r.n_nonconverged = 0;
  bool any = false;
  for (Eigen::Index i = 0; i < r.metric.size(); ++i) {
    const double m = r.metric(i);
    if (m == kNonConverged) {
      ++r.n_nonconverged;
      continue;
    }
    if (!any || m > r.max_value) {
      r.max_value = m;
      r.argmax_index = static_cast<std::size_t>(i);
      any = true;
    }
  }
  if (!any) r.max_value = kNonConverged;
}

}  // namespace

void DomainSpec::validate() const {
  if (!(re_min > 0.0) || !(re_max > re_min))
    throw UsageError(fmt::format("invalid Re range [{}, {}]", re_min, re_max));
  if (!(rr_min > 0.0) || !(rr_max > rr_min))
    throw UsageError(fmt::format("invalid rr range [{}, {}] (log scale needs rr_min > 0)", rr_min,
                                 rr_max));
  if (const auto* g = std::get_if<GridSampler>(&sampler)) {
    if (g->nx < 2 || g->ny < 2) throw UsageError("grid needs at least 2 points per axis");
  } else if (std::get<SobolSampler>(sampler).n < 2) {
    throw UsageError("Sobol sweep needs at least 2 points");
  }
}

std::size_t DomainSpec::size() const {
  if (const auto* g = std::get_if<GridSampler>(&sampler))
    return static_cast<std::size_t>(g->nx) * static_cast<std::size_t>(g->ny);
  return std::get<SobolSampler>(sampler).n;
}

std::vector<FlowConditions<double>> materialize(const DomainSpec& spec, const UnitPoints& unit) {
  std::vector<FlowConditions<double>> out;
  out.reserve(static_cast<std::size_t>(unit.rows()));
  for (Eigen::Index i = 0; i < unit.rows(); ++i)
    out.emplace_back(log_lerp(spec.re_min, spec.re_max, unit(i, 0)),
                     log_lerp(spec.rr_min, spec.rr_max, unit(i, 1)));
  return out;
}

std::vector<FlowConditions<double>> materialize(const DomainSpec& spec) {
  spec.validate();
  if (const auto* g = std::get_if<GridSampler>(&spec.sampler)) {
    UnitPoints unit(static_cast<Eigen::Index>(spec.size()), 2);
    Eigen::Index k = 0;
    for (int i = 0; i < g->nx; ++i)
      for (int j = 0; j < g->ny; ++j, ++k) {
        unit(k, 0) = i == g->nx - 1 ? 1.0 : static_cast<double>(i) / (g->nx - 1);
        unit(k, 1) = j == g->ny - 1 ? 1.0 : static_cast<double>(j) / (g->ny - 1);
      }
    return materialize(spec, unit);
  }
  return materialize(spec, sobol_2d(std::get<SobolSampler>(spec.sampler).n));
}

std::string_view metric_kind_name(MetricKind k) {
  return k == MetricKind::IterationCount ? "iteration_count" : "relative_error_pct";
}

Estimator parse_estimator(std::string_view text) {
  if (text == "traditional") return Estimator::traditional();
  if (text == "approx-seeded") return Estimator::approx_seeded();
  if (text == "lambert") return Estimator::lambert();
  if (text.starts_with("approx:")) {
    std::string_view rest = text.substr(7);
    ApproxVariant v = ApproxVariant::Halley;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
      v = parse_approx_variant(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    if (rest == "0" || rest == "1" || rest == "2") return Estimator::approx(rest[0] - '0', v);
  }
  throw UsageError(fmt::format(
      "unknown estimator '{}' (approx:0|1|2[:variant], traditional, approx-seeded, lambert)", text));
}

std::string format_estimator(const Estimator& e) {
  switch (e.kind) {
    case Estimator::Kind::ApproxLevel:
      if (e.variant == ApproxVariant::Halley) return fmt::format("approx:{}", e.level);
      return fmt::format("approx:{}:{}", e.level, approx_variant_name(e.variant));
    case Estimator::Kind::TraditionalStart: return "traditional";
    case Estimator::Kind::ApproxSeededStart: return "approx-seeded";
    case Estimator::Kind::LambertEq3: return "lambert";
  }
  return "?";
}

double estimate_lambda(const Estimator& e, const FlowConditions<double>& fc) {
  switch (e.kind) {
    case Estimator::Kind::ApproxLevel: return approx_friction(fc, e.level, e.variant).value;
    case Estimator::Kind::TraditionalStart:
      return lambda_from_x(start_x(StartStrategy::traditional(), fc)).value;
    case Estimator::Kind::ApproxSeededStart: return lambda_from_x(start_approx_seeded(fc)).value;
    case Estimator::Kind::LambertEq3: return colebrook_via_lambert(fc).value;
  }
  throw UsageError("unknown estimator");
}

SweepResult iteration_map(Method method, const StartStrategy& start, const DomainSpec& spec,
                          double tol, const SweepOptions& opt) {
  if (!(tol > 0.0)) throw UsageError("sweep tolerance must be positive");
  SweepResult r;
  r.metric_kind = MetricKind::IterationCount;
  r.points = materialize(spec);
  r.metric.resize(static_cast<Eigen::Index>(r.points.size()));
  SolverConfig<double> cfg;
  cfg.method = method;
  cfg.start = start;
  cfg.tolerance = tol;
  cfg.max_iterations = opt.max_iterations;
  parallel_for(r.points.size(), opt.jobs, [&](std::size_t i) {
    double m = kNonConverged;
    try {
      const IterationTrace<double> tr = solve(r.points[i], cfg);
      if (tr.converged) m = tr.iterations;
    } catch (const SingularStepError&) {
    } catch (const DomainError&) {
    }
    r.metric(static_cast<Eigen::Index>(i)) = m;
  });
  aggregate(r);
  return r;
}

SweepResult error_map(const Estimator& estimator, const DomainSpec& spec, const SweepOptions& opt) {
  if (estimator.kind == Estimator::Kind::ApproxLevel && (estimator.level < 0 || estimator.level > 2))
    throw UsageError("approximation level must be 0, 1 or 2");
  SweepResult r;
  r.metric_kind = MetricKind::RelativeErrorPct;
  r.points = materialize(spec);
  r.metric.resize(static_cast<Eigen::Index>(r.points.size()));
  parallel_for(r.points.size(), opt.jobs, [&](std::size_t i) {
    const FlowConditions<double>& fc = r.points[i];
    double ref = 0.0;
    try {
      ref = solve_reference(fc).value;
    } catch (const OracleError& e) {
      throw SweepError(fmt::format("point {} (Re={}, rr={}): {}", i, fc.re, fc.rr, e.what()));
    }
    double m = kNonConverged;
    try {
      m = 100.0 * std::abs(estimate_lambda(estimator, fc) - ref) / ref;
    } catch (const DomainError&) {
    } catch (const SingularStepError&) {
    }
    r.metric(static_cast<Eigen::Index>(i)) = m;
  });
  aggregate(r);
  return r;
}

double mean_metric(const SweepResult& r) {
  double sum = 0.0;
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < r.metric.size(); ++i)
    if (r.metric(i) != kNonConverged) {
      sum += r.metric(i);
      ++n;
    }
  if (n == 0) throw UsageError("no converged points to average");
  return sum / static_cast<double>(n);
}

double mean_iterations(const SweepResult& r) {
  if (r.metric_kind != MetricKind::IterationCount)
    throw UsageError("mean_iterations needs an iteration-count sweep");
  return mean_metric(r);
}

std::string summary_json(const SweepResult& r) {
  nlohmann::ordered_json j;
  j["metric_kind"] = metric_kind_name(r.metric_kind);
  j["n_points"] = r.size();
  j["max_value"] = r.max_value;
  j["argmax_re"] = r.size() ? r.argmax().re : 0.0;
  j["argmax_rr"] = r.size() ? r.argmax().rr : 0.0;
  j["mean"] = r.n_nonconverged < r.size() ? mean_metric(r) : 0.0;
  j["n_nonconverged"] = r.n_nonconverged;
  return j.dump(2) + "\n";
}

std::string csv_text(const SweepResult& r) {
  std::string out = "re,rr,metric\n";
  out.reserve(out.size() + r.size() * 72);
  for (std::size_t i = 0; i < r.size(); ++i)
    fmt::format_to(std::back_inserter(out), "{:.16e},{:.16e},{:.16e}\n", r.points[i].re,
                   r.points[i].rr, r.metric(static_cast<Eigen::Index>(i)));
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  f << text;
  f.flush();
  if (!f) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace

void write_csv(const std::filesystem::path& path, const SweepResult& r) {
  write_text(path, csv_text(r));
}

void write_summary(const std::filesystem::path& path, const SweepResult& r) {
  write_text(path, summary_json(r));
}

}  // namespace colebrook
