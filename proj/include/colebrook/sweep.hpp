#pragma once

// Domain sweeps over (Re, rr): iteration-count maps and relative-error maps.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "colebrook/approx.hpp"
#include "colebrook/core.hpp"
#include "colebrook/solvers.hpp"
#include "colebrook/starting_points.hpp"

namespace colebrook {

using UnitPoints = Eigen::Matrix<double, Eigen::Dynamic, 2>;

// First n points of the 2-D Sobol sequence (Joe-Kuo direction numbers,
// Gray-code order), skipping the origin.
UnitPoints sobol_2d(std::size_t n);

struct GridSampler {
  int nx = 256;
  int ny = 256;
};

struct SobolSampler {
  std::size_t n = 65536;
};

struct DomainSpec {
  double re_min = kReMin;
  double re_max = kReMax;
  double rr_min = 1e-7;
  double rr_max = kRrMax;
  std::variant<GridSampler, SobolSampler> sampler = GridSampler{};

  // Re in [4000, 1e8], rr in [1e-7, 0.05].
  static DomainSpec defaults() { return {}; }
  // Re in [1e4, 1e8], rr in [1e-6, 0.05]: the region the approximation
  // error figures are drawn over.
  static DomainSpec approximation_domain() {
    DomainSpec d;
    d.re_min = 1e4;
    d.rr_min = 1e-6;
    return d;
  }

  DomainSpec& with(GridSampler g) { sampler = g; return *this; }
  DomainSpec& with(SobolSampler s) { sampler = s; return *this; }

  void validate() const;
  std::size_t size() const;
};

// Log-uniform map of unit-square points onto (Re, rr).
std::vector<FlowConditions<double>> materialize(const DomainSpec& spec);
std::vector<FlowConditions<double>> materialize(const DomainSpec& spec, const UnitPoints& unit);

enum class MetricKind { IterationCount, RelativeErrorPct };

std::string_view metric_kind_name(MetricKind k);

// Metric of a point that failed to converge.
inline constexpr double kNonConverged = -1.0;

struct SweepResult {
  MetricKind metric_kind = MetricKind::IterationCount;
  std::vector<FlowConditions<double>> points;
  Eigen::ArrayXd metric;
  double max_value = 0.0;
  std::size_t argmax_index = 0;
  std::size_t n_nonconverged = 0;

  FlowConditions<double> argmax() const { return points.at(argmax_index); }
  std::size_t size() const { return points.size(); }
};

struct Estimator {
  enum class Kind { ApproxLevel, TraditionalStart, ApproxSeededStart, LambertEq3 };
  Kind kind = Kind::ApproxLevel;
  int level = 0;
  ApproxVariant variant = ApproxVariant::Halley;

  static Estimator approx(int level, ApproxVariant v = ApproxVariant::Halley) {
    return {Kind::ApproxLevel, level, v};
  }
  static Estimator traditional() { return {Kind::TraditionalStart, 0, ApproxVariant::Halley}; }
  static Estimator approx_seeded() { return {Kind::ApproxSeededStart, 0, ApproxVariant::Halley}; }
  static Estimator lambert() { return {Kind::LambertEq3, 0, ApproxVariant::Halley}; }
};

// approx:<0|1|2> | traditional | approx-seeded | lambert
Estimator parse_estimator(std::string_view text);
std::string format_estimator(const Estimator& e);

// Friction factor produced by the estimator (no iteration).
double estimate_lambda(const Estimator& e, const FlowConditions<double>& fc);

struct SweepOptions {
  unsigned jobs = 1;  // 0 = hardware concurrency
  int max_iterations = 100;
};

SweepResult iteration_map(Method method, const StartStrategy& start, const DomainSpec& spec,
                          double tol = 1e-8, const SweepOptions& opt = {});
SweepResult error_map(const Estimator& estimator, const DomainSpec& spec,
                      const SweepOptions& opt = {});

// Arithmetic mean over converged points.
double mean_iterations(const SweepResult& r);
// Mean of the metric over converged points, any kind.
double mean_metric(const SweepResult& r);

// {metric_kind, n_points, max_value, argmax_re, argmax_rr, mean, n_nonconverged}
std::string summary_json(const SweepResult& r);
void write_csv(const std::filesystem::path& path, const SweepResult& r);
void write_summary(const std::filesystem::path& path, const SweepResult& r);
std::string csv_text(const SweepResult& r);

}  // namespace colebrook
