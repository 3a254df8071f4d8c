#pragma once

// Principal-branch Lambert W by Newton, Halley and Schroder iteration on
// f(z) = z e^z - y, and the Colebrook friction factor through W.

#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "colebrook/core.hpp"

namespace colebrook {

enum class WMethod { Newton, Halley, Schroder };

std::string_view w_method_name(WMethod m);
WMethod parse_w_method(std::string_view name);

inline constexpr double kDefaultWStart = 15.0;

template <std::floating_point T = double>
struct WConfig {
  WMethod method = WMethod::Halley;
  T z0 = T(kDefaultWStart);
  // Relative bound on |z e^z - y| / y for a converged result.
  T tolerance = T(1e-12);
  // Absolute step bound; 0 iterates to machine precision.
  T step_tolerance = T(0);
  int max_iterations = 100;
  bool verify = false;
  // When set, a step also stops the iteration if the old and new iterates
  // agree to this many significant digits as printed.
  std::optional<int> stop_digits;
};

template <std::floating_point T = double>
struct WTrace {
  WMethod method = WMethod::Halley;
  T y{};
  std::vector<T> iterates;   // iterates[0] = z0
  std::vector<T> residuals;  // z e^z - y at iterates[i]
  std::optional<T> control;  // iterate produced by the uncounted control step
  bool converged = false;
  int iterations = 0;
  T value = std::numeric_limits<T>::quiet_NaN();
};

template <std::floating_point T>
WTrace<T> lambert_w(T y, const WConfig<T>& cfg = {}) {
  using std::abs;
  using std::exp;
  if (!(y > T(0)) || !std::isfinite(y)) throw DomainError("Lambert W needs finite y > 0");
  if (!(cfg.z0 > T(-1))) throw UsageError("Lambert W start must satisfy z0 > -1");
  if (cfg.max_iterations < 1) throw UsageError("max_iterations must be at least 1");
  if (!std::isfinite(exp(cfg.z0)))
    throw DomainError(fmt::format("e^z0 overflows for z0 = {}", static_cast<double>(cfg.z0)));

  WTrace<T> tr;
  tr.method = cfg.method;
  tr.y = y;
  tr.iterates.push_back(cfg.z0);
  bool stopped = false;
  const int budget = cfg.max_iterations + (cfg.verify ? 1 : 0);
  for (int k = 0; k < budget; ++k) {
    const T z = tr.iterates.back();
    const T ez = exp(z);
    const T f = z * ez - y;
    const T d1 = ez * (z + T(1));
    const T d2 = ez * (z + T(2));
    T next{};
    switch (cfg.method) {
      case WMethod::Newton: next = z - f / d1; break;
      case WMethod::Halley: next = z - f / (d1 - f * d2 / (T(2) * d1)); break;
      case WMethod::Schroder: next = z - f / d1 - d2 * f * f / (T(2) * d1 * d1 * d1); break;
    }
    if (!std::isfinite(next)) break;
    const T step = abs(next - z);
    const bool small =
        step <= cfg.step_tolerance || step <= T(4) * std::numeric_limits<T>::epsilon() * abs(next) ||
        (cfg.stop_digits &&
         fmt::format("{:.{}g}", static_cast<double>(z), *cfg.stop_digits) ==
             fmt::format("{:.{}g}", static_cast<double>(next), *cfg.stop_digits));
    if (small && cfg.verify) {
      tr.control = next;
      stopped = true;
      break;
    }
    if (k == cfg.max_iterations) break;
    tr.residuals.push_back(f);
    tr.iterates.push_back(next);
    if (small) {
      stopped = true;
      break;
    }
  }
  tr.iterations = static_cast<int>(tr.iterates.size()) - 1;
  const T last = tr.control ? *tr.control : tr.iterates.back();
  if (stopped && std::isfinite(last)) {
    const T identity = abs(last * exp(last) - y);
    tr.converged = identity <= cfg.tolerance * y;
  }
  if (tr.converged) tr.value = last;
  return tr;
}

// y = Re ln(10) / (2 * 2.51), the W argument of the Colebrook closed form.
template <std::floating_point T>
T lambert_argument(T re) {
  return re * kLn10<T> / (T(2) * kViscous<T>);
}

template <std::floating_point T>
FrictionFactor<T> colebrook_via_lambert(const FlowConditions<T>& fc, const WConfig<T>& cfg = {}) {
  const T y = lambert_argument(fc.re);
  const WTrace<T> w = lambert_w(y, cfg);
  if (!w.converged)
    throw DomainError(fmt::format("Lambert W did not converge for y = {}", static_cast<double>(y)));
  const T u = w.value / y + fc.rr / kRoughDivisor<T>;
  return lambda_from_x(TransmissionFactor<T>{-T(2) * log10_ln(u)});
}

template <std::floating_point T = double>
struct AlphaResult {
  T alpha{};
  bool overflow = false;
};

// ln of the largest finite value: e^alpha is unrepresentable above this.
template <std::floating_point T>
T alpha_overflow_threshold() {
  using std::log;
  return log(std::numeric_limits<T>::max());
}

template <std::floating_point T>
bool alpha_overflows(T alpha) {
  return alpha > alpha_overflow_threshold<T>();
}

// alpha = Re rr ln10 / (2*2.51*3.7) - ln(2*3.7 / (Re ln10))
template <std::floating_point T>
AlphaResult<T> alpha_argument(const FlowConditions<T>& fc) {
  using std::log;
  const T a = fc.re * fc.rr * kLn10<T> / (T(2) * kViscous<T> * kRoughDivisor<T>) -
              log(T(2) * kRoughDivisor<T> / (fc.re * kLn10<T>));
  return {a, alpha_overflows(a)};
}

}  // namespace colebrook
