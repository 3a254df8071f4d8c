#pragma once

// Colebrook residuals in friction-factor (lambda) and transmission-factor
// (x = 1/sqrt(lambda)) form, with their analytic derivatives.
//
//   f(lambda) = 1/sqrt|lambda| + 2 log10(2.51/(Re sqrt|lambda|) + rr/3.7)
//   f(x)      = x + 2 log10(2.51 x/Re + rr/3.7)
//
// Every function here is pure and templated on the scalar type.

#include <cmath>
#include <concepts>
#include <numbers>

#include <fmt/format.h>

#include "colebrook/errors.hpp"

namespace colebrook {

template <std::floating_point T>
inline constexpr T kLn10 = std::numbers::ln10_v<T>;

// Literal constants of the Colebrook equation.
template <std::floating_point T>
inline constexpr T kViscous = T(2.51);
template <std::floating_point T>
inline constexpr T kRoughDivisor = T(3.7);

// Validated applicability domain.
inline constexpr double kReMin = 4000.0;
inline constexpr double kReMax = 1e8;
inline constexpr double kRrMax = 0.05;

// log10 through the natural log and one shared ln(10) constant.
template <std::floating_point T>
T log10_ln(T v) {
  using std::log;
  return log(v) / kLn10<T>;
}

template <std::floating_point T = double>
struct FlowConditions {
  T re;
  T rr;

  // Accepts values outside the validated domain; see in_domain().
  FlowConditions(T reynolds, T roughness) : re(reynolds), rr(roughness) {
    if (!std::isfinite(re) || !std::isfinite(rr) || re <= T(0) || rr < T(0))
      throw DomainError(
          fmt::format("flow conditions need finite Re > 0 and rr >= 0 (got Re={}, rr={})",
                      static_cast<double>(re), static_cast<double>(rr)));
  }

  bool in_domain() const {
    return re >= T(kReMin) && re <= T(kReMax) && rr >= T(0) && rr <= T(kRrMax);
  }

  friend bool operator==(const FlowConditions&, const FlowConditions&) = default;
};

template <std::floating_point T = double>
struct FrictionFactor {
  T value;
};

template <std::floating_point T = double>
struct TransmissionFactor {
  T value;
};

template <std::floating_point T>
TransmissionFactor<T> x_from_lambda(FrictionFactor<T> lam) {
  using std::sqrt;
  if (!(lam.value > T(0)))
    throw DomainError("friction factor must be positive");
  return {T(1) / sqrt(lam.value)};
}

template <std::floating_point T>
FrictionFactor<T> lambda_from_x(TransmissionFactor<T> x) {
  if (!(x.value > T(0)))
    throw DomainError("transmission factor must be positive");
  return {T(1) / (x.value * x.value)};
}

namespace detail {

// 2.51 x/Re + rr/3.7, the log argument of the x-space residual.
template <std::floating_point T>
T x_log_argument(T x, const FlowConditions<T>& fc) {
  const T u = kViscous<T> * x / fc.re + fc.rr / kRoughDivisor<T>;
  if (!(u > T(0)))
    throw DomainError(fmt::format("log argument 2.51*x/Re + rr/3.7 is not positive (x={})",
                                  static_cast<double>(x)));
  return u;
}

template <std::floating_point T>
T inv_sqrt_abs(T lam) {
  using std::abs;
  using std::sqrt;
  if (lam == T(0))
    throw DomainError("Colebrook residual is singular at lambda = 0");
  return T(1) / sqrt(abs(lam));
}

}  // namespace detail

template <std::floating_point T>
T residual_lambda(T lam, const FlowConditions<T>& fc) {
  const T s = detail::inv_sqrt_abs(lam);
  return s + T(2) * log10_ln(kViscous<T> * s / fc.re + fc.rr / kRoughDivisor<T>);
}

// Derivative with the |lambda| guard applied as written (no sign factor), so
// negative iterates keep a negative slope.
template <std::floating_point T>
T residual_lambda_prime(T lam, const FlowConditions<T>& fc) {
  const T s = detail::inv_sqrt_abs(lam);
  const T u = kViscous<T> * s / fc.re + fc.rr / kRoughDivisor<T>;
  return -T(0.5) * s * s * s * (T(1) + T(2) * kViscous<T> / (kLn10<T> * fc.re * u));
}

template <std::floating_point T>
T residual_x(T x, const FlowConditions<T>& fc) {
  return x + T(2) * log10_ln(detail::x_log_argument(x, fc));
}

template <std::floating_point T>
T residual_x_prime(T x, const FlowConditions<T>& fc) {
  const T u = detail::x_log_argument(x, fc);
  return T(1) + T(2) * (kViscous<T> / (fc.re * kLn10<T>)) / u;
}

template <std::floating_point T>
T residual_x_second(T x, const FlowConditions<T>& fc) {
  const T u = detail::x_log_argument(x, fc);
  const T a = kViscous<T> / fc.re;
  return -T(2) * a * a / (kLn10<T> * u * u);
}

template <std::floating_point T>
T residual_x_third(T x, const FlowConditions<T>& fc) {
  const T u = detail::x_log_argument(x, fc);
  const T a = kViscous<T> / fc.re;
  return T(4) * a * a * a / (kLn10<T> * u * u * u);
}

// Integer-coefficient rational forms of the derivatives (9287 = 2.51*3700).
// Kept as an independent cross-check of the analytic forms above.
namespace symbolic {

template <std::floating_point T>
T x_prime(T x, const FlowConditions<T>& fc) {
  const T d = T(9287) * x + T(1000) * fc.rr * fc.re;
  return (T(9287) * kLn10<T> * x + T(1000) * kLn10<T> * fc.rr * fc.re + T(18574)) /
         (kLn10<T> * d);
}

template <std::floating_point T>
T x_second(T x, const FlowConditions<T>& fc) {
  const T d = T(9287) * x + T(1000) * fc.rr * fc.re;
  return T(-172496738) / (kLn10<T> * d * d);
}

template <std::floating_point T>
T x_third(T x, const FlowConditions<T>& fc) {
  const T d = T(9287) * x + T(1000) * fc.rr * fc.re;
  return T(3203954411612) / (kLn10<T> * d * d * d);
}

}  // namespace symbolic

}  // namespace colebrook
