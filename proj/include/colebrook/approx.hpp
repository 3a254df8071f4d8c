#pragma once

// Explicit approximations of the Colebrook equation: a one-shot estimate
// built from a second- or third-order Householder step about x ~ 8 with
// f'(x) ~ 1, optionally refined by fixed-point ("Colebrook acceleration")
// substitutions.
//
// Every function takes an optional log10 callable so that tests can count
// logarithm evaluations.

#include <cmath>
#include <concepts>
#include <string_view>
#include <vector>

#include "colebrook/core.hpp"

namespace colebrook {

template <std::floating_point T>
struct Log10 {
  T operator()(T v) const { return log10_ln(v); }
};

// Literal constants of the approximation.
template <std::floating_point T>
inline constexpr T kNablaOffset = T(74205.5);
template <std::floating_point T>
inline constexpr T kCurvatureNumerator = T(74914381.46);
template <std::floating_point T>
inline constexpr T kJerkNumerator = T(1391459721232.67);

enum class ApproxVariant { Halley, Schroder, Householder3 };

std::string_view approx_variant_name(ApproxVariant v);
ApproxVariant parse_approx_variant(std::string_view name);

template <std::floating_point T = double>
struct ApproxBundle {
  T a{};
  T b{};
  T c{};
  T nabla{};
  // x after the one-shot estimate, then after each acceleration.
  std::vector<T> x_stage;
};

template <std::floating_point T, class L = Log10<T>>
ApproxBundle<T> approx_intermediates(const FlowConditions<T>& fc, L log10 = {}) {
  ApproxBundle<T> out;
  out.a = T(8) + T(2) * log10(T(16) / fc.re + fc.rr / kRoughDivisor<T>);
  out.nabla = kNablaOffset<T> + T(1000) * fc.rr * fc.re;
  out.b = -kCurvatureNumerator<T> / (out.nabla * out.nabla);
  out.c = kJerkNumerator<T> / (out.nabla * out.nabla * out.nabla);
  return out;
}

template <std::floating_point T>
T approx_x0_from(const ApproxBundle<T>& k, ApproxVariant variant) {
  const T a = k.a, b = k.b, c = k.c;
  T den{};
  switch (variant) {
    case ApproxVariant::Halley:
      den = T(2) - a * b;
      if (den == T(0)) throw SingularStepError("Halley approximation denominator vanished");
      return T(8) - T(2) * a / den;
    case ApproxVariant::Schroder:
      return T(8) - a - a * a * b / T(2);
    case ApproxVariant::Householder3:
      den = T(6) - T(6) * a * b + a * a * c;
      if (den == T(0)) throw SingularStepError("3rd-order approximation denominator vanished");
      return T(8) - (T(6) * a - T(3) * a * a * b) / den;
  }
  throw UsageError("unknown approximation variant");
}

template <std::floating_point T, class L = Log10<T>>
TransmissionFactor<T> approx_x0(const FlowConditions<T>& fc, ApproxVariant variant, L log10 = {}) {
  return {approx_x0_from(approx_intermediates(fc, log10), variant)};
}

// Applies x <- -2 log10(2.51 x/Re + rr/3.7) `stages` times.
template <std::floating_point T, class L = Log10<T>>
TransmissionFactor<T> approx_accelerate(const FlowConditions<T>& fc, T x, int stages,
                                        L log10 = {}) {
  if (stages < 0) throw UsageError("acceleration stages must be non-negative");
  if (!(x > T(0))) throw DomainError("acceleration needs x > 0");
  for (int i = 0; i < stages; ++i) {
    const T u = kViscous<T> * x / fc.re + fc.rr / kRoughDivisor<T>;
    if (!(u > T(0))) throw DomainError("acceleration log argument is not positive");
    x = -T(2) * log10(u);
  }
  return {x};
}

// One-shot estimate followed by `level` accelerations, with every stage kept.
template <std::floating_point T, class L = Log10<T>>
ApproxBundle<T> approx_bundle(const FlowConditions<T>& fc, int level,
                              ApproxVariant variant = ApproxVariant::Halley, L log10 = {}) {
  if (level < 0) throw UsageError("approximation level must be non-negative");
  ApproxBundle<T> k = approx_intermediates(fc, log10);
  T x = approx_x0_from(k, variant);
  k.x_stage.push_back(x);
  for (int i = 0; i < level; ++i) {
    x = approx_accelerate(fc, x, 1, log10).value;
    k.x_stage.push_back(x);
  }
  return k;
}

template <std::floating_point T, class L = Log10<T>>
FrictionFactor<T> approx_friction(const FlowConditions<T>& fc, int level,
                                  ApproxVariant variant = ApproxVariant::Halley, L log10 = {}) {
  if (level < 0 || level > 2) throw UsageError("approximation level must be 0, 1 or 2");
  const ApproxBundle<T> k = approx_bundle(fc, level, variant, log10);
  return lambda_from_x(TransmissionFactor<T>{k.x_stage.back()});
}

}  // namespace colebrook
