#pragma once

// Initial iterates for the Colebrook solvers.

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "colebrook/approx.hpp"
#include "colebrook/core.hpp"

namespace colebrook {

// "Centre of gravity" constants, stored as published.
inline constexpr double kFixedNewtonX = 6.44569593948452;
inline constexpr double kFixedNewtonLambda = 0.024069128765100981;
inline constexpr double kFixedHalleyX = 7.990256504;
inline constexpr double kFixedThreePointX = 7.273124147;

enum class StartKind { Traditional, FixedNewton, FixedHalley, FixedThreePoint, ApproxSeeded, UserValue };

struct StartStrategy {
  StartKind kind = StartKind::Traditional;
  double x0 = 0.0;  // UserValue only

  static StartStrategy traditional() { return {StartKind::Traditional, 0.0}; }
  static StartStrategy fixed_newton() { return {StartKind::FixedNewton, 0.0}; }
  static StartStrategy fixed_halley() { return {StartKind::FixedHalley, 0.0}; }
  static StartStrategy fixed_three_point() { return {StartKind::FixedThreePoint, 0.0}; }
  static StartStrategy approx_seeded() { return {StartKind::ApproxSeeded, 0.0}; }
  static StartStrategy value(double x0);

  friend bool operator==(const StartStrategy&, const StartStrategy&) = default;
};

// Identifiers: traditional | fixed-newton | fixed-halley | fixed-3pt | approx | value:<x0>
StartStrategy parse_start(std::string_view text);
std::string format_start(const StartStrategy& s);

// x0 = -2 log10(rr/3.7), the fully rough limit.
template <std::floating_point T>
TransmissionFactor<T> start_traditional(const FlowConditions<T>& fc) {
  if (!(fc.rr > T(0)))
    throw DomainError("traditional start needs rr > 0");
  return {-T(2) * log10_ln(fc.rr / kRoughDivisor<T>)};
}

template <std::floating_point T = double>
TransmissionFactor<T> start_fixed(StartKind kind) {
  switch (kind) {
    case StartKind::FixedNewton: return {T(kFixedNewtonX)};
    case StartKind::FixedHalley: return {T(kFixedHalleyX)};
    case StartKind::FixedThreePoint: return {T(kFixedThreePointX)};
    default: throw UsageError("start_fixed needs one of the fixed strategies");
  }
}

template <std::floating_point T>
TransmissionFactor<T> start_approx_seeded(const FlowConditions<T>& fc) {
  return approx_x0(fc, ApproxVariant::Halley);
}

// Resolves any strategy to an x-space start. rr = 0 turns the traditional
// start into the fixed Newton constant.
template <std::floating_point T>
TransmissionFactor<T> start_x(const StartStrategy& s, const FlowConditions<T>& fc) {
  switch (s.kind) {
    case StartKind::Traditional:
      if (fc.rr == T(0)) return start_fixed<T>(StartKind::FixedNewton);
      return start_traditional(fc);
    case StartKind::ApproxSeeded:
      return start_approx_seeded(fc);
    case StartKind::UserValue:
      if (!(s.x0 > 0.0)) throw UsageError("user start value must be positive");
      return {T(s.x0)};
    default:
      return start_fixed<T>(s.kind);
  }
}

}  // namespace colebrook
