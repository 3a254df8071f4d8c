#include "colebrook/starting_points.hpp"

#include <charconv>
#include <string>

#include <fmt/format.h>

namespace colebrook {

std::string_view approx_variant_name(ApproxVariant v) {
  switch (v) {
    case ApproxVariant::Halley: return "halley";
    case ApproxVariant::Schroder: return "schroder";
    case ApproxVariant::Householder3: return "h3";
  }
  return "?";
}

ApproxVariant parse_approx_variant(std::string_view name) {
  if (name == "halley") return ApproxVariant::Halley;
  if (name == "schroder" || name == "schröder") return ApproxVariant::Schroder;
  if (name == "h3" || name == "householder3" || name == "3rd") return ApproxVariant::Householder3;
  throw UsageError(fmt::format("unknown approximation variant '{}'", name));
}

StartStrategy StartStrategy::value(double x0) {
  if (!(x0 > 0.0) || !std::isfinite(x0))
    throw UsageError(fmt::format("start value must be a positive number (got {})", x0));
  return {StartKind::UserValue, x0};
}

StartStrategy parse_start(std::string_view text) {
  if (text == "traditional") return StartStrategy::traditional();
  if (text == "fixed-newton") return StartStrategy::fixed_newton();
  if (text == "fixed-halley") return StartStrategy::fixed_halley();
  if (text == "fixed-3pt") return StartStrategy::fixed_three_point();
  if (text == "approx") return StartStrategy::approx_seeded();
  constexpr std::string_view prefix = "value:";
  if (text.starts_with(prefix)) {
    const std::string num(text.substr(prefix.size()));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size())
      throw UsageError(fmt::format("cannot parse start value '{}'", num));
    return StartStrategy::value(v);
  }
  throw UsageError(fmt::format(
      "unknown start '{}' (traditional, fixed-newton, fixed-halley, fixed-3pt, approx, value:<x0>)",
      text));
}

std::string format_start(const StartStrategy& s) {
  switch (s.kind) {
    case StartKind::Traditional: return "traditional";
    case StartKind::FixedNewton: return "fixed-newton";
    case StartKind::FixedHalley: return "fixed-halley";
    case StartKind::FixedThreePoint: return "fixed-3pt";
    case StartKind::ApproxSeeded: return "approx";
    case StartKind::UserValue: return fmt::format("value:{}", s.x0);
  }
  return "?";
}

}  // namespace colebrook
