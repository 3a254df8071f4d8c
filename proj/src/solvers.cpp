#include "colebrook/solvers.hpp"

#include <fmt/format.h>

namespace colebrook {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::FixedPoint: return "fixed-point";
    case Method::NewtonLambda: return "newton-lambda";
    case Method::NewtonX: return "newton-x";
    case Method::HalleyX: return "halley-x";
    case Method::SchroderX: return "schroder-x";
    case Method::Householder3X: return "h3-x";
    case Method::SecantLambda: return "secant-lambda";
    case Method::SecantX: return "secant-x";
    case Method::ThreePointX: return "3pt";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (name == method_name(m)) return m;
  if (name == "fp") return Method::FixedPoint;
  if (name == "newton") return Method::NewtonX;
  if (name == "halley") return Method::HalleyX;
  if (name == "schroder") return Method::SchroderX;
  if (name == "h3" || name == "householder3") return Method::Householder3X;
  if (name == "secant") return Method::SecantX;
  if (name == "three-point" || name == "3pt-x") return Method::ThreePointX;
  throw UsageError(fmt::format(
      "unknown method '{}' (fixed-point, newton-lambda, newton-x, halley-x, schroder-x, h3-x, "
      "secant-lambda, secant-x, 3pt)",
      name));
}

Space method_space(Method m) {
  return m == Method::NewtonLambda || m == Method::SecantLambda ? Space::Lambda : Space::X;
}

}  // namespace colebrook
