#include "colebrook/lambert_w.hpp"

namespace colebrook {

std::string_view w_method_name(WMethod m) {
  switch (m) {
    case WMethod::Newton: return "newton";
    case WMethod::Halley: return "halley";
    case WMethod::Schroder: return "schroder";
  }
  return "?";
}

WMethod parse_w_method(std::string_view name) {
  if (name == "newton") return WMethod::Newton;
  if (name == "halley") return WMethod::Halley;
  if (name == "schroder") return WMethod::Schroder;
  throw UsageError(fmt::format("unknown Lambert W method '{}' (newton, halley, schroder)", name));
}

}  // namespace colebrook
