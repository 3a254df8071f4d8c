#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "colebrook/core.hpp"

namespace testing_support {

// Log-uniform random points over Re in [4000, 1e8], rr in [1e-7, 0.05].
inline std::vector<colebrook::FlowConditions<double>> random_points(std::size_t n,
                                                                    std::uint32_t seed = 12345) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> lre(std::log10(4000.0), 8.0);
  std::uniform_real_distribution<double> lrr(-7.0, std::log10(0.05));
  std::vector<colebrook::FlowConditions<double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(std::pow(10.0, lre(gen)), std::pow(10.0, lrr(gen)));
  return out;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
