#include <array>
#include <bit>
#include <cstdint>

#include "colebrook/sweep.hpp"

namespace colebrook {

namespace {

constexpr int kBits = 32;

// Direction numbers scaled to 32 bits. Dimension 1 is the van der Corput
// sequence; dimension 2 uses the primitive polynomial x + 1 with m1 = 1.
constexpr std::array<std::array<std::uint32_t, kBits>, 2> make_directions() {
  std::array<std::array<std::uint32_t, kBits>, 2> v{};
  for (int k = 0; k < kBits; ++k) v[0][k] = std::uint32_t{1} << (kBits - 1 - k);
  v[1][0] = std::uint32_t{1} << (kBits - 1);
  for (int k = 1; k < kBits; ++k) v[1][k] = v[1][k - 1] ^ (v[1][k - 1] >> 1);
  return v;
}

constexpr auto kDirections = make_directions();

}  // namespace

UnitPoints sobol_2d(std::size_t n) {
  if (n == 0) throw UsageError("sobol_2d needs n >= 1");
  if (n >= (std::size_t{1} << kBits)) throw UsageError("sobol_2d supports fewer than 2^32 points");
  UnitPoints out(static_cast<Eigen::Index>(n), 2);
  std::uint32_t a = 0, b = 0;
  constexpr double scale = 1.0 / 4294967296.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Point i+1 in Gray-code order flips the bit of the lowest zero of i.
    const int c = std::countr_one(static_cast<std::uint32_t>(i));
    a ^= kDirections[0][c];
    b ^= kDirections[1][c];
    out(static_cast<Eigen::Index>(i), 0) = a * scale;
    out(static_cast<Eigen::Index>(i), 1) = b * scale;
  }
  return out;
}

}  // namespace colebrook
