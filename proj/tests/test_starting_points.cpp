#include <cmath>

#include "doctest.h"

#include "colebrook/solvers.hpp"
#include "colebrook/starting_points.hpp"
#include "support.hpp"

using namespace colebrook;
using testing_support::rel;

TEST_SUITE("starting_points") {

TEST_CASE("traditional start is the rough-pipe limit") {
  const auto a = start_traditional(FlowConditions<double>{5e6, 2.5e-5});
  CHECK(std::abs(a.value - 10.34052343) <= 5e-9);
  CHECK(std::abs(lambda_from_x(a).value - 0.009352225155363) <= 5e-16);
  const auto b = start_traditional(FlowConditions<double>{3e4, 9e-3});
  CHECK(std::abs(b.value - 5.227918429) <= 5e-9);
  CHECK(std::abs(lambda_from_x(b).value - 0.036588313752304) <= 5e-16);
  CHECK(start_traditional(FlowConditions<double>{1e5, 3.7}).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(start_traditional(FlowConditions<double>{1e5, 0.0}), DomainError);
}

TEST_CASE("traditional start does not depend on Re") {
  for (double re : {4000.0, 1e5, 3.3e6, 1e8})
    CHECK(start_traditional(FlowConditions<double>{re, 1e-4}).value ==
          start_traditional(FlowConditions<double>{1e6, 1e-4}).value);
}

TEST_CASE("fixed constants are the published ones") {
  CHECK(start_fixed(StartKind::FixedNewton).value == 6.44569593948452);
  CHECK(start_fixed(StartKind::FixedHalley).value == 7.990256504);
  CHECK(start_fixed(StartKind::FixedThreePoint).value == 7.273124147);
  CHECK(std::abs(lambda_from_x(start_fixed(StartKind::FixedNewton)).value - kFixedNewtonLambda) <
        1e-15);
  // x0 is printed to 9 decimals: |dlambda| <= 2 x^-3 * 5e-10.
  CHECK(std::abs(lambda_from_x(TransmissionFactor<double>{kFixedThreePointX}).value -
                 0.018904186734624) <= 2.0 * std::pow(kFixedThreePointX, -3) * 5e-10);
  CHECK_THROWS_AS(start_fixed(StartKind::Traditional), UsageError);
  CHECK_THROWS_AS(start_fixed(StartKind::ApproxSeeded), UsageError);
}

TEST_CASE("approximation-seeded start is within 10 percent") {
  for (auto fc : {FlowConditions<double>{5e6, 2.5e-5}, FlowConditions<double>{3e4, 9e-3},
                  FlowConditions<double>{4000, 0.05}}) {
    const double x_ref = x_from_lambda(solve_reference(fc)).value;
    CHECK(rel(start_approx_seeded(fc).value, x_ref) <= 0.10);
  }
}

TEST_CASE("user value must be positive") {
  CHECK(StartStrategy::value(3.0).x0 == 3.0);
  CHECK_THROWS_AS(StartStrategy::value(0.0), UsageError);
  CHECK_THROWS_AS(StartStrategy::value(-2.0), UsageError);
}

TEST_CASE("start resolution") {
  const FlowConditions<double> fc{5e6, 2.5e-5};
  CHECK(start_x(StartStrategy::traditional(), fc).value == start_traditional(fc).value);
  CHECK(start_x(StartStrategy::fixed_halley(), fc).value == kFixedHalleyX);
  CHECK(start_x(StartStrategy::value(9.5), fc).value == 9.5);
  CHECK(start_x(StartStrategy::approx_seeded(), fc).value == start_approx_seeded(fc).value);
  CHECK(start_x(StartStrategy::traditional(), FlowConditions<double>{1e5, 0.0}).value ==
        kFixedNewtonX);
}

TEST_CASE("identifiers parse and format") {
  for (const char* s : {"traditional", "fixed-newton", "fixed-halley", "fixed-3pt", "approx"})
    CHECK(format_start(parse_start(s)) == s);
  const StartStrategy v = parse_start("value:9.8630345644558");
  CHECK(v.kind == StartKind::UserValue);
  CHECK(v.x0 == 9.8630345644558);
  CHECK(parse_start(format_start(v)) == v);
  CHECK_THROWS_AS(parse_start("bogus"), UsageError);
  CHECK_THROWS_AS(parse_start("value:abc"), UsageError);
  CHECK_THROWS_AS(parse_start("value:-1"), UsageError);
}

}
