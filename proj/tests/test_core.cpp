#include <cmath>
#include <limits>

#include "doctest.h"

#include "colebrook/core.hpp"
#include "colebrook/solvers.hpp"
#include "support.hpp"

using namespace colebrook;
using testing_support::random_points;
using testing_support::rel;

namespace {

const FlowConditions<double> kCase1{5e6, 2.5e-5};
const FlowConditions<double> kCase2{3e4, 9e-3};

// Natural length scale of the x-space log term: u = (2.51/Re) * (x + s0).
double log_scale(double x, const FlowConditions<double>& fc) {
  return x + fc.rr * fc.re / (kRoughDivisor<double> * kViscous<double>);
}

template <class F>
double central(F f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("flow conditions validate and flag the domain") {
  CHECK(FlowConditions<double>(4000, 0).in_domain());
  CHECK(FlowConditions<double>(1e8, 0.05).in_domain());
  CHECK_FALSE(FlowConditions<double>(2000, 1e-3).in_domain());
  CHECK_FALSE(FlowConditions<double>(1e5, 0.2).in_domain());
  CHECK_THROWS_AS(FlowConditions<double>(0.0, 1e-3), DomainError);
  CHECK_THROWS_AS(FlowConditions<double>(1e5, -1e-3), DomainError);
  CHECK_THROWS_AS(FlowConditions<double>(std::nan(""), 1e-3), DomainError);
}

TEST_CASE("lambda and x conversions") {
  CHECK(x_from_lambda(FrictionFactor<double>{1.0}).value == 1.0);
  CHECK(lambda_from_x(TransmissionFactor<double>{1.0}).value == 1.0);
  CHECK(x_from_lambda(FrictionFactor<double>{0.010279663295529}).value ==
        doctest::Approx(9.863034564455800).epsilon(1e-13));
  CHECK(x_from_lambda(FrictionFactor<double>{0.038630738574792}).value ==
        doctest::Approx(5.087840573092420).epsilon(1e-13));
  CHECK(lambda_from_x(TransmissionFactor<double>{9.863034564455800}).value ==
        doctest::Approx(0.010279663295529).epsilon(1e-13));
  CHECK(std::abs(lambda_from_x(TransmissionFactor<double>{6.445695939}).value - 0.024069128768719) <
        5e-16);
  CHECK_THROWS_AS(x_from_lambda(FrictionFactor<double>{0.0}), DomainError);
  CHECK_THROWS_AS(lambda_from_x(TransmissionFactor<double>{-1.0}), DomainError);
}

TEST_CASE("round trip lambda -> x -> lambda") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> d(0.005, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const double lam = d(gen);
    const double back = lambda_from_x(x_from_lambda(FrictionFactor<double>{lam})).value;
    CHECK(rel(back, lam) <= 1e-15);
  }
}

TEST_CASE("lambda-space residual and derivative at printed points") {
  CHECK(std::abs(residual_lambda(0.009352225155363, kCase1) - 0.495092014) <= 1e-9);
  CHECK(std::abs(residual_lambda(0.010279663295529, kCase1)) <= 1e-9);
  CHECK(std::abs(residual_lambda(0.024069128765101, kCase2) - 1.391712394) <= 1e-9);
  CHECK(std::abs(residual_lambda_prime(0.009352225155363, kCase1) - -573.0134258) <= 1e-7);
  CHECK(std::abs(residual_lambda_prime(0.010279663295529, kCase1) - -497.6016898) <= 1e-7);
  CHECK_THROWS_AS(residual_lambda(0.0, kCase1), DomainError);
  CHECK_THROWS_AS(residual_lambda_prime(0.0, kCase1), DomainError);
}

TEST_CASE("lambda-space guard accepts negative iterates") {
  CHECK(residual_lambda(-0.01, kCase1) == residual_lambda(0.01, kCase1));
}

TEST_CASE("x-space residual and derivatives at printed points") {
  CHECK(std::abs(residual_x(6.445695939, kCase1) - -3.554956085) <= 1e-9);
  CHECK(std::abs(residual_x(10.34052343, kCase1) - 0.495092014) <= 1e-9);
  CHECK(std::abs(residual_x(7.990256504, kCase2) - 2.973246188) <= 1e-9);
  CHECK(std::abs(residual_x_prime(6.445695939, kCase1) - 1.043635910) <= 1e-9);
  CHECK(std::abs(residual_x_prime(10.34052343, kCase1) - 1.036495031) <= 1e-9);
  CHECK(std::abs(residual_x_prime(7.990256504, kCase2) - 1.023435376) <= 1e-9);
  CHECK(std::abs(residual_x_second(9.863034564455800, kCase1) - -0.001596821) <= 1e-9);
  CHECK(std::abs(residual_x_second(7.990256504, kCase2) - -0.000632309) <= 1e-9);
  CHECK(std::abs(residual_x_third(9.863034564455800, kCase1) - 0.000136933) <= 1e-9);
  CHECK(std::abs(residual_x_third(5.087840573092420, kCase2) - 0.000043578) <= 1e-9);
  const FlowConditions<double> smooth{1e5, 0.0};
  CHECK_THROWS_AS(residual_x(-1.0, smooth), DomainError);
  CHECK_THROWS_AS(residual_x_prime(0.0, smooth), DomainError);
}

TEST_CASE("derivatives match central differences of their predecessor") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> factor(0.5, 1.5);
  for (const auto& fc : random_points(1000, 99)) {
    const double x = factor(gen) * x_from_lambda(solve_reference(fc)).value;
    // Step relative to the scale on which the log term varies; far beyond
    // the rounding floor of f' = 1 + small.
    const double h = 1e-3 * log_scale(x, fc);
    const auto f = [&](double v) { return residual_x(v, fc); };
    const auto f1 = [&](double v) { return residual_x_prime(v, fc); };
    const auto f2 = [&](double v) { return residual_x_second(v, fc); };
    const double h0 = 1e-6 * x;
    CHECK(rel(central(f, x, h0), residual_x_prime(x, fc)) <= 1e-5);
    CHECK(rel(central(f1, x, h), residual_x_second(x, fc)) <= 1e-5);
    CHECK(rel(central(f2, x, h), residual_x_third(x, fc)) <= 1e-4);
  }
}

TEST_CASE("lambda derivative matches a central difference") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> factor(0.5, 1.5);
  for (const auto& fc : random_points(1000, 5)) {
    const double lam = factor(gen) * solve_reference(fc).value;
    const auto f = [&](double v) { return residual_lambda(v, fc); };
    CHECK(rel(central(f, lam, 1e-7 * lam), residual_lambda_prime(lam, fc)) <= 1e-5);
  }
}

TEST_CASE("sign structure and monotonicity") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> xs(0.5, 30.0);
  for (const auto& fc : random_points(2000, 21)) {
    const double x = xs(gen);
    CHECK(residual_x_prime(x, fc) > 1.0);
    CHECK(residual_x_second(x, fc) < 0.0);
    CHECK(residual_x_third(x, fc) > 0.0);
    CHECK(residual_x(x + 1e-3, fc) > residual_x(x, fc));
    CHECK(residual_lambda_prime(1.0 / (x * x), fc) < 0.0);
  }
}

TEST_CASE("rational and analytic derivative forms agree") {
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> xs(2.0, 20.0);
  for (const auto& fc : random_points(10000, 31)) {
    const double x = xs(gen);
    CHECK(rel(symbolic::x_prime(x, fc), residual_x_prime(x, fc)) <= 1e-14);
    CHECK(rel(symbolic::x_second(x, fc), residual_x_second(x, fc)) <= 1e-14);
    CHECK(rel(symbolic::x_third(x, fc), residual_x_third(x, fc)) <= 1e-14);
  }
}

TEST_CASE("roots agree between the lambda and x residuals") {
  for (const auto& fc : random_points(1000, 41)) {
    const double lam = solve_reference(fc).value;
    CHECK(std::abs(residual_x(x_from_lambda(FrictionFactor<double>{lam}).value, fc)) <= 1e-10);
    CHECK(std::abs(residual_lambda(lam, fc)) <= 1e-10);
  }
}

TEST_CASE("long double instantiation") {
  const FlowConditions<long double> fc{5e6L, 2.5e-5L};
  CHECK(std::abs(static_cast<double>(residual_x(9.8630345644558001L, fc))) < 1e-14);
}

}
