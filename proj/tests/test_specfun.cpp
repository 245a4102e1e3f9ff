#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "phav/specfun.hpp"

using namespace phav;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values below come from extended-precision evaluations (50-digit
// working precision), rounded to the nearest double.

TEST_CASE("log_gamma known values", "[specfun]") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK_THAT(log_gamma(2.0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(log_gamma(0.5), WithinRel(0.57236494292470008707, 1e-14));  // ln sqrt(pi)
  CHECK_THAT(log_gamma(10.0), WithinRel(12.801827480081469611, 1e-14));  // ln 9!
  CHECK_THAT(log_gamma(200.0), WithinRel(857.93366982585743682, 1e-12));
}

TEST_CASE("log_gamma recurrence", "[specfun]") {
  for (double x = 0.5; x <= 50.0; x += 0.5)
    CHECK_THAT(log_gamma(x + 1.0) - log_gamma(x) - std::log(x), WithinAbs(0.0, 1e-10));
}

TEST_CASE("log_gamma domain", "[specfun]") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("bessel_i0_scaled known values", "[specfun]") {
  CHECK(bessel_i0_scaled(0.0) == 1.0);
  const struct {
    double x, want;
  } table[] = {
      {0.5, 0.64503527044915006811},   {1.0, 0.4657596075936404365},
      {2.0, 0.30850832255367103953},   {5.0, 0.18354081260932835307},
      {10.0, 0.12783333716342860732},  {19.5, 0.090939432095156483305},
      {20.5, 0.088664429015745248147}, {50.0, 0.05656162664745419253},
      {100.0, 0.039944379299096682648}, {1000.0, 0.012617240455891256586},
      {10000.0, 0.0039894726746047321064},
  };
  for (const auto& row : table) CHECK_THAT(bessel_i0_scaled(row.x), WithinRel(row.want, 1e-13));
}

TEST_CASE("bessel_i0_scaled asymptotics and quadrature oracle", "[specfun]") {
  // large-x leading behavior 1/sqrt(2 pi x)
  CHECK_THAT(bessel_i0_scaled(100.0), WithinRel(1.0 / std::sqrt(2.0 * std::numbers::pi * 100.0), 5e-3));
  // direct phase average (1/2pi) Int exp(x (cos t - 1)) dt
  auto oracle = [](double x) {
    const int m = 4096;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += std::exp(x * (std::cos(2.0 * std::numbers::pi * j / m) - 1.0));
    return acc / m;
  };
  for (double x : {0.7, 3.0, 19.0, 21.0, 60.0}) CHECK_THAT(bessel_i0_scaled(x), WithinRel(oracle(x), 1e-12));
}

TEST_CASE("bessel_i0_scaled shape", "[specfun]") {
  double prev = 1.0;
  for (double x = 0.25; x <= 400.0; x *= 1.5) {
    const double v = bessel_i0_scaled(x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(bessel_i0_scaled(-0.1), std::domain_error);
  CHECK_THROWS_AS(bessel_i0_scaled(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("hyp1f2 basics", "[specfun]") {
  CHECK(hyp1f2(1.5, 0.5, 2.0, 0.0) == 1.0);
  CHECK(hyp1f2(-3.0, 1.0, 1.0, 0.0) == 1.0);
  CHECK_THAT(hyp1f2(1.5, 0.5, 2.0, 1.0), WithinRel(2.9685337500348054715, 1e-13));
  CHECK_THAT(hyp1f2(2.5, 1.5, 3.0, 4.0), WithinRel(5.435945206588949016, 1e-13));
}

TEST_CASE("hyp1f2 pochhammer cancellation", "[specfun]") {
  // a == b1 reduces the series to 0F1(; b2; z); with b2 = 1 that is I0(2 sqrt(z))
  for (double z : {0.25, 1.0, 4.0, 9.0}) {
    const double s = 2.0 * std::sqrt(z);
    const double i0 = bessel_i0_scaled(s) * std::exp(s);
    CHECK_THAT(hyp1f2(0.5, 0.5, 1.0, z), WithinRel(i0, 1e-12));
  }
}

TEST_CASE("hyp1f2 validation", "[specfun]") {
  CHECK_THROWS_AS(hyp1f2(1.0, 0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(hyp1f2(1.0, -2.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(hyp1f2(1.0, 1.0, -5.0, 1.0), std::domain_error);
  CHECK_NOTHROW(hyp1f2(1.0, -2.5, 1.0, 1.0));  // non-integer negatives are fine
  CHECK_THROWS_AS(hyp1f2(1.0, 1.0, 1.0, std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(hyp1f2(1.0, 1.0, 1.0, 1.0, {0.0, 500}), std::domain_error);
  CHECK_THROWS_AS(hyp1f2(1.0, 1.0, 1.0, 1.0, {1e-5, 500}), std::domain_error);
  CHECK_THROWS_AS(hyp1f2(1.0, 1.0, 1.0, 1.0, {1e-14, 49}), std::domain_error);
}

TEST_CASE("hyp1f2 convergence failure carries diagnostics", "[specfun]") {
  try {
    hyp1f2(1.0, 0.5, 1.0, 1e8, {1e-14, 50});
    FAIL("expected convergence_error");
  } catch (const convergence_error& e) {
    CHECK(e.terms() == 50);
    CHECK(std::isfinite(e.partial_sum()));
  }
}
