#include "qtrack/compensated.hpp"

#include <array>
#include <cmath>
#include <random>

#include "doctest.h"

using namespace qtrack;

TEST_CASE("error-free sum") {
  SUBCASE("captures the low-order bits a plain sum drops") {
    const auto s = two_sum(1.0, 1e-20);
    CHECK(s.value == 1.0);
    CHECK(s.err == 1e-20);
  }
  SUBCASE("exact when no rounding happens") {
    const auto s = two_sum(0.5, 0.25);
    CHECK(s.value == 0.75);
    CHECK(s.err == 0.0);
  }
  SUBCASE("value + err reconstructs the mathematical sum") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> big(1e10, 1e16);
    std::uniform_real_distribution<double> small(1e-10, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double a = big(rng);
      const double b = small(rng);
      const auto s = two_sum(a, b);
      // exact check in extended precision
      const long double exact = static_cast<long double>(a) + static_cast<long double>(b);
      CHECK(static_cast<long double>(s.value) + static_cast<long double>(s.err) == exact);
    }
  }
}

TEST_CASE("error-free product") {
  // (1 + 2^-27)(1 - 2^-27) = 1 - 2^-54: the residual is exactly the bit the
  // rounded product discards.
  const double eps27 = std::ldexp(1.0, -27);
  const auto p = two_prod(1.0 + eps27, 1.0 - eps27);
  CHECK(p.value == 1.0);
  CHECK(p.err == -std::ldexp(1.0, -54));
}

TEST_CASE("compensated polynomial evaluation") {
  SUBCASE("empty and constant polynomials") {
    CHECK(compensated_horner({}, 3.0) == 0.0);
    const std::array<double, 1> c{7.5};
    CHECK(compensated_horner(c, 123.0) == 7.5);
  }
  SUBCASE("benign polynomial matches direct evaluation") {
    const std::array<double, 4> c{2.0, -3.0, 0.5, 1.0};
    for (double x : {-2.0, 0.0, 0.3, 1.7}) {
      const double direct = 2.0 + x * (-3.0 + x * (0.5 + x * 1.0));
      CHECK(compensated_horner(c, x) == doctest::Approx(direct).epsilon(1e-15));
    }
  }
  SUBCASE("(x-1)^6 near its root keeps its digits") {
    // expanded coefficients cancel catastrophically at x = 1 + 2^-10, where
    // the true value is 2^-60
    const std::array<double, 7> c{1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0};
    const double x = 1.0 + std::ldexp(1.0, -10);
    const double want = std::ldexp(1.0, -60);
    const double got = compensated_horner(c, x);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("compensated two-term dot product") {
  SUBCASE("keeps the sign through near-total cancellation") {
    const double eps27 = std::ldexp(1.0, -27);
    // (1 + u)(1 - u) - 1 = -u^2 exactly
    const double r = compensated_dot2(1.0 + eps27, 1.0 - eps27, -1.0, 1.0);
    CHECK(r == -std::ldexp(1.0, -54));
  }
  SUBCASE("agrees with plain arithmetic when nothing cancels") {
    CHECK(compensated_dot2(3.0, 4.0, 5.0, 6.0) == 42.0);
  }
}
