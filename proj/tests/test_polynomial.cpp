#include "qtrack/polynomial.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qtrack/errors.hpp"

using namespace qtrack;

namespace {

// Sorts roots so test expectations don't depend on eigensolver ordering.
std::vector<std::complex<double>> sorted_roots(const Polynomial& p) {
  auto r = roots(p);
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return r;
}

}  // namespace

TEST_CASE("polynomial degree and coefficient access") {
  const Polynomial p{2.0, 3.0, 1.0};  // 2 + 3s + s^2
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == 2.0);
  CHECK(p.coeff(1) == 3.0);
  CHECK(p.coeff(2) == 1.0);
  CHECK(p.coeff(3) == 0.0);  // beyond the stored degree
  CHECK(p.leading() == 1.0);

  SUBCASE("trailing zero coefficients are trimmed") {
    const Polynomial q{1.0, 0.0, 0.0};
    CHECK(q.degree() == 0);
  }
  SUBCASE("the zero polynomial is the empty list") {
    CHECK(Polynomial{}.is_zero());
    CHECK(Polynomial{}.degree() == -1);
    CHECK(Polynomial{0.0, 0.0}.is_zero());
  }
}

TEST_CASE("polynomial multiplication") {
  // (1 + s)(2 + s) = 2 + 3s + s^2
  const Polynomial a{1.0, 1.0};
  const Polynomial b{2.0, 1.0};
  CHECK(a * b == Polynomial{2.0, 3.0, 1.0});

  SUBCASE("multiplying by zero annihilates") {
    CHECK((a * Polynomial{}).is_zero());
  }
  SUBCASE("multiplying by s shifts coefficients exactly") {
    const Polynomial s{0.0, 1.0};
    CHECK(a * s == Polynomial{0.0, 1.0, 1.0});
  }
}

TEST_CASE("polynomial product evaluation commutes with multiplication") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  std::uniform_real_distribution<double> point(-3.0, 3.0);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> ca(4), cb(5);
    for (double& c : ca) c = coeff(rng);
    for (double& c : cb) c = coeff(rng);
    const Polynomial a(ca), b(cb);
    const Polynomial ab = a * b;

    const std::complex<double> s(point(rng), point(rng));
    const std::complex<double> direct = ab.eval(s);
    const std::complex<double> split = a.eval(s) * b.eval(s);
    CHECK(std::abs(direct - split) <=
          1e-10 * (1.0 + std::abs(split)));
  }
}

TEST_CASE("polynomial derivative") {
  // d/ds (2 + 3s + s^2) = 3 + 2s
  CHECK(Polynomial{2.0, 3.0, 1.0}.derivative() == Polynomial{3.0, 2.0});
  CHECK(Polynomial{5.0}.derivative().is_zero());
}

TEST_CASE("roots of simple factored forms") {
  SUBCASE("(s+2)(s+3) = 6 + 5s + s^2 has roots -2, -3") {
    const auto r = sorted_roots(Polynomial{6.0, 5.0, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0].real() == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(r[0].imag() == doctest::Approx(0.0));
    CHECK(r[1].real() == doctest::Approx(-2.0).epsilon(1e-12));
  }

  SUBCASE("s^2 + (60 pi)^2 has roots +/- j 60 pi") {
    const double w = 60.0 * std::numbers::pi;
    const auto r = sorted_roots(Polynomial{w * w, 0.0, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] - std::complex<double>(0.0, -w)) <= 1e-9 * w);
    CHECK(std::abs(r[1] - std::complex<double>(0.0, w)) <= 1e-9 * w);
  }

  SUBCASE("zero constant terms become exact origin roots") {
    // s^2 (s + 4): the two origin roots come out exactly 0.
    const auto r = sorted_roots(Polynomial{0.0, 0.0, 4.0, 1.0});
    REQUIRE(r.size() == 3);
    CHECK(r[0].real() == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(r[1] == std::complex<double>(0.0, 0.0));
    CHECK(r[2] == std::complex<double>(0.0, 0.0));
  }

  SUBCASE("a degree-0 polynomial has no roots") {
    CHECK(roots(Polynomial{7.0}).empty());
  }

  SUBCASE("the zero polynomial is rejected") {
    CHECK_THROWS_AS(roots(Polynomial{}), ZeroPolynomial);
  }
}

TEST_CASE("roots of random polynomials evaluate to small residuals") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);

  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> c(7);  // degree 6
    for (double& v : c) v = coeff(rng);
    if (std::abs(c.back()) < 0.5) c.back() = 1.0;
    const Polynomial p(c);

    double max_coeff = 0.0;
    for (double v : c) max_coeff = std::max(max_coeff, std::abs(v));

    for (const auto& root : roots(p)) {
      // Residual budget scales with the coefficients and the root magnitude.
      const double growth = std::pow(1.0 + std::abs(root), p.degree());
      CHECK(std::abs(p.eval(root)) <= 1e-9 * (1.0 + max_coeff) * growth);
    }
  }
}

TEST_CASE("from_roots reconstructs coefficients") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> coeff(-4.0, 4.0);

  for (int trial = 0; trial < 15; ++trial) {
    std::vector<double> c(9);  // degree 8
    for (double& v : c) v = coeff(rng);
    if (std::abs(c.back()) < 0.5) c.back() = 2.0;
    const Polynomial p(c);

    const auto r = roots(p);
    const Polynomial rebuilt = from_roots(r, p.leading());
    REQUIRE(rebuilt.degree() == p.degree());
    double max_coeff = 0.0;
    for (double v : c) max_coeff = std::max(max_coeff, std::abs(v));
    for (int k = 0; k <= p.degree(); ++k)
      CHECK(rebuilt.coeff(k) == doctest::Approx(p.coeff(k)).epsilon(1e-7).scale(max_coeff));
  }
}

TEST_CASE("polynomial long division") {
  SUBCASE("exact division leaves no remainder") {
    // (2 + 3s + s^2) / (1 + s) = (2 + s)
    const auto [q, r] = divmod(Polynomial{2.0, 3.0, 1.0}, Polynomial{1.0, 1.0});
    CHECK(q == Polynomial{2.0, 1.0});
    CHECK(r.is_zero());
  }
  SUBCASE("remainder has degree below the divisor") {
    // s^3 / (s^2 + 1) = s with remainder -s
    const auto [q, r] = divmod(Polynomial{0.0, 0.0, 0.0, 1.0}, Polynomial{1.0, 0.0, 1.0});
    CHECK(q == Polynomial{0.0, 1.0});
    CHECK(r == Polynomial{0.0, -1.0});
  }
  SUBCASE("numerator of lower degree passes through") {
    const auto [q, r] = divmod(Polynomial{1.0, 1.0}, Polynomial{1.0, 0.0, 1.0});
    CHECK(q.is_zero());
    CHECK(r == Polynomial{1.0, 1.0});
  }
  SUBCASE("division by zero polynomial is rejected") {
    CHECK_THROWS_AS(divmod(Polynomial{1.0}, Polynomial{}), ZeroPolynomial);
  }
}

TEST_CASE("evaluation on the imaginary axis matches plain evaluation") {
  std::mt19937 rng(90125);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::uniform_real_distribution<double> freq(0.01, 100.0);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(6);
    for (double& v : c) v = coeff(rng);
    const Polynomial p(c);
    const double w = freq(rng);
    const auto plain = p.eval(std::complex<double>(0.0, w));
    const auto fast = p.eval_jomega(w);
    CHECK(std::abs(plain - fast) <= 1e-12 * (1.0 + std::abs(plain)));
  }
}
