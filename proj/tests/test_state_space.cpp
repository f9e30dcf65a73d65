#include "qtrack/state_space.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qtrack/errors.hpp"
#include "qtrack/transfer_function.hpp"

using namespace qtrack;

TEST_CASE("realization of simple transfer functions") {
  SUBCASE("1/(s+1) gives the scalar system dx = -x + u, y = x") {
    const auto m = realize(TransferFunction(Polynomial{1.0}, Polynomial{1.0, 1.0}));
    REQUIRE(m.order() == 1);
    CHECK(m.A(0, 0) == -1.0);
    CHECK(m.B(0) == 1.0);
    CHECK(m.C(0) == 1.0);
    CHECK(m.D == 0.0);
  }
  SUBCASE("biproper (s+2)/(s+1) splits off a unit feedthrough") {
    const auto m = realize(TransferFunction(Polynomial{2.0, 1.0}, Polynomial{1.0, 1.0}));
    REQUIRE(m.order() == 1);
    CHECK(m.D == 1.0);
    CHECK(m.A(0, 0) == -1.0);
    // strictly proper part is 1/(s+1)
    CHECK(m.C(0) * m.B(0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("controllable canonical structure for a cubic denominator") {
    // H = (5 + 2 s)/(s^3 + 4 s^2 + 3 s + 7)
    const auto m = realize(TransferFunction(Polynomial{5.0, 2.0},
                                            Polynomial{7.0, 3.0, 4.0, 1.0}));
    REQUIRE(m.order() == 3);
    CHECK(m.A(0, 1) == 1.0);
    CHECK(m.A(1, 2) == 1.0);
    CHECK(m.A(0, 0) == 0.0);
    CHECK(m.A(2, 0) == -7.0);
    CHECK(m.A(2, 1) == -3.0);
    CHECK(m.A(2, 2) == -4.0);
    CHECK(m.B(2) == 1.0);
    CHECK(m.C(0) == 5.0);
    CHECK(m.C(1) == 2.0);
    CHECK(m.C(2) == 0.0);
    CHECK(m.D == 0.0);
  }
  SUBCASE("improper functions are rejected") {
    const TransferFunction improper(Polynomial{0.0, 0.0, 1.0}, Polynomial{1.0, 1.0});
    CHECK_THROWS_AS(realize(improper), ImproperTransferFunction);
  }
  SUBCASE("shared factors drop out before realization") {
    // (s+1)(s+2) over (s+1)(s^2+2s+5): the shared factor drops out and the
    // realized order is that of the reduced denominator.
    const Polynomial common{1.0, 1.0};
    const TransferFunction h(common * Polynomial{2.0, 1.0},
                             common * Polynomial{5.0, 2.0, 1.0});
    const auto m = realize(h);
    CHECK(m.order() == 2);
  }
}

TEST_CASE("realization reproduces the frequency response") {
  const TransferFunction h(Polynomial{10.0, 0.0, 3.0},
                           Polynomial{6.0, 11.0, 6.0, 1.0});
  const auto m = realize(h);
  REQUIRE(m.order() == 3);
  for (double w : {0.1, 0.7, 1.0, 3.3, 12.0, 80.0}) {
    const std::complex<double> from_tf = h.eval_jomega(w);
    const std::complex<double> from_ss = m.frequency_response(w);
    CHECK(std::abs(from_tf - from_ss) <= 1e-10 * (1.0 + std::abs(from_tf)));
  }
}

TEST_CASE("fourth-order integration converges at the expected rate") {
  // dx = -x, x(0) = 1: exact solution exp(-t).
  StateSpaceModel m;
  m.A = Eigen::MatrixXd::Constant(1, 1, -1.0);
  m.B = Eigen::VectorXd::Zero(1);
  m.C = Eigen::RowVectorXd::Ones(1);
  m.D = 0.0;

  auto integrate = [&](double dt) {
    StateVector x = Eigen::VectorXd::Ones(1);
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < steps; ++k)
      x = rk4_step(m, x, [](double) { return 0.0; }, k * dt, dt);
    return std::abs(x(0) - std::exp(-1.0));
  };

  const double err_coarse = integrate(1e-2);
  const double err_fine = integrate(5e-3);
  CHECK(err_coarse < 1e-9);
  // order-4 method: halving the step shrinks the error ~16x
  const double ratio = err_coarse / err_fine;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("undamped oscillator holds its energy over many periods") {
  // dx1 = x2, dx2 = -w^2 x1; energy E = w^2 x1^2 + x2^2 is conserved.
  const double w = 2.0 * std::numbers::pi;
  StateSpaceModel m;
  m.A = Eigen::MatrixXd::Zero(2, 2);
  m.A(0, 1) = 1.0;
  m.A(1, 0) = -w * w;
  m.B = Eigen::VectorXd::Zero(2);
  m.C = Eigen::RowVectorXd::Zero(2);
  m.C(0) = 1.0;
  m.D = 0.0;

  StateVector x(2);
  x << 1.0, 0.0;
  const double e0 = w * w * x(0) * x(0) + x(1) * x(1);
  const double dt = 1e-4;
  const int steps = 100000;  // 10 full periods
  for (int k = 0; k < steps; ++k)
    x = rk4_step(m, x, [](double) { return 0.0; }, k * dt, dt);
  const double e1 = w * w * x(0) * x(0) + x(1) * x(1);
  CHECK(std::abs(e1 - e0) / e0 < 1e-9);
  // after an integer number of periods the state returns to the start
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(x(1) == doctest::Approx(0.0).scale(w).epsilon(1e-7));
}

TEST_CASE("forced response matches the analytic particular solution") {
  // dx = -x + u with u = sin(t): steady state is (sin t - cos t)/2.
  StateSpaceModel m;
  m.A = Eigen::MatrixXd::Constant(1, 1, -1.0);
  m.B = Eigen::VectorXd::Ones(1);
  m.C = Eigen::RowVectorXd::Ones(1);
  m.D = 0.0;

  StateVector x = Eigen::VectorXd::Zero(1);
  const double dt = 1e-3;
  const int steps = 30000;  // 30 s: transient exp(-t) is long gone
  for (int k = 0; k < steps; ++k)
    x = rk4_step(m, x, [](double t) { return std::sin(t); }, k * dt, dt);
  const double t_end = steps * dt;
  const double want = 0.5 * (std::sin(t_end) - std::cos(t_end));
  CHECK(x(0) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("series cascade") {
  const TransferFunction c(Polynomial{3.0, 1.0}, Polynomial{8.0, 1.0});
  const TransferFunction g(Polynomial{2.0}, Polynomial{0.0, 5.0, 1.0});
  const auto mc = realize(c);
  const auto mg = realize(g);
  const auto cascade = series(mc, mg);

  SUBCASE("state count is the sum of the stages") {
    CHECK(cascade.order() == mc.order() + mg.order());
  }
  SUBCASE("frequency response is the product of the stages") {
    for (double w : {0.2, 1.0, 4.0, 25.0}) {
      const std::complex<double> want = c.eval_jomega(w) * g.eval_jomega(w);
      const std::complex<double> got = cascade.frequency_response(w);
      CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
  }
  SUBCASE("with a strictly proper tail the cascade has no feedthrough") {
    CHECK(cascade.D == 0.0);
  }
  SUBCASE("first-stage state block is preserved") {
    CHECK(cascade.A.topLeftCorner(1, 1)(0, 0) == mc.A(0, 0));
    // lower-left coupling carries stage-one output into stage two
    CHECK(cascade.A.bottomLeftCorner(2, 1).norm() > 0.0);
  }
}
