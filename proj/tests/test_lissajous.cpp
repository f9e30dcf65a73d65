#include "qtrack/lissajous.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qtrack/errors.hpp"

using namespace qtrack;

TEST_CASE("scan spec validation") {
  CHECK_NOTHROW(LissajousSpec{}.validate());
  CHECK_THROWS_AS((LissajousSpec{0.0, 0.0, 0.0, 1.0, 1, 1.0}.validate()), Error);
  CHECK_THROWS_AS((LissajousSpec{0.0, 0.0, 1.0, -1.0, 1, 1.0}.validate()), Error);
  CHECK_THROWS_AS((LissajousSpec{0.0, 0.0, 1.0, 1.0, 0, 1.0}.validate()), Error);
  CHECK_THROWS_AS((LissajousSpec{0.0, 0.0, 1.0, 1.0, 1, 0.0}.validate()), Error);
}

TEST_CASE("frequency plan for a 30-cycle scan at 1 Hz") {
  const LissajousSpec spec{0.0, 0.0, 1e-6, 1e-6, 30, 1.0};
  const FrequencyPlan plan = plan_frequencies(spec);

  CHECK(plan.omega_x == doctest::Approx(60.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(plan.omega_y == doctest::Approx(59.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(plan.ratio_num == 60);
  CHECK(plan.ratio_den == 59);
  CHECK(plan.frame_period == 1.0);
  CHECK(plan.closure_period == 2.0);

  // the integer ratio is reproduced by the realized frequencies
  CHECK(std::abs(plan.omega_x * static_cast<double>(plan.ratio_den) -
                 plan.omega_y * static_cast<double>(plan.ratio_num)) < 1e-9);
}

TEST_CASE("frequency plan scales with frame rate and cycle count") {
  const LissajousSpec spec{0.0, 0.0, 1e-6, 1e-6, 7, 2.5};
  const FrequencyPlan plan = plan_frequencies(spec);
  CHECK(plan.omega_x == doctest::Approx(2.0 * std::numbers::pi * 7 * 2.5));
  CHECK(plan.omega_y == doctest::Approx(std::numbers::pi * 13 * 2.5));
  CHECK(plan.ratio_num == 14);
  CHECK(plan.ratio_den == 13);
  CHECK(plan.frame_period == doctest::Approx(0.4));
  CHECK(plan.closure_period == doctest::Approx(0.8));
}

TEST_CASE("scan resolution") {
  SUBCASE("square scan: 1 um amplitudes at N = 30 give ~74 nm line pitch") {
    const LissajousSpec spec{0.0, 0.0, 1e-6, 1e-6, 30, 1.0};
    const double h = scan_resolution(spec);
    CHECK(h == doctest::Approx(std::numbers::pi * 1e-6 / (30.0 * std::sqrt(2.0)))
                   .epsilon(1e-14));
    CHECK(h == doctest::Approx(7.4048e-8).epsilon(1e-4));
  }
  SUBCASE("doubling N halves the pitch") {
    const LissajousSpec coarse{0.0, 0.0, 2e-6, 1e-6, 15, 1.0};
    LissajousSpec fine = coarse;
    fine.N = 30;
    CHECK(scan_resolution(fine) ==
          doctest::Approx(0.5 * scan_resolution(coarse)).epsilon(1e-14));
  }
  SUBCASE("pitch is symmetric in the two amplitudes") {
    const LissajousSpec a{0.0, 0.0, 3e-6, 1e-6, 10, 1.0};
    const LissajousSpec b{0.0, 0.0, 1e-6, 3e-6, 10, 1.0};
    CHECK(scan_resolution(a) ==
          doctest::Approx(scan_resolution(b)).epsilon(1e-14));
  }
}

TEST_CASE("cycle count needed for a target pitch") {
  SUBCASE("inverts the resolution formula") {
    CHECK(required_N(1e-6, 1e-6, 7.5e-8) == 30);   // just above the N=30 pitch
    CHECK(required_N(1e-6, 1e-6, 7.40e-8) == 31);  // just below it
    CHECK(required_N(1e-6, 1e-6, 1.0) == 1);
  }
  SUBCASE("an exactly attainable pitch is not overshot") {
    const double h30 = scan_resolution({0.0, 0.0, 1e-6, 1e-6, 30, 1.0});
    CHECK(required_N(1e-6, 1e-6, h30) == 30);
  }
  SUBCASE("result always satisfies the target, minimally") {
    std::mt19937 rng(607);
    std::uniform_real_distribution<double> amp(0.5e-6, 5e-6);
    std::uniform_real_distribution<double> pitch(1e-8, 1e-6);
    for (int i = 0; i < 200; ++i) {
      const double ax = amp(rng), ay = amp(rng), h = pitch(rng);
      const int n = required_N(ax, ay, h);
      CHECK(scan_resolution({0.0, 0.0, ax, ay, n, 1.0}) <= h);
      if (n > 1)
        CHECK(scan_resolution({0.0, 0.0, ax, ay, n - 1, 1.0}) > h);
    }
  }
  SUBCASE("degenerate arguments are rejected") {
    CHECK_THROWS_AS(required_N(0.0, 1e-6, 1e-8), Error);
    CHECK_THROWS_AS(required_N(1e-6, 1e-6, 0.0), Error);
  }
}

TEST_CASE("axis references trace the scan rectangle") {
  const LissajousSpec spec{2e-6, -1e-6, 1e-6, 0.5e-6, 30, 1.0};
  const auto [x, y] = axis_references(spec);
  const FrequencyPlan plan = plan_frequencies(spec);

  SUBCASE("both start at the rectangle corner offset") {
    CHECK(x.eval(0.0) == doctest::Approx(2e-6 + 1e-6).epsilon(1e-12));
    CHECK(y.eval(0.0) == doctest::Approx(-1e-6 + 0.5e-6).epsilon(1e-12));
  }
  SUBCASE("evaluation matches centre + amplitude * cos(omega t)") {
    for (double t : {0.0, 0.013, 0.27, 0.5, 0.77}) {
      CHECK(x.eval(t) ==
            doctest::Approx(2e-6 + 1e-6 * std::cos(plan.omega_x * t)).epsilon(1e-9));
      CHECK(y.eval(t) ==
            doctest::Approx(-1e-6 + 0.5e-6 * std::cos(plan.omega_y * t)).epsilon(1e-9));
    }
  }
  SUBCASE("each axis carries its own fundamental period") {
    CHECK(x.period() == doctest::Approx(2.0 * std::numbers::pi / plan.omega_x).epsilon(1e-15));
    CHECK(y.period() == doctest::Approx(2.0 * std::numbers::pi / plan.omega_y).epsilon(1e-15));
    // an integer number of x periods fits in one frame, y periods in two
    CHECK(plan.frame_period / x.period() == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(plan.closure_period / y.period() == doctest::Approx(59.0).epsilon(1e-12));
  }
  SUBCASE("consecutive frames mirror the slow axis") {
    for (double t : {0.0, 0.1, 0.37}) {
      const double about_centre = y.eval(t) - (-1e-6);
      CHECK(y.eval(t + plan.frame_period) - (-1e-6) ==
            doctest::Approx(-about_centre).scale(1e-6).epsilon(1e-9));
      // the fast axis simply repeats
      CHECK(x.eval(t + plan.frame_period) ==
            doctest::Approx(x.eval(t)).scale(1e-6).epsilon(1e-9));
    }
  }
  SUBCASE("the full pattern closes after two frames") {
    for (double t : {0.0, 0.05, 0.81, 1.3}) {
      CHECK(x.eval(t + plan.closure_period) ==
            doctest::Approx(x.eval(t)).scale(1e-6).epsilon(1e-9));
      CHECK(y.eval(t + plan.closure_period) ==
            doctest::Approx(y.eval(t)).scale(1e-6).epsilon(1e-9));
    }
  }
  SUBCASE("offsets ride on the constant term") {
    CHECK(x.delta0() == 1);
    CHECK(x.a0() == 2e-6);
    CHECK(y.delta0() == 1);
    CHECK(y.a0() == -1e-6);
  }
}
