#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "attractor/error.hpp"
#include "attractor/geometry.hpp"
#include "oracles.hpp"

using namespace attractor;
using std::numbers::pi;

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
  // half-integer recurrence against the general Gamma function
  for (int n = 1; n <= 12; ++n) {
    CHECK(unit_ball_volume(n) == doctest::Approx(std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(unit_ball_volume(0), ConfigError);
}

TEST_CASE("volume of boxes and balls") {
  CHECK(volume(Domain::box({1.0, 1.0})) == 1.0);
  CHECK(volume(Domain::box({1.0, 2.0, 3.0})) == 6.0);
  CHECK(volume(Domain::ball(2, 1.0)) == doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("moment of inertia closed forms") {
  CHECK(moment_of_inertia(Domain::box({1.0, 1.0})) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(moment_of_inertia(Domain::ball(2, 1.0)) == doctest::Approx(pi / 2.0).epsilon(1e-15));

  // 1-D interval of length 2: direct integral of x^2 over (-1, 1)
  double integral = 0.0;
  const int cells = 200000;
  for (int i = 0; i < cells; ++i) {
    const double x = -1.0 + (i + 0.5) * 2.0 / cells;
    integral += x * x * 2.0 / cells;
  }
  CHECK(moment_of_inertia(Domain::box({2.0})) == doctest::Approx(integral).epsilon(1e-9));
  CHECK(moment_of_inertia(Domain::box({2.0})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("inertia is translation invariant and minimized at the centroid") {
  const double a = 1.3, b = 0.7;
  const double exact = moment_of_inertia(Domain::box({a, b}));
  // Box placed away from the origin; the closed form knows nothing about placement.
  const double ox = 2.5, oy = -4.0;
  const double at_centroid = oracle::box_inertia_quadrature(ox, oy, a, b, ox + a / 2, oy + b / 2, 2000);
  CHECK(std::abs(at_centroid - exact) / exact < 1e-6);
  const double off_center = oracle::box_inertia_quadrature(ox, oy, a, b, ox + a / 2 + 0.1, oy + b / 2, 400);
  CHECK(off_center > at_centroid);
}

TEST_CASE("ball lower bound on inertia") {
  CHECK(inertia_ball_lower_bound(2, pi) == doctest::Approx(pi / 2.0).epsilon(1e-14));
  CHECK(inertia_ball_lower_bound(2, 1.0) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
  CHECK(inertia_ball_lower_bound(2, 1.0) <= 1.0 / 6.0);
  CHECK(inertia_ball_lower_bound(1, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(inertia_ball_lower_bound(2, 0.0), ConfigError);
}

TEST_CASE("every box has at least the inertia of the ball of equal volume") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> log_side(std::log(0.05), std::log(20.0));
  for (int trial = 0; trial < 500; ++trial) {
    const int n = dim(rng);
    std::vector<double> sides(static_cast<std::size_t>(n));
    for (auto& s : sides) s = std::exp(log_side(rng));
    const Domain d = Domain::box(sides);
    CHECK(moment_of_inertia(d) >= inertia_ball_lower_bound(n, volume(d)) * (1.0 - 1e-14));
  }
}

TEST_CASE("scaling covariance") {
  const Domain d = Domain::box({0.5, 1.5, 2.0});
  const double s = 1.7;
  const Domain ds = d.scaled(s);
  CHECK(volume(ds) == doctest::Approx(volume(d) * std::pow(s, 3)).epsilon(1e-14));
  CHECK(moment_of_inertia(ds) == doctest::Approx(moment_of_inertia(d) * std::pow(s, 5)).epsilon(1e-14));
  const Domain b = Domain::ball(3, 0.8).scaled(s);
  CHECK(b.radius() == doctest::Approx(0.8 * s));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(Domain::box({}), ConfigError);
  CHECK_THROWS_AS(Domain::box({1.0, -2.0}), ConfigError);
  CHECK_THROWS_AS(Domain::box({1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(Domain::ball(0, 1.0), ConfigError);
  CHECK_THROWS_AS(Domain::ball(2, 0.0), ConfigError);
  CHECK(Domain::ball(3, 2.0).sides().empty());
}
