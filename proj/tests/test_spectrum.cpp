#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "attractor/error.hpp"
#include "attractor/spectrum.hpp"
#include "oracles.hpp"

using namespace attractor;
using std::numbers::pi;

namespace {

const double kFixtureC = 1.0 / 24.0;  // test fixture for the Melas numerator, not Melas's constant
const double pi2 = pi * pi;

}  // namespace

TEST_CASE("unit square spectrum prefix") {
  const Domain sq = Domain::box({1.0, 1.0});
  const auto s1 = enumerate_eigenvalues(sq, 1);
  CHECK(s1.values[0] == doctest::Approx(2 * pi2).epsilon(1e-15));
  CHECK(s1.modes[0] == std::vector<int>{1, 1});

  const auto s4 = enumerate_eigenvalues(sq, 4);
  const auto brute = oracle::brute_force_box_spectrum({1.0, 1.0}, 10);
  for (int j = 0; j < 4; ++j) CHECK(s4.values[j] == doctest::Approx(brute[j]).epsilon(1e-15));
  CHECK(s4.partial_sum(4) == doctest::Approx(20 * pi2).epsilon(1e-14));
  // the 5 pi^2 double eigenvalue, tie broken lexicographically
  CHECK(s4.modes[1] == std::vector<int>{1, 2});
  CHECK(s4.modes[2] == std::vector<int>{2, 1});
}

TEST_CASE("unit interval spectrum") {
  const auto s = enumerate_eigenvalues(Domain::box({1.0}), 3);
  CHECK(s.values[0] == doctest::Approx(pi2).epsilon(1e-15));
  CHECK(s.values[1] == doctest::Approx(4 * pi2).epsilon(1e-15));
  CHECK(s.values[2] == doctest::Approx(9 * pi2).epsilon(1e-15));
}

TEST_CASE("enumeration rejects balls and m = 0") {
  CHECK_THROWS_AS(enumerate_eigenvalues(Domain::ball(2, 1.0), 3), ConfigError);
  CHECK_THROWS_AS(enumerate_eigenvalues(Domain::box({1.0}), 0), ConfigError);
}

TEST_CASE("enumerated prefix matches brute force inside a certified cutoff") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> side(0.3, 3.0);
  std::uniform_int_distribution<int> count(1, 2000);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = dim(rng);
    std::vector<double> sides(static_cast<std::size_t>(n));
    for (auto& s : sides) s = side(rng);
    const auto m = static_cast<std::size_t>(count(rng));
    const auto spec = enumerate_eigenvalues(Domain::box(sides), m);
    REQUIRE(spec.size() == m);

    // Any mode with some k_i > K has eigenvalue > pi^2 (K / max L)^2 > values[m-1].
    const double lmax = *std::max_element(sides.begin(), sides.end());
    const int K = static_cast<int>(std::ceil(lmax * std::sqrt(spec.values.back()) / pi)) + 1;
    REQUIRE(pi2 * (K / lmax) * (K / lmax) > spec.values.back());
    const auto brute = oracle::brute_force_box_spectrum(sides, K);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(spec.values[j] == doctest::Approx(brute[j]).epsilon(1e-13));
      CHECK(spec.values[j] == doctest::Approx(box_eigenvalue(Domain::box(sides), spec.modes[j])).epsilon(1e-15));
      if (j > 0) CHECK(spec.values[j] >= spec.values[j - 1]);
    }
  }
}

TEST_CASE("method constants") {
  const auto k2 = MethodConstants::make(2, kFixtureC, 1.0);
  CHECK(k2.C_n == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(k2.M_n == doctest::Approx(kFixtureC / 4).epsilon(1e-15));
  CHECK(MethodConstants::make(1, kFixtureC).C_n == doctest::Approx(pi2).epsilon(1e-15));
  CHECK(MethodConstants::c_upper_bound(2) == doctest::Approx(4.0).epsilon(1e-15));

  CHECK_THROWS_AS(MethodConstants::make(2, 0.0), ConfigError);
  CHECK_THROWS_AS(MethodConstants::make(2, 4.0), ConfigError);
  CHECK_THROWS_AS(MethodConstants::make(2, kFixtureC, -1.0), ConfigError);
  try {
    MethodConstants::make(3, 100.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(2π)² ω_n^{−4/n}") != std::string::npos);
  }
  CHECK_THROWS_AS(MethodConstants::make(2, kFixtureC).lieb_thirring(), ConfigError);
}

TEST_CASE("Li-Yau bound examples") {
  const auto k2 = MethodConstants::make(2, kFixtureC);
  CHECK(li_yau_lower_bound(2, 1.0, 4, k2) == doctest::Approx(32 * pi).epsilon(1e-14));
  CHECK(li_yau_lower_bound(2, 1.0, 4, k2) <= 20 * pi2);
  CHECK(li_yau_lower_bound(2, 1.0, 1, k2) == doctest::Approx(2 * pi).epsilon(1e-14));
  const auto k1 = MethodConstants::make(1, kFixtureC);
  CHECK(li_yau_lower_bound(1, 1.0, 1, k1) == doctest::Approx(pi2 / 3).epsilon(1e-14));
}

TEST_CASE("Melas bound examples") {
  const auto k2 = MethodConstants::make(2, kFixtureC);
  CHECK(melas_lower_bound(2, 1.0, 1.0 / 6, 4, k2) == doctest::Approx(32 * pi + 0.25).epsilon(1e-14));
  CHECK(melas_lower_bound(2, 1.0, 1.0 / 6, 1, k2) == doctest::Approx(2 * pi + 0.0625).epsilon(1e-14));
  const auto tiny = MethodConstants::make(2, 1e-300);
  CHECK(melas_lower_bound(2, 1.0, 1.0 / 6, 4, tiny) == doctest::Approx(li_yau_lower_bound(2, 1.0, 4, tiny)).epsilon(1e-15));
}

TEST_CASE("doubled-sum bound examples") {
  const auto k2 = MethodConstants::make(2, kFixtureC);
  CHECK(doubled_sum_lower_bound(2, 1.0, 1.0 / 6, 2, k2) == doctest::Approx(4 * pi + 0.125).epsilon(1e-14));
  CHECK(doubled_sum_lower_bound(2, 1.0, 1.0 / 6, 2, k2) <= 4 * pi2);
  CHECK(doubled_sum_lower_bound(2, 1.0, 1.0 / 6, 1, k2) == doctest::Approx(pi + 0.0625).epsilon(1e-14));
  const auto tiny = MethodConstants::make(3, 1e-300);
  CHECK(doubled_sum_lower_bound(3, 2.0, 1.0, 7, tiny) ==
        doctest::Approx(std::pow(2.0, -2.0 / 3) * li_yau_lower_bound(3, 2.0, 7, tiny)).epsilon(1e-15));
}

TEST_CASE("doubled spectrum") {
  const auto one = doubled_spectrum(enumerate_eigenvalues(Domain::box({1.0, 1.0}), 1));
  REQUIRE(one.size() == 2);
  CHECK(one.values[0] == one.values[1]);
  const auto d = doubled_spectrum(enumerate_eigenvalues(Domain::box({1.0}), 2));
  REQUIRE(d.size() == 4);
  CHECK(d.values[1] == doctest::Approx(pi2));
  CHECK(d.values[2] == doctest::Approx(4 * pi2));
  CHECK_THROWS_AS(doubled_spectrum(Spectrum{}), ConfigError);

  // sum of the first 2m doubled values is twice the scalar sum
  const auto s = enumerate_eigenvalues(Domain::box({1.0, 2.0, 5.0}), 300);
  const auto ds = doubled_spectrum(s);
  const auto k3 = MethodConstants::make(3, kFixtureC);
  const double V = 10.0, I = moment_of_inertia(Domain::box({1.0, 2.0, 5.0}));
  for (std::size_t m = 1; m <= 300; ++m) {
    CHECK(ds.partial_sum(2 * m) == doctest::Approx(2 * s.partial_sum(m)).epsilon(1e-14));
    CHECK(ds.partial_sum(2 * m) >= doubled_sum_lower_bound(3, V, I, 2 * m, k3));
  }
}

TEST_CASE("verification sweeps pass on the reference boxes") {
  const auto k1 = MethodConstants::make(1, kFixtureC);
  const auto k2 = MethodConstants::make(2, kFixtureC);
  const auto k3 = MethodConstants::make(3, kFixtureC);
  CHECK(verify_bounds(Domain::box({1.0, 1.0}), 1000, k2).all_pass);
  CHECK(verify_bounds(Domain::box({1.0, 2.0, 5.0}), 500, k3).all_pass);

  const auto rep = verify_bounds(Domain::box({1.0}), 1000, k1);
  CHECK(rep.all_pass);
  // closed form sum k^2 pi^2 = pi^2 m(m+1)(2m+1)/6
  for (const auto& row : rep.rows) {
    const double m = static_cast<double>(row.m);
    CHECK(row.sum_enumerated == doctest::Approx(pi2 * m * (m + 1) * (2 * m + 1) / 6).epsilon(1e-12));
    CHECK(row.sum_enumerated >= row.melas);
    CHECK(row.melas > row.li_yau);
  }
  CHECK_THROWS_AS(verify_bounds(Domain::box({1.0}), 0, k1), ConfigError);
  CHECK_THROWS_AS(verify_bounds(Domain::box({1.0}), 5, k2), ConfigError);
}

TEST_CASE("bound chain on random boxes") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> side(0.2, 4.0);
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = dim(rng);
    std::vector<double> sides(static_cast<std::size_t>(n));
    for (auto& s : sides) s = side(rng);
    const Domain d = Domain::box(sides);
    const double c = frac(rng) * std::min(MethodConstants::c_upper_bound(n), 0.5);
    const auto k = MethodConstants::make(n, c);
    const auto spec = enumerate_eigenvalues(d, 400);
    const double V = volume(d), I = moment_of_inertia(d);
    for (std::size_t m = 1; m <= 400; m += 7) {
      const double melas = melas_lower_bound(n, V, I, m, k);
      CHECK(spec.partial_sum(m) >= melas * (1 - kBoundSlack));
      CHECK(melas > li_yau_lower_bound(n, V, m, k));
    }
  }
}

TEST_CASE("scaling covariance of eigenvalues and bounds") {
  const Domain d = Domain::box({1.0, 2.0, 5.0});
  const double s = 2.5;
  const Domain ds = d.scaled(s);
  const auto a = enumerate_eigenvalues(d, 200);
  const auto b = enumerate_eigenvalues(ds, 200);
  for (std::size_t j = 0; j < 200; ++j) CHECK(b.values[j] * s * s == doctest::Approx(a.values[j]).epsilon(1e-13));
  const auto k3 = MethodConstants::make(3, kFixtureC);
  for (std::size_t m : {1u, 17u, 200u}) {
    CHECK(li_yau_lower_bound(3, volume(ds), m, k3) * s * s ==
          doctest::Approx(li_yau_lower_bound(3, volume(d), m, k3)).epsilon(1e-13));
    CHECK(melas_lower_bound(3, volume(ds), moment_of_inertia(ds), m, k3) * s * s ==
          doctest::Approx(melas_lower_bound(3, volume(d), moment_of_inertia(d), m, k3)).epsilon(1e-13));
  }
}

TEST_CASE("Weyl asymptotics normalization") {
  const auto spec = enumerate_eigenvalues(Domain::box({1.0, 1.0}), 10000);
  const double ratio = spec.values.back() / (weyl_constant(2) * 10000.0);
  CHECK(ratio >= 0.85);
  CHECK(ratio <= 1.25);
}

TEST_CASE("verification CSV layout") {
  const auto rep = verify_bounds(Domain::box({1.0, 1.0}), 3, MethodConstants::make(2, kFixtureC));
  std::ostringstream os;
  write_verification_csv(os, rep);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "m,sum_enumerated,li_yau,melas,doubled_sum_bound,pass");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows == 3);
}
