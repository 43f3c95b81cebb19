#include <doctest.h>

#include <cmath>
#include <random>

#include "q1d/scaling.hpp"

using namespace q1d;

TEST_CASE("v1 closed form") {
  CHECK(v1_exponent(1e-9) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(v1_exponent(0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(v1_exponent(1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(v1_exponent(0.0), DomainError);
  CHECK_THROWS_AS(v1_exponent(3.0 / 7.0), DomainError);
  CHECK_THROWS_AS(v1_exponent(-0.1), DomainError);
}

TEST_CASE("v2 minimum of four restrictions") {
  // min(3, 7, 1-, 2.5): the exclusive width term binds
  auto a = v2_exponent(0.25);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.strict);
  // min(9, inf, 0.25-, 7.75)
  auto b = v2_exponent(0.1);
  CHECK(b.value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(b.strict);
  // min(1.5, 1.0, 4-, 1.1875): the transfer term binds non-strictly
  auto c = v2_exponent(0.4);
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(c.strict);
}

TEST_CASE("vE omits the width restriction") {
  CHECK(vE_exponent(0.25) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(vE_exponent(0.1) == doctest::Approx(7.75).epsilon(1e-14));
  CHECK(vE_exponent(1.0 / 3.0) == doctest::Approx(13.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("three restrictions intersect at beta = 1/3") {
  const double beta = 1.0 / 3.0;
  const double t1 = (1.0 - beta) / beta;
  const double t2 = (0.6 - beta) / (beta - 0.2);
  const double t3 = 2.0 * beta / (1.0 - 2.0 * beta);
  CHECK(std::abs(t1 - 2.0) < 1e-12);
  CHECK(std::abs(t2 - 2.0) < 1e-12);
  CHECK(std::abs(t3 - 2.0) < 1e-12);
  // the fourth restriction sits below the crossing; the minimum follows it
  CHECK(v2_exponent(beta).value == doctest::Approx(13.0 / 8.0));
  CHECK_FALSE(v2_exponent(beta).strict);
}

TEST_CASE("window is nonempty across the admissible range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 3.0 / 7.0 - 0.01);
  for (int i = 0; i < 2000; ++i) {
    const double beta = u(rng);
    CHECK(v1_exponent(beta) < v2_exponent(beta).value);
    CHECK(v1_exponent(beta) < vE_exponent(beta));
  }
}

TEST_CASE("per-term monotonicity on a grid") {
  double prev_v1 = -1.0;
  double prev_kinetic = 1e300, prev_width = -1.0, prev_moment = 1e300;
  for (int i = 1; i <= 400; ++i) {
    const double beta = i * (3.0 / 7.0 - 2e-3) / 400.0 + 1e-3;
    CHECK(v1_exponent(beta) > prev_v1);
    prev_v1 = v1_exponent(beta);
    const double kinetic = (1.0 - beta) / beta;
    CHECK(kinetic < prev_kinetic);
    prev_kinetic = kinetic;
    const double width = 2.0 * beta / (1.0 - 2.0 * beta);
    CHECK(width > prev_width);  // increasing: it binds only on the left
    prev_width = width;
    const double moment = (7.0 / 8.0 - beta) / beta;
    CHECK(moment < prev_moment);
    prev_moment = moment;
  }
  // the transfer term decreases where finite
  double prev = 1e300;
  for (int i = 1; i <= 100; ++i) {
    const double beta = 0.21 + i * 0.002;
    const double transfer = (0.6 - beta) / (beta - 0.2);
    CHECK(transfer < prev);
    prev = transfer;
  }
}

TEST_CASE("omega window endpoints") {
  auto w = omega_window(0.25, 16, 1.0, 1.0, WindowMode::kDynamics);
  CHECK(w.lower == doctest::Approx(std::pow(16.0, 1.0 / 3.0)));
  CHECK(w.upper == doctest::Approx(16.0));
  CHECK(w.upper_open);
  CHECK(!w.empty);
  CHECK(w.contains(8.0));
  CHECK_FALSE(w.contains(16.0));  // strict end excluded

  auto we = omega_window(0.25, 16, 1.0, 1.0, WindowMode::kEnergyOnly);
  CHECK(we.upper == doctest::Approx(1024.0));
  CHECK_FALSE(we.upper_open);
  CHECK(we.contains(1024.0));

  auto w4 = omega_window(0.4, 4, 1.0, 1.0, WindowMode::kDynamics);
  CHECK(w4.lower == doctest::Approx(std::pow(4.0, 2.0 / 3.0)));
  CHECK(w4.upper == doctest::Approx(4.0));
  CHECK_FALSE(w4.upper_open);
  CHECK(w4.contains(w4.upper));  // closed end included

  // shrink the constants until the interval empties
  auto empty = omega_window(0.25, 2, 4.0, 0.25, WindowMode::kDynamics);
  CHECK(empty.empty);
}

TEST_CASE("coupling report") {
  // single Gaussian: b0 = depth (2 pi)^{3/2} sigma^3
  const double depth = 1.3, sigma = 0.7;
  auto v = PotentialSpec::focusing({{depth, sigma, -1}}, 0.25);
  auto r = coupling_report(v, 0.01, 100.0);
  CHECK(r.b0 ==
        doctest::Approx(depth * std::pow(2.0 * PI, 1.5) * std::pow(sigma, 3))
            .epsilon(1e-12));
  CHECK(std::abs(r.h_quartic - 1.0 / (2.0 * PI)) < 1e-10);
  CHECK(r.c_eff == doctest::Approx(r.b0 / (2.0 * PI)).epsilon(1e-10));
  CHECK(r.g == doctest::Approx(8.0 * PI * 0.01 * 100.0 * r.h_quartic));
  CHECK(r.scat == doctest::Approx(0.01 / (8.0 * PI) * v.integral()));
  CHECK(r.scat < 0.0);

  // repulsive-mean mixture is rejected
  auto bad = PotentialSpec::repulsive({{1.0, 1.0, +1}}, 0.25);
  CHECK_THROWS_AS(coupling_report(bad, 0.01, 1.0), DomainError);

  // sign-changing mixture with nonpositive integral is accepted
  auto mixed = PotentialSpec::focusing({{1.0, 1.0, -1}, {0.3, 0.9, +1}}, 0.25);
  CHECK(mixed.integral() < 0.0);
  auto rm = coupling_report(mixed, 0.01, 1.0);
  CHECK(rm.c_eff == doctest::Approx(rm.b0 * rm.h_quartic));
}

TEST_CASE("zero potential edge") {
  auto v = PotentialSpec::focusing({}, 0.25);
  CHECK(v.integral() == 0.0);
  auto r = coupling_report(v, 0.01, 1.0);
  CHECK(r.b0 == 0.0);
  CHECK(r.c_eff == 0.0);
}
