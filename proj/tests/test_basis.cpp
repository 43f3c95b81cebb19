#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "q1d/basis.hpp"
#include "q1d/operators.hpp"

using namespace q1d;

namespace {

// 7-point central second derivative, O(h^6).
double second_derivative(const std::function<double(double)>& f, double x,
                         double h) {
  return (2.0 * f(x - 3 * h) - 27.0 * f(x - 2 * h) + 270.0 * f(x - h) -
          490.0 * f(x) + 270.0 * f(x + h) - 27.0 * f(x + 2 * h) +
          2.0 * f(x + 3 * h)) /
         (180.0 * h * h);
}

}  // namespace

TEST_CASE("gauss-hermite rule integrates the gaussian family") {
  auto rule = gauss_hermite(32);
  double total = 0.0;
  for (long g = 0; g < rule.nodes.size(); ++g) total += rule.quad_weights[g];
  CHECK(total == doctest::Approx(std::sqrt(PI)).epsilon(1e-13));
  // int x^2 e^{-x^2} = sqrt(pi)/2
  double m2 = 0.0;
  for (long g = 0; g < rule.nodes.size(); ++g)
    m2 += rule.quad_weights[g] * rule.nodes[g] * rule.nodes[g];
  CHECK(m2 == doctest::Approx(std::sqrt(PI) / 2.0).epsilon(1e-13));
}

TEST_CASE("basis dimensions and eigenvalues") {
  SingleParticleBasis tiny(1, 4, 8, 16.0);
  CHECK(tiny.size() == 8);
  CHECK(tiny.x_size() == 1);

  SingleParticleBasis b(3, 8, 16, 16.0);
  CHECK(b.x_size() == 6);
  CHECK(b.size() == 96);

  SingleParticleBasis two(2, 5, 8, 16.0);
  REQUIRE(two.x_size() == 3);
  CHECK(two.x().eigenvalue(0) == 2.0);
  CHECK(two.x().eigenvalue(1) == 4.0);
  CHECK(two.x().eigenvalue(2) == 4.0);

  CHECK_THROWS_AS(SingleParticleBasis(0, 4, 8, 16.0), DomainError);
  CHECK_THROWS_AS(SingleParticleBasis(3, 3, 8, 16.0), DomainError);
  CHECK_THROWS_AS(SingleParticleBasis(2, 5, 12, 16.0), DomainError);
  CHECK_THROWS_AS(SingleParticleBasis(2, 5, 16, -1.0), DomainError);
}

TEST_CASE("ground mode is h") {
  Hermite2DBasis xb(3, 8);
  CHECK(xb.eval_mode(0, 0.0, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(PI)).epsilon(1e-14));
  CHECK(std::abs(xb.eval_mode(0, 9.0, 9.0)) < 1e-30);

  // (-2 - Lap + |x|^2) h = 0 at the quadrature nodes, via finite differences
  auto h2d = [&](double x1, double x2) { return xb.eval_mode(0, x1, x2); };
  double worst = 0.0;
  for (int g1 = 0; g1 < xb.quad_nodes(); ++g1)
    for (int g2 = 0; g2 < xb.quad_nodes(); ++g2) {
      const double x1 = xb.rule().nodes[g1];
      const double x2 = xb.rule().nodes[g2];
      const double lap =
          second_derivative([&](double s) { return h2d(s, x2); }, x1, 0.02) +
          second_derivative([&](double s) { return h2d(x1, s); }, x2, 0.02);
      const double res =
          -2.0 * h2d(x1, x2) - lap + (x1 * x1 + x2 * x2) * h2d(x1, x2);
      worst = std::max(worst, std::abs(res));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("scaled ground state h_omega solves its oscillator equation") {
  // h_w(x) = w^{1/2} h(w^{1/2} x) solves (-2w - Lap + w^2 |x|^2) h_w = 0
  const double omega = 4.0;
  const double sw = std::sqrt(omega);
  auto hw = [&](double x1, double x2) { return sw * ground_h(sw * x1, sw * x2); };
  Hermite2DBasis xb(3, 8);
  double worst = 0.0;
  for (int g1 = 0; g1 < xb.quad_nodes(); ++g1)
    for (int g2 = 0; g2 < xb.quad_nodes(); ++g2) {
      const double x1 = xb.rule().nodes[g1] / sw;
      const double x2 = xb.rule().nodes[g2] / sw;
      const double h = 0.02 / sw;
      const double lap =
          second_derivative([&](double s) { return hw(s, x2); }, x1, h) +
          second_derivative([&](double s) { return hw(x1, s); }, x2, h);
      const double res = -2.0 * omega * hw(x1, x2) - lap +
                         omega * omega * (x1 * x1 + x2 * x2) * hw(x1, x2);
      worst = std::max(worst, std::abs(res));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("gram matrix is the identity under quadrature") {
  for (int levels : {1, 2, 4}) {
    Hermite2DBasis xb(levels, levels + 1);
    RMat g = xb.gram();
    CHECK((g - RMat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("fourier grid transforms") {
  FourierGrid1D grid(32, 16.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec f(grid.size());
  for (int n = 0; n < grid.size(); ++n) f[n] = Complex(gauss(rng), gauss(rng));
  const Vec c = grid.to_coeffs(f);
  const Vec back = grid.to_grid(c);
  CHECK((back - f).cwiseAbs().maxCoeff() < 1e-12);
  // Parseval with the dz-weighted grid norm
  CHECK(std::abs(f.squaredNorm() * grid.dz() - c.squaredNorm()) <
        1e-12 * c.squaredNorm());
  // plane wave lands on a single coefficient
  Vec pw(grid.size());
  for (int n = 0; n < grid.size(); ++n) {
    const double th = grid.wavenumber(3) * grid.node(n);
    pw[n] = Complex(std::cos(th), std::sin(th)) / std::sqrt(16.0);
  }
  const Vec pc = grid.to_coeffs(pw);
  for (int m = 0; m < grid.size(); ++m) {
    if (m == 3)
      CHECK(std::abs(pc[m] - 1.0) < 1e-12);
    else
      CHECK(std::abs(pc[m]) < 1e-12);
  }
}

TEST_CASE("position-grid roundtrip and projection") {
  SingleParticleBasis basis(3, 6, 16, 16.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec c(basis.size());
  for (int i = 0; i < basis.size(); ++i) c[i] = Complex(gauss(rng), gauss(rng));
  const Vec vals = basis.to_position_grid(c);
  const Vec back = basis.from_position_grid(vals);
  CHECK((back - c).cwiseAbs().maxCoeff() < 1e-12);

  // e0 samples as h(x) * (const z mode)
  Vec e0 = Vec::Zero(basis.size());
  e0[0] = 1.0;
  const Vec ground = basis.to_position_grid(e0);
  const double x1 = basis.x().rule().nodes[2];
  const double x2 = basis.x().rule().nodes[4];
  const long idx = (2 * 6 + 4) * 16 + 5;
  CHECK(ground[idx].real() ==
        doctest::Approx(ground_h(x1, x2) / std::sqrt(16.0)).epsilon(1e-12));

  // off-span grid functions project; the weighted norm cannot grow
  const RVec w = basis.grid_weights();
  Vec rough(basis.grid_size());
  for (long i = 0; i < basis.grid_size(); ++i)
    rough[i] = Complex(gauss(rng), gauss(rng));
  const Vec proj = basis.from_position_grid(rough);
  double grid_norm = 0.0;
  for (long i = 0; i < basis.grid_size(); ++i)
    grid_norm += w[i] * std::norm(rough[i]);
  CHECK(proj.squaredNorm() <= grid_norm * (1.0 + 1e-12));
  // idempotent: projecting the projected values changes nothing
  const Vec again = basis.from_position_grid(basis.to_position_grid(proj));
  CHECK((again - proj).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection ratio statistic") {
  // ground level: sup of h is at the origin, h(0) = pi^{-1/2}
  auto rep = hermite_linf_ratio(0, 1.0, 8, 42);
  CHECK(rep.sampled_max == doctest::Approx(1.0 / std::sqrt(PI)).epsilon(1e-6));
  CHECK(rep.kernel_bound == doctest::Approx(1.0 / std::sqrt(PI)).epsilon(1e-6));

  // omega covariance removes the omega dependence identically
  auto r1 = hermite_linf_ratio(0, 1.0, 8, 42);
  auto r4 = hermite_linf_ratio(0, 4.0, 8, 42);
  CHECK(std::abs(r1.sampled_max - r4.sampled_max) < 1e-10);

  // levels 0..8: a single constant bounds every ratio
  double cmax = 0.0;
  for (int level = 0; level <= 8; ++level)
    for (double om : {1.0, 4.0, 16.0})
      cmax = std::max(cmax, hermite_linf_ratio(level, om, 16, 5).kernel_bound);
  CHECK(cmax < 1.0);
}

TEST_CASE("boundary mass monitor") {
  FourierGrid1D grid(64, 16.0);
  Vec centered(grid.size()), shifted(grid.size());
  for (int n = 0; n < grid.size(); ++n) {
    const double z = grid.node(n);
    centered[n] = std::exp(-z * z);
    shifted[n] = std::exp(-(z - 7.0) * (z - 7.0));
  }
  CHECK(boundary_mass(grid, centered) < 1e-10);
  CHECK(boundary_mass(grid, shifted) > 0.1);
}
