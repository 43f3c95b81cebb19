#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "q1d/marginals.hpp"

using namespace q1d;

namespace {

std::shared_ptr<const SingleParticleBasis> small_basis() {
  return build_basis(2, 5, 8, 16.0);  // d = 24
}

ManyBodyState random_symmetric(std::shared_ptr<const SingleParticleBasis> basis,
                               int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ManyBodyState psi(basis, n);
  for (long i = 0; i < psi.dim(); ++i)
    psi.coeffs()[i] = Complex(gauss(rng), gauss(rng));
  psi = psi.symmetrized();
  psi.normalize();
  return psi;
}

Vec gaussian_zfield(const FourierGrid1D& grid, double width = 1.0) {
  Vec phi(grid.size());
  for (int m = 0; m < grid.size(); ++m) {
    const double z = grid.node(m);
    phi[m] = std::exp(-z * z / (2.0 * width * width));
  }
  phi /= std::sqrt(phi.squaredNorm() * grid.dz());
  return grid.to_coeffs(phi);
}

}  // namespace

TEST_CASE("product state reduces to a rank-one projector") {
  auto basis = small_basis();
  const Vec u = basis->separable_coeffs(0, gaussian_zfield(basis->z()));
  ManyBodyState psi = ManyBodyState::product(basis, 3, u);
  psi.normalize();
  DensityMatrix g1 = reduce_marginal(psi, 1);
  CHECK(g1.trace() == doctest::Approx(1.0).epsilon(1e-12));
  Mat bench = u * u.adjoint();
  CHECK((g1.kernel - bench).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(factorization_gap(g1, gaussian_zfield(basis->z())) < 1e-10);
}

TEST_CASE("marginal eigenvalues match schmidt coefficients at N = 2") {
  auto basis = small_basis();
  ManyBodyState psi = random_symmetric(basis, 2, 5);
  DensityMatrix g1 = reduce_marginal(psi, 1);
  // SVD oracle on the coefficient matrix
  const int d = basis->size();
  using RowMat =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> m(psi.coeffs().data(), d, d);
  Eigen::JacobiSVD<Mat> svd(m);
  Eigen::SelfAdjointEigenSolver<Mat> es(g1.kernel, Eigen::EigenvaluesOnly);
  RVec schmidt = svd.singularValues().array().square();
  std::sort(schmidt.data(), schmidt.data() + schmidt.size());
  for (int i = 0; i < d; ++i)
    CHECK(std::abs(es.eigenvalues()[i] - schmidt[i]) < 1e-12);
}

TEST_CASE("marginal consistency chain and trace preservation") {
  auto basis = build_basis(1, 4, 8, 16.0);  // d = 8 so gamma^(3) fits
  ManyBodyState psi = random_symmetric(basis, 3, 11);
  for (int k = 1; k <= 2; ++k) {
    DensityMatrix up = reduce_marginal(psi, k + 1);
    DensityMatrix traced = partial_trace_last(up);
    DensityMatrix direct = reduce_marginal(psi, k);
    CHECK((traced.kernel - direct.kernel).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(traced.trace() == doctest::Approx(up.trace()).epsilon(1e-13));
  }
}

TEST_CASE("positivity and purity of reduced densities") {
  auto basis = small_basis();
  ManyBodyState psi = random_symmetric(basis, 2, 23);
  DensityMatrix g1 = reduce_marginal(psi, 1);
  CHECK((g1.kernel - g1.kernel.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(g1.kernel);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
  // (gamma)^2 <= gamma as forms
  Eigen::SelfAdjointEigenSolver<Mat> e2(g1.kernel - g1.kernel * g1.kernel);
  CHECK(e2.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("x-trace of a transverse-ground product is the z projector") {
  auto basis = small_basis();
  const Vec zc = gaussian_zfield(basis->z());
  const Vec u = basis->separable_coeffs(0, zc);
  ManyBodyState psi = ManyBodyState::product(basis, 2, u);
  psi.normalize();
  ReducedZDensity gz = trace_x(reduce_marginal(psi, 1));
  Mat bench = zc * zc.adjoint();
  CHECK((gz.kernel - bench).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gz.kernel.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("distances") {
  auto basis = small_basis();
  ManyBodyState a = random_symmetric(basis, 2, 31);
  ManyBodyState b = random_symmetric(basis, 2, 32);
  DensityMatrix ga = reduce_marginal(a, 1);
  DensityMatrix gb = reduce_marginal(b, 1);
  CHECK(trace_distance(ga, ga) == doctest::Approx(0.0));
  CHECK(hs_distance(ga, ga) == 0.0);
  // orthogonal pure states sit at trace distance 2
  Vec u = Vec::Zero(basis->size()), v = Vec::Zero(basis->size());
  u[0] = 1.0;
  v[3] = 1.0;
  CHECK(trace_distance(Mat(u * u.adjoint()), Mat(v * v.adjoint())) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // norm ordering
  CHECK(hs_distance(ga, gb) <= trace_distance(ga, gb) + 1e-12);
}

TEST_CASE("surrogate metric") {
  auto basis = small_basis();
  ManyBodyState a = random_symmetric(basis, 2, 41);
  ManyBodyState b = random_symmetric(basis, 2, 42);
  DensityMatrix ga = reduce_marginal(a, 1);
  DensityMatrix gb = reduce_marginal(b, 1);
  CHECK(dk_metric(ga, ga) == 0.0);
  // every member has operator norm one and the weights sum below one
  CHECK(dk_metric(ga, gb) <= trace_distance(ga, gb) + 1e-12);
  // single projector family: the metric is |trace difference over the band|
  MetricConfig single;
  single.caps = {2};
  Complex tr(0.0, 0.0);
  for (int i = 0; i < basis->size(); ++i) {
    const bool keep = basis->x().level_of(basis->x_of(i)) < 2 &&
                      std::abs(basis->z().freq(basis->z_of(i))) < 2;
    if (keep) tr += ga.kernel(i, i) - gb.kernel(i, i);
  }
  CHECK(dk_metric(ga, gb, single) ==
        doctest::Approx(0.5 * std::abs(tr)).epsilon(1e-12));
  MetricConfig empty;
  empty.caps = {};
  CHECK_THROWS_AS(dk_metric(ga, gb, empty), DomainError);
}

TEST_CASE("sector weights") {
  auto basis = small_basis();
  const Vec u = basis->separable_coeffs(0, gaussian_zfield(basis->z()));
  ManyBodyState ground = ManyBodyState::product(basis, 2, u);
  ground.normalize();
  SectorWeights w = sector_weights(ground);
  CHECK(w.by_excited_count.at(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.by_excited_count.at(1) == doctest::Approx(0.0));
  CHECK(w.by_excited_count.at(2) == doctest::Approx(0.0));

  ManyBodyState r = random_symmetric(basis, 2, 55);
  SectorWeights wr = sector_weights(r);
  double total = 0.0;
  for (const auto& [count, val] : wr.by_excited_count) total += val * val;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // trace table diagonal sums to one
  RMat table = sector_trace_table(reduce_marginal(r, 1));
  CHECK(table.rows() == 2);
  CHECK(table.sum() == doctest::Approx(1.0).epsilon(1e-12));
}
