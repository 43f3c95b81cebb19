#include "q1d/marginals.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace q1d {

namespace {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

DensityMatrix reduce_marginal(const ManyBodyState& psi, int k, long max_entries) {
  const int n = psi.particles();
  if (k < 1 || k > n) throw DomainError("reduce_marginal: k out of range");
  const int d = psi.basis().size();
  const long dk = ipow(d, k);
  const long dr = ipow(d, n - k);
  if (dk * dk > max_entries)
    throw DomainError("reduce_marginal: kernel too large to materialize");
  using RowMat =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> m(psi.coeffs().data(), dk, dr);
  DensityMatrix out;
  out.order = k;
  out.basis = psi.basis_ptr();
  out.kernel = m * m.adjoint();
  return out;
}

DensityMatrix partial_trace_last(const DensityMatrix& gamma) {
  if (gamma.order < 2)
    throw DomainError("partial_trace_last: need at least two particles");
  const int d = gamma.basis->size();
  const long dp = gamma.kernel.rows() / d;
  DensityMatrix out;
  out.order = gamma.order - 1;
  out.basis = gamma.basis;
  out.kernel = Mat::Zero(dp, dp);
  for (long i = 0; i < dp; ++i)
    for (long j = 0; j < dp; ++j) {
      Complex s(0.0, 0.0);
      for (int m = 0; m < d; ++m) s += gamma.kernel(i * d + m, j * d + m);
      out.kernel(i, j) = s;
    }
  return out;
}

ReducedZDensity trace_x(const DensityMatrix& gamma) {
  const auto& basis = *gamma.basis;
  const int d = basis.size();
  const int mz = basis.z_size();
  const int k = gamma.order;
  const long dk = gamma.kernel.rows();
  const long mzk = ipow(mz, k);
  ReducedZDensity out;
  out.order = k;
  out.z_size = mz;
  out.box_length = basis.z().box_length();
  out.kernel = Mat::Zero(mzk, mzk);
  std::vector<int> xi(k), zi(k), xj(k), zj(k);
  auto split = [&](long idx, std::vector<int>& xs, std::vector<int>& zs) {
    for (int p = k - 1; p >= 0; --p) {
      const int c = static_cast<int>(idx % d);
      xs[p] = basis.x_of(c);
      zs[p] = basis.z_of(c);
      idx /= d;
    }
  };
  for (long i = 0; i < dk; ++i) {
    split(i, xi, zi);
    for (long j = 0; j < dk; ++j) {
      split(j, xj, zj);
      if (xi != xj) continue;
      long zr = 0, zc = 0;
      for (int p = 0; p < k; ++p) {
        zr = zr * mz + zi[p];
        zc = zc * mz + zj[p];
      }
      out.kernel(zr, zc) += gamma.kernel(i, j);
    }
  }
  return out;
}

double hs_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("hs_distance: shape mismatch");
  return (a - b).norm();
}

double trace_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("trace_distance: shape mismatch");
  const long n = a.rows();
  Mat diff = a - b;
  if (n <= 4096) {
    Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  // Randomized subspace estimate of the dominant spectrum; adequate for the
  // near-low-rank differences this laboratory produces.
  const int q = 256;
  std::mt19937_64 rng(0x51D5EEDull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat omega(n, q);
  for (long i = 0; i < n; ++i)
    for (int j = 0; j < q; ++j) omega(i, j) = Complex(gauss(rng), gauss(rng));
  Mat y = diff * omega;
  Eigen::HouseholderQR<Mat> qr(y);
  Mat qmat = qr.householderQ() * Mat::Identity(n, q);
  y = diff * qmat;
  qr.compute(y);
  qmat = qr.householderQ() * Mat::Identity(n, q);
  Mat t = qmat.adjoint() * diff * qmat;
  Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double dk_metric(const DensityMatrix& a, const DensityMatrix& b,
                 const MetricConfig& cfg) {
  if (a.kernel.rows() != b.kernel.rows())
    throw ShapeError("dk_metric: shape mismatch");
  if (cfg.caps.empty()) throw DomainError("dk_metric: empty test family");
  const auto& basis = *a.basis;
  const int d = basis.size();
  const int k = a.order;
  const long dk = a.kernel.rows();
  double metric = 0.0;
  double weight = 0.5;
  for (int cap : cfg.caps) {
    std::vector<char> keep(d);
    for (int i = 0; i < d; ++i) {
      const int lvl = basis.x().level_of(basis.x_of(i));
      const int fr = std::abs(basis.z().freq(basis.z_of(i)));
      keep[i] = lvl < cap && fr < cap;
    }
    Complex tr(0.0, 0.0);
    for (long idx = 0; idx < dk; ++idx) {
      long rem = idx;
      bool ok = true;
      for (int p = 0; p < k; ++p) {
        if (!keep[static_cast<int>(rem % d)]) {
          ok = false;
          break;
        }
        rem /= d;
      }
      if (ok) tr += a.kernel(idx, idx) - b.kernel(idx, idx);
    }
    metric += weight * std::abs(tr);
    weight *= 0.5;
  }
  return metric;
}

double factorization_gap(const DensityMatrix& gamma1, const Vec& phi_coeffs) {
  if (gamma1.order != 1)
    throw DomainError("factorization_gap: needs a one-particle marginal");
  const auto& basis = *gamma1.basis;
  const Vec u = basis.separable_coeffs(0, phi_coeffs);
  Mat bench = u * u.adjoint();
  return trace_distance(gamma1.kernel, bench);
}

SectorWeights sector_weights(const ManyBodyState& psi) {
  const int n = psi.particles();
  const auto& basis = psi.basis();
  const int d = basis.size();
  std::vector<int> cls(d);
  for (int i = 0; i < d; ++i)
    cls[i] = basis.x().level_of(basis.x_of(i)) == 0 ? 0 : 1;
  SectorWeights w;
  w.by_tuple.assign(1u << n, 0.0);
  const long dim = psi.dim();
  const Vec& c = psi.coeffs();
  for (long idx = 0; idx < dim; ++idx) {
    long rem = idx;
    unsigned tuple = 0;
    for (int p = n - 1; p >= 0; --p) {
      if (cls[static_cast<int>(rem % d)]) tuple |= 1u << p;
      rem /= d;
    }
    w.by_tuple[tuple] += std::norm(c[idx]);
  }
  for (unsigned t = 0; t < w.by_tuple.size(); ++t) {
    const int count = __builtin_popcount(t);
    w.by_excited_count[count] += w.by_tuple[t];
  }
  for (auto& [count, val] : w.by_excited_count) val = std::sqrt(val);
  for (auto& v : w.by_tuple) v = std::sqrt(v);
  return w;
}

RMat sector_trace_table(const DensityMatrix& gamma) {
  const auto& basis = *gamma.basis;
  const int d = basis.size();
  const int k = gamma.order;
  std::vector<int> cls(d);
  for (int i = 0; i < d; ++i)
    cls[i] = basis.x().level_of(basis.x_of(i)) == 0 ? 0 : 1;
  const unsigned tuples = 1u << k;
  RMat table = RMat::Zero(tuples, tuples);
  const long dk = gamma.kernel.rows();
  for (long idx = 0; idx < dk; ++idx) {
    long rem = idx;
    unsigned tuple = 0;
    for (int p = k - 1; p >= 0; --p) {
      if (cls[static_cast<int>(rem % d)]) tuple |= 1u << p;
      rem /= d;
    }
    table(tuple, tuple) += gamma.kernel(idx, idx).real();
  }
  return table.cwiseAbs();
}

}  // namespace q1d
