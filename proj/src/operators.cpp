#include "q1d/operators.hpp"

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Eigenvalues>

#include "q1d/scaling.hpp"

namespace q1d {

namespace {

// I[n,m,n',m'] = int int psi_n(s) psi_m(t) e^{-(s-t)^2/(2 sx^2)}
//                        psi_n'(s) psi_m'(t) ds dt
// Rotated coordinates p = (s+t)/2, q = s-t turn the integrand into
// polynomial * Gaussian along both directions, so Gauss-Hermite is exact.
std::vector<double> pair_1d_table(int levels, double sx) {
  const int l = levels;
  const int gq = std::max(2 * l + 4, 20);
  const GaussHermiteRule rule = gauss_hermite(gq);
  const double cq = 0.5 + 1.0 / (2.0 * sx * sx);
  std::vector<double> table(static_cast<size_t>(l) * l * l * l, 0.0);
  for (int a = 0; a < gq; ++a) {
    const double p = rule.nodes[a] / std::sqrt(2.0);
    for (int b = 0; b < gq; ++b) {
      const double q = rule.nodes[b] / std::sqrt(cq);
      const double s = p + 0.5 * q;
      const double t = p - 0.5 * q;
      const double gx = std::exp(-q * q / (2.0 * sx * sx));
      const double w = rule.total_weights[a] * rule.total_weights[b] * gx /
                       std::sqrt(2.0 * cq);
      const auto ps = hermite_functions(l, s);
      const auto pt = hermite_functions(l, t);
      size_t idx = 0;
      for (int n = 0; n < l; ++n)
        for (int m = 0; m < l; ++m)
          for (int np = 0; np < l; ++np)
            for (int mp = 0; mp < l; ++mp, ++idx)
              table[idx] += w * ps[n] * pt[m] * ps[np] * pt[mp];
    }
  }
  return table;
}

// Contact version: int psi_n psi_m psi_n' psi_m' (s) ds.
std::vector<double> contact_1d_table(int levels) {
  const int l = levels;
  const int gq = std::max(2 * l + 4, 20);
  const GaussHermiteRule rule = gauss_hermite(gq);
  std::vector<double> table(static_cast<size_t>(l) * l * l * l, 0.0);
  for (int a = 0; a < gq; ++a) {
    const double s = rule.nodes[a] / std::sqrt(2.0);
    const double w = rule.total_weights[a] / std::sqrt(2.0);
    const auto ps = hermite_functions(l, s);
    size_t idx = 0;
    for (int n = 0; n < l; ++n)
      for (int m = 0; m < l; ++m)
        for (int np = 0; np < l; ++np)
          for (int mp = 0; mp < l; ++mp, ++idx)
            table[idx] += w * ps[n] * ps[m] * ps[np] * ps[mp];
  }
  return table;
}

size_t t4(int l, int n, int m, int np, int mp) {
  return ((static_cast<size_t>(n) * l + m) * l + np) * l + mp;
}

Mat x_pair_from_table(const Hermite2DBasis& xb, const std::vector<double>& tab) {
  const int l = xb.levels();
  const int mx = xb.size();
  Mat x(mx * mx, mx * mx);
  const auto& modes = xb.modes();
  for (int a = 0; a < mx; ++a)
    for (int b = 0; b < mx; ++b)
      for (int ap = 0; ap < mx; ++ap)
        for (int bp = 0; bp < mx; ++bp) {
          const double v1 = tab[t4(l, modes[a].n1, modes[b].n1, modes[ap].n1,
                                   modes[bp].n1)];
          const double v2 = tab[t4(l, modes[a].n2, modes[b].n2, modes[ap].n2,
                                   modes[bp].n2)];
          x(a * mx + b, ap * mx + bp) = v1 * v2;
        }
  return x;
}

std::vector<std::vector<int>> z_block_slots(const FourierGrid1D& grid) {
  const int mz = grid.size();
  std::vector<std::vector<int>> slots;
  // total integer frequency runs over [-mz, mz - 2]
  std::vector<std::vector<int>> by_total(2 * mz - 1);
  for (int m1 = 0; m1 < mz; ++m1)
    for (int m2 = 0; m2 < mz; ++m2) {
      const int total = grid.freq(m1) + grid.freq(m2);
      by_total[static_cast<size_t>(total + mz)].push_back(m1 * mz + m2);
    }
  for (auto& v : by_total)
    if (!v.empty()) slots.push_back(std::move(v));
  return slots;
}

std::vector<Mat> z_block_mats(const FourierGrid1D& grid,
                              const std::vector<std::vector<int>>& slots,
                              double sz) {
  // ghat(k) of e^{-u^2/(2 sz^2)}; sz <= 0 encodes the contact kernel
  // (ghat = 1).
  auto ghat = [&](double k) {
    if (sz <= 0.0) return 1.0;
    return sz * std::sqrt(2.0 * PI) * std::exp(-0.5 * k * k * sz * sz);
  };
  const int mz = grid.size();
  const double inv_l = 1.0 / grid.box_length();
  std::vector<Mat> mats;
  mats.reserve(slots.size());
  for (const auto& slot : slots) {
    const int bs = static_cast<int>(slot.size());
    Mat b(bs, bs);
    for (int i = 0; i < bs; ++i) {
      const int m1 = slot[i] / mz;
      for (int j = 0; j < bs; ++j) {
        const int m1p = slot[j] / mz;
        b(i, j) = inv_l * ghat(grid.wavenumber(m1) - grid.wavenumber(m1p));
      }
    }
    mats.push_back(std::move(b));
  }
  return mats;
}

}  // namespace

PairInteraction PairInteraction::scaled(const PotentialSpec& v, int n_particles,
                                        double omega,
                                        const SingleParticleBasis& basis) {
  PairInteraction p;
  p.mx_ = basis.x_size();
  p.mz_ = basis.z_size();
  p.z_slots_ = z_block_slots(basis.z());
  const double b = v.beta();
  const double nw = n_particles * omega;
  for (const auto& term : v.terms()) {
    Term t;
    t.prefactor = term.sign * term.depth * std::pow(n_particles, 3.0 * b) *
                  std::pow(omega, 3.0 * b - 1.0);
    const double sx = term.sigma * std::sqrt(omega) / std::pow(nw, b);
    const double sz = term.sigma / std::pow(nw, b);
    t.x_pair = x_pair_from_table(basis.x(), pair_1d_table(basis.x().levels(), sx));
    t.z_mats = z_block_mats(basis.z(), p.z_slots_, sz);
    p.terms_.push_back(std::move(t));
  }
  return p;
}

PairInteraction PairInteraction::contact(const SingleParticleBasis& basis) {
  PairInteraction p;
  p.mx_ = basis.x_size();
  p.mz_ = basis.z_size();
  p.z_slots_ = z_block_slots(basis.z());
  Term t;
  t.prefactor = 1.0;
  const auto tab = contact_1d_table(basis.x().levels());
  t.x_pair = x_pair_from_table(basis.x(), tab);
  t.z_mats = z_block_mats(basis.z(), p.z_slots_, -1.0);
  p.terms_.push_back(std::move(t));
  return p;
}

void PairInteraction::apply_add(const ManyBodyState& in, Vec& out, int pi,
                                int pj, double coupling) const {
  if (terms_.empty()) return;
  const Axis za = in.z_axis(pi), zb = in.z_axis(pj);
  const Axis xa = in.x_axis(pi), xb = in.x_axis(pj);
  const auto rest_z = complement_axes(in, {za, zb});
  const auto rest_x = complement_axes(in, {xa, xb});
  Vec tmp1, tmp2;
  for (const auto& t : terms_) {
    apply_on_axis_pair_blocks(in.coeffs(), tmp1, z_slots_, t.z_mats, za, zb,
                              rest_z);
    apply_on_axis_pair(tmp1, tmp2, t.x_pair, xa, xb, rest_x);
    out += (coupling * t.prefactor) * tmp2;
  }
}

HamiltonianSpec::HamiltonianSpec(std::shared_ptr<const SingleParticleBasis> basis,
                                 PotentialSpec v, Params params)
    : basis_(std::move(basis)), v_(std::move(v)), params_(params) {
  if (params_.n_particles < 1)
    throw DomainError("HamiltonianSpec: need at least one particle");
  if (params_.omega < 1.0) throw DomainError("HamiltonianSpec: omega must be >= 1");
  const int d = basis_->size();
  one_body_.resize(d);
  stilde_sq_.resize(d);
  for (int i = 0; i < d; ++i) {
    const int ix = basis_->x_of(i);
    const double k = basis_->z().wavenumber(basis_->z_of(i));
    const double level = basis_->x().level_of(ix);
    one_body_[i] = k * k + 2.0 * params_.omega * (level + 1.0);
    stilde_sq_[i] = 1.0 + k * k + 2.0 * params_.omega * level;
  }
  if (!v_.empty())
    pair_ = PairInteraction::scaled(v_, params_.n_particles, params_.omega,
                                    *basis_);
  if (params_.z_trap > 0.0) {
    const auto& g = basis_->z();
    const int mz = g.size();
    z_trap_mat_.resize(mz, mz);
    const double wz2 = params_.z_trap * params_.z_trap;
    for (int m = 0; m < mz; ++m) {
      Vec unit = Vec::Zero(mz);
      unit[m] = 1.0;
      Vec vals = g.to_grid(unit);
      for (int n = 0; n < mz; ++n) vals[n] *= wz2 * g.node(n) * g.node(n);
      z_trap_mat_.col(m) = g.to_coeffs(vals);
    }
  }
}

ManyBodyState HamiltonianSpec::apply(const ManyBodyState& psi) const {
  if (psi.basis_ptr().get() != basis_.get() || psi.particles() != params_.n_particles)
    throw ShapeError("HamiltonianSpec::apply: basis or particle-count mismatch");
  const int n = params_.n_particles;
  const int d = basis_->size();
  const Vec& c = psi.coeffs();
  Vec out(c.size());

  // one-body part, diagonal in the spectral basis
  const long dim = c.size();
  for (long idx = 0; idx < dim; ++idx) {
    long rem = idx;
    double e = 0.0;
    for (int p = 0; p < n; ++p) {
      // particle n-1-p has the least significant digit
      e += one_body_[static_cast<int>(rem % d)];
      rem /= d;
    }
    out[idx] = e * c[idx];
  }

  if (z_trap_mat_.size() > 0) {
    Vec tmp;
    for (int p = 0; p < n; ++p) {
      const Axis za = psi.z_axis(p);
      apply_on_axis(c, tmp, z_trap_mat_, za, complement_axes(psi, {za}));
      out += tmp;
    }
  }

  if (!pair_.empty()) {
    const double coupling = 1.0 / n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pair_.apply_add(psi, out, i, j, coupling);
  }
  return ManyBodyState(basis_, n, std::move(out));
}

ManyBodyState apply_hamiltonian(const HamiltonianSpec& spec,
                                const ManyBodyState& psi) {
  return spec.apply(psi);
}

ManyBodyState apply_pair_potential(const HamiltonianSpec& spec,
                                   const ManyBodyState& psi, int pi, int pj) {
  Vec out = Vec::Zero(psi.coeffs().size());
  spec.pair().apply_add(psi, out, pi, pj, 1.0);
  return ManyBodyState(psi.basis_ptr(), psi.particles(), std::move(out));
}

ManyBodyState apply_stilde(const HamiltonianSpec& spec, const ManyBodyState& psi,
                           int particle, int power) {
  if (power != 1 && power != 2)
    throw DomainError("apply_stilde: power must be 1 or 2");
  const int n = psi.particles();
  if (particle < 0 || particle >= n)
    throw DomainError("apply_stilde: particle index out of range");
  const int d = psi.basis().size();
  const long stride = psi.particle_stride(particle);
  const RVec& s2 = spec.stilde_sq_diag();
  Vec out = psi.coeffs();
  const long dim = out.size();
  for (long idx = 0; idx < dim; ++idx) {
    const int i = static_cast<int>((idx / stride) % d);
    out[idx] *= power == 2 ? s2[i] : std::sqrt(s2[i]);
  }
  return ManyBodyState(psi.basis_ptr(), n, std::move(out));
}

ManyBodyState sector_project(const ManyBodyState& psi, const SectorIndex& alpha) {
  const int n = psi.particles();
  if (static_cast<int>(alpha.size()) != n)
    throw ShapeError("sector_project: index length must equal particle count");
  const auto& basis = psi.basis();
  const int d = basis.size();
  std::vector<int> cls(d);
  for (int i = 0; i < d; ++i)
    cls[i] = basis.x().level_of(basis.x_of(i)) == 0 ? 0 : 1;
  Vec out = psi.coeffs();
  const long dim = out.size();
  for (long idx = 0; idx < dim; ++idx) {
    long rem = idx;
    bool keep = true;
    for (int p = n - 1; p >= 0; --p) {
      if (cls[static_cast<int>(rem % d)] != alpha[static_cast<size_t>(p)]) {
        keep = false;
        break;
      }
      rem /= d;
    }
    if (!keep) out[idx] = Complex(0.0, 0.0);
  }
  return ManyBodyState(psi.basis_ptr(), n, std::move(out));
}

namespace {

ManyBodyState apply_shifted(const HamiltonianSpec& spec, const ManyBodyState& psi,
                            double scale, double shift) {
  // (scale * H + shift) psi
  ManyBodyState h = spec.apply(psi);
  h.coeffs() = scale * h.coeffs() + shift * psi.coeffs();
  return h;
}

}  // namespace

double energy_moment(const HamiltonianSpec& spec, const ManyBodyState& psi,
                     int k) {
  if (k != 1 && k != 2) throw DomainError("energy_moment: k must be 1 or 2");
  const double shift = spec.alpha() - 2.0 * spec.omega();
  ManyBodyState w = apply_shifted(spec, psi, 1.0 / spec.particles(), shift);
  if (k == 1) return psi.coeffs().dot(w.coeffs()).real();
  return w.coeffs().squaredNorm();
}

double centered_moment(const HamiltonianSpec& spec, const ManyBodyState& psi,
                       int k) {
  if (k != 1 && k != 2) throw DomainError("centered_moment: k must be 1 or 2");
  const double shift = -2.0 * spec.particles() * spec.omega();
  ManyBodyState w = apply_shifted(spec, psi, 1.0, shift);
  if (k == 1) return psi.coeffs().dot(w.coeffs()).real();
  return w.coeffs().squaredNorm();
}

double cutoff_chi(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double u = s - 1.0;
  const double step = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  return 1.0 - step;
}

Mat dense_hamiltonian(const HamiltonianSpec& spec, long max_dim) {
  ManyBodyState probe(spec.basis_ptr(), spec.particles());
  const long dim = probe.dim();
  if (dim > max_dim)
    throw DomainError("dense_hamiltonian: space too large for a dense matrix");
  Mat h(dim, dim);
  for (long j = 0; j < dim; ++j) {
    probe.coeffs().setZero();
    probe.coeffs()[j] = 1.0;
    h.col(j) = spec.apply(probe).coeffs();
  }
  return h;
}

ManyBodyState spectral_cutoff(const HamiltonianSpec& spec,
                              const ManyBodyState& psi0, double kappa_cut) {
  if (kappa_cut <= 0.0) throw DomainError("spectral_cutoff: kappa must be positive");
  const Mat h = dense_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("spectral_cutoff: eigensolve failed");
  const double base = 2.0 * spec.particles() * spec.omega();
  Vec y = es.eigenvectors().adjoint() * psi0.coeffs();
  for (long i = 0; i < y.size(); ++i)
    y[i] *= cutoff_chi(kappa_cut * (es.eigenvalues()[i] - base) /
                       spec.particles());
  Vec filtered = es.eigenvectors() * y;
  const double norm = filtered.norm();
  if (norm < 1e-12)
    throw ConvergenceError("spectral_cutoff: cutoff annihilates the state");
  filtered /= norm;
  return ManyBodyState(psi0.basis_ptr(), psi0.particles(), std::move(filtered));
}

double lanczos_smallest(const std::function<Vec(const Vec&)>& apply, long dim,
                        int iters, std::uint64_t seed,
                        const std::function<Vec(const Vec&)>& prepare) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (long i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  if (prepare) v = prepare(v);
  v /= v.norm();
  std::vector<Vec> basis;
  std::vector<double> a, b;
  Vec w;
  for (int it = 0; it < iters; ++it) {
    basis.push_back(v);
    w = apply(v);
    const double alpha = v.dot(w).real();
    a.push_back(alpha);
    w -= alpha * v;
    if (it > 0) w -= b.back() * basis[basis.size() - 2];
    // full reorthogonalization
    for (const Vec& u : basis) w -= u.dot(w) * u;
    const double beta = w.norm();
    if (beta < 1e-13) break;
    b.push_back(beta);
    v = w / beta;
  }
  const int m = static_cast<int>(a.size());
  RMat t = RMat::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = a[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = b[static_cast<size_t>(i)];
    t(i + 1, i) = b[static_cast<size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(t);
  return es.eigenvalues()[0];
}

namespace {

// Margin of the focusing energy inequality at one state.
double margin_at(const HamiltonianSpec& spec, int k, const ManyBodyState& psi) {
  const double lhs = energy_moment(spec, psi, k);
  double rhs;
  if (k == 1) {
    const double s1 = apply_stilde(spec, psi, 0, 1).coeffs().squaredNorm();
    rhs = 0.5 * (s1 + s1 / spec.particles());
  } else {
    ManyBodyState s12 = apply_stilde(spec, apply_stilde(spec, psi, 0, 1), 1, 1);
    ManyBodyState s11 = apply_stilde(spec, psi, 0, 2);
    rhs = 0.25 * (s12.coeffs().squaredNorm() +
                  s11.coeffs().squaredNorm() / spec.particles());
  }
  return lhs - rhs;
}

// Action of the margin quadratic form.  The subtracted weight operator is
// diagonal, so only A^k needs Hamiltonian applications.
Vec margin_form_apply(const HamiltonianSpec& spec, int k, const Vec& x) {
  ManyBodyState psi(spec.basis_ptr(), spec.particles(), x);
  const double shift = spec.alpha() - 2.0 * spec.omega();
  ManyBodyState w = apply_shifted(spec, psi, 1.0 / spec.particles(), shift);
  if (k == 2) w = apply_shifted(spec, w, 1.0 / spec.particles(), shift);
  Vec out = w.coeffs();
  const int n = spec.particles();
  const int d = spec.basis().size();
  const RVec& s2 = spec.stilde_sq_diag();
  const long dim = x.size();
  const long stride0 = psi.particle_stride(0);
  if (k == 1) {
    const double f = 0.5 * (1.0 + 1.0 / n);
    for (long idx = 0; idx < dim; ++idx) {
      const int i0 = static_cast<int>((idx / stride0) % d);
      out[idx] -= f * s2[i0] * x[idx];
    }
  } else {
    const long stride1 = psi.particle_stride(1);
    for (long idx = 0; idx < dim; ++idx) {
      const int i0 = static_cast<int>((idx / stride0) % d);
      const int i1 = static_cast<int>((idx / stride1) % d);
      out[idx] -=
          0.25 * (s2[i0] * s2[i1] + s2[i0] * s2[i0] / n) * x[idx];
    }
  }
  return out;
}

}  // namespace

EnergyMarginReport verify_energy_estimate(const HamiltonianSpec& spec, int k,
                                          int trials, std::uint64_t seed,
                                          bool enforce_window) {
  if (k != 1 && k != 2)
    throw DomainError("verify_energy_estimate: k must be 1 or 2");
  EnergyMarginReport rep;
  rep.order = k;
  rep.c3_used = spec.c3();
  const OmegaWindow win = omega_window(spec.potential().beta(), spec.particles(),
                                       1.0, 1.0, WindowMode::kEnergyOnly);
  rep.in_window = win.contains(spec.omega());
  if (!rep.in_window && enforce_window)
    throw DomainError("verify_energy_estimate: (N, omega) outside the energy window");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    ManyBodyState psi(spec.basis_ptr(), spec.particles());
    for (long i = 0; i < psi.dim(); ++i)
      psi.coeffs()[i] = Complex(gauss(rng), gauss(rng));
    psi = psi.symmetrized();
    psi.normalize();
    worst = std::min(worst, margin_at(spec, k, psi));
  }
  rep.margin_random = worst;

  ManyBodyState probe(spec.basis_ptr(), spec.particles());
  auto symmetrize = [&](const Vec& x) {
    ManyBodyState s(spec.basis_ptr(), spec.particles(), x);
    return s.symmetrized().coeffs();
  };
  auto apply = [&](const Vec& x) {
    return symmetrize(margin_form_apply(spec, k, symmetrize(x)));
  };
  rep.margin_extremal = lanczos_smallest(
      apply, probe.dim(), static_cast<int>(std::min<long>(160, probe.dim())),
      seed, symmetrize);
  rep.margin = std::min(rep.margin_random, rep.margin_extremal);
  return rep;
}

double calibrate_c3(const HamiltonianSpec& spec, double tol, std::uint64_t seed,
                    double c3_lo, double c3_hi) {
  auto ok = [&](double c3) {
    HamiltonianSpec trial(spec.basis_ptr(), spec.potential(),
                          {spec.particles(), spec.omega(), c3, 0.0});
    for (int k : {1, 2}) {
      const EnergyMarginReport r = verify_energy_estimate(trial, k, 8, seed, false);
      if (r.margin < -tol) return false;
    }
    return true;
  };
  if (ok(c3_lo)) return c3_lo;
  if (!ok(c3_hi))
    throw ConvergenceError("calibrate_c3: no admissible constant below the cap");
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (c3_lo + c3_hi);
    (ok(mid) ? c3_hi : c3_lo) = mid;
  }
  return c3_hi;
}

namespace {

// Per-particle Galerkin matrix of (1 - Lap_r) on the truncated basis:
// diagonal 1 + k^2 in z plus (-Lap_x) = diag(2(l+1)) - P |x|^2 P in x.
Mat one_minus_laplacian(const SingleParticleBasis& basis) {
  const int d = basis.size();
  const int mx = basis.x_size();
  const int l = basis.x().levels();
  const auto& modes = basis.x().modes();
  // 1D <n| s^2 |m>
  RMat s2 = RMat::Zero(l, l);
  for (int n = 0; n < l; ++n) {
    s2(n, n) = n + 0.5;
    if (n + 2 < l) {
      const double v = 0.5 * std::sqrt((n + 1.0) * (n + 2.0));
      s2(n, n + 2) = v;
      s2(n + 2, n) = v;
    }
  }
  RMat x2 = RMat::Zero(mx, mx);
  for (int a = 0; a < mx; ++a)
    for (int b = 0; b < mx; ++b) {
      double v = 0.0;
      if (modes[a].n2 == modes[b].n2) v += s2(modes[a].n1, modes[b].n1);
      if (modes[a].n1 == modes[b].n1) v += s2(modes[a].n2, modes[b].n2);
      x2(a, b) = v;
    }
  Mat out = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double k = basis.z().wavenumber(basis.z_of(i));
    out(i, i) = 1.0 + k * k +
                2.0 * (basis.x().level_of(basis.x_of(i)) + 1.0);
    for (int jx = 0; jx < mx; ++jx) {
      const int j = basis.index(jx, basis.z_of(i));
      out(i, j) -= x2(basis.x_of(i), jx);
    }
  }
  return out;
}

RVec stilde_sq_vec(const SingleParticleBasis& basis, double omega) {
  const int d = basis.size();
  RVec s2(d);
  for (int i = 0; i < d; ++i) {
    const double k = basis.z().wavenumber(basis.z_of(i));
    s2[i] = 1.0 + k * k + 2.0 * omega * basis.x().level_of(basis.x_of(i));
  }
  return s2;
}

}  // namespace

InequalityReport check_inequality(InequalityName which,
                                  const SingleParticleBasis& basis, double omega,
                                  const PotentialSpec* v) {
  InequalityReport rep{};
  const int d = basis.size();
  switch (which) {
    case InequalityName::kCoercivity1: {
      rep.name = "coercivity-1";
      const Mat lap = one_minus_laplacian(basis);
      const RVec s2 = stilde_sq_vec(basis, omega);
      Mat m = -lap / 3.0;
      for (int i = 0; i < d; ++i) m(i, i) += s2[i];
      Eigen::SelfAdjointEigenSolver<Mat> es(m);
      rep.margin = es.eigenvalues()[0];
      // best constant c with S~^2 >= c (1 - Lap)
      Eigen::SelfAdjointEigenSolver<Mat> esl(lap);
      Mat half = esl.eigenvectors() *
                 esl.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 esl.eigenvectors().adjoint();
      Mat sandwich = half * s2.cast<Complex>().asDiagonal() * half;
      Eigen::SelfAdjointEigenSolver<Mat> ess(sandwich);
      rep.empirical_constant = ess.eigenvalues()[0];
      return rep;
    }
    case InequalityName::kCoercivity2: {
      rep.name = "coercivity-2";
      double margin = std::numeric_limits<double>::infinity();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < d; ++i) {
        const int lvl = basis.x().level_of(basis.x_of(i));
        if (lvl == 0) continue;
        const double k = basis.z().wavenumber(basis.z_of(i));
        const double s2 = 1.0 + k * k + 2.0 * omega * lvl;
        const double full = 1.0 + k * k + 2.0 * omega * (lvl + 1.0);
        margin = std::min(margin, s2 - 0.5 * full);
        best_ratio = std::min(best_ratio, s2 / full);
      }
      rep.margin = margin;
      rep.empirical_constant = best_ratio;
      return rep;
    }
    case InequalityName::kCoercivity3: {
      rep.name = "coercivity-3";
      double min_eig = std::numeric_limits<double>::infinity();
      for (int i = 0; i < d; ++i) {
        const int lvl = basis.x().level_of(basis.x_of(i));
        if (lvl == 0) continue;
        const double k = basis.z().wavenumber(basis.z_of(i));
        min_eig = std::min(min_eig, 1.0 + k * k + 2.0 * omega * lvl);
      }
      rep.margin = min_eig - omega;
      rep.empirical_constant = min_eig / omega;
      return rep;
    }
    case InequalityName::kEsySobolev: {
      rep.name = "esy-sobolev";
      if (v == nullptr)
        throw DomainError("check_inequality: esy-sobolev needs a potential");
      if (static_cast<long>(d) * d > 4096)
        throw DomainError("check_inequality: esy-sobolev space too large");
      auto bp = std::make_shared<const SingleParticleBasis>(
          basis.x().levels(), basis.x().quad_nodes(), basis.z_size(),
          basis.z().box_length());
      const PairInteraction pair = PairInteraction::scaled(*v, 1, 1.0, *bp);
      const long dim2 = static_cast<long>(d) * d;
      Mat vd(dim2, dim2);
      ManyBodyState probe(bp, 2);
      for (long j = 0; j < dim2; ++j) {
        probe.coeffs().setZero();
        probe.coeffs()[j] = 1.0;
        Vec out = Vec::Zero(dim2);
        pair.apply_add(probe, out, 0, 1, 1.0);
        vd.col(j) = out;
      }
      const Mat lap = one_minus_laplacian(*bp);
      Eigen::SelfAdjointEigenSolver<Mat> esl(lap);
      Mat half = esl.eigenvectors() *
                 esl.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 esl.eigenvectors().adjoint();
      Mat lhalf(dim2, dim2);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int ap = 0; ap < d; ++ap)
            for (int bp2 = 0; bp2 < d; ++bp2)
              lhalf(a * d + b, ap * d + bp2) = half(a, ap) * half(b, bp2);
      Mat sandwich = lhalf * vd * lhalf;
      Eigen::SelfAdjointEigenSolver<Mat> es(sandwich);
      const double opnorm = std::max(std::abs(es.eigenvalues()[0]),
                                     std::abs(es.eigenvalues()[dim2 - 1]));
      rep.margin = 0.0;
      rep.empirical_constant = opnorm / v->l1_norm();
      return rep;
    }
  }
  throw DomainError("check_inequality: unknown name");
}

LinfRatioReport hermite_linf_ratio(int level, double omega, int samples,
                                   std::uint64_t seed) {
  if (level < 0) throw DomainError("hermite_linf_ratio: level must be >= 0");
  if (omega < 1.0) throw DomainError("hermite_linf_ratio: omega must be >= 1");
  const int deg = level + 1;
  const double sw = std::sqrt(omega);
  const double radius = std::sqrt(2.0 * (2.0 * level + 2.0)) + 4.0;
  const int npts = 201;
  // mode values at collocation points, in the omega frame
  RMat vals(npts * npts, deg);
  for (int g1 = 0; g1 < npts; ++g1) {
    const double y1 = -radius + 2.0 * radius * g1 / (npts - 1);
    const auto p1 = hermite_functions(level + 1, sw * (y1 / sw));
    for (int g2 = 0; g2 < npts; ++g2) {
      const double y2 = -radius + 2.0 * radius * g2 / (npts - 1);
      const auto p2 = hermite_functions(level + 1, sw * (y2 / sw));
      for (int m = 0; m < deg; ++m)
        vals(g1 * npts + g2, m) =
            sw * p1[static_cast<size_t>(m)] *
            p2[static_cast<size_t>(level - m)];
    }
  }
  LinfRatioReport rep{};
  rep.kernel_bound = std::sqrt(vals.rowwise().squaredNorm().maxCoeff()) / sw;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec c(deg);
    for (int m = 0; m < deg; ++m) c[m] = Complex(gauss(rng), gauss(rng));
    c /= c.norm();
    double sup = 0.0;
    for (int p = 0; p < npts * npts; ++p) {
      Complex f(0.0, 0.0);
      for (int m = 0; m < deg; ++m) f += c[m] * vals(p, m);
      sup = std::max(sup, std::abs(f));
    }
    best = std::max(best, sup / sw);
  }
  rep.sampled_max = best;
  return rep;
}

}  // namespace q1d
