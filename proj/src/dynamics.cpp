#include "q1d/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace q1d {

namespace {

// exp(-i dt T) e1 for the Lanczos tridiagonal T.
Vec tridiag_exp_e1(const std::vector<double>& a, const std::vector<double>& b,
                   double dt) {
  const int m = static_cast<int>(a.size());
  RMat t = RMat::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = a[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = b[static_cast<size_t>(i)];
    t(i + 1, i) = b[static_cast<size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(t);
  Vec phases(m);
  for (int i = 0; i < m; ++i) {
    const double th = -dt * es.eigenvalues()[i];
    phases[i] = Complex(std::cos(th), std::sin(th));
  }
  const RMat& u = es.eigenvectors();
  Vec y(m);
  for (int i = 0; i < m; ++i) {
    Complex s(0.0, 0.0);
    for (int j = 0; j < m; ++j) s += u(i, j) * phases[j] * u(0, j);
    y[i] = s;
  }
  return y;
}

// Single Krylov substep over dt; returns the residual estimate.
double krylov_substep(const std::function<Vec(const Vec&)>& apply_h, Vec& psi,
                      double dt, int m_max) {
  const long dim = psi.size();
  const int m_eff = static_cast<int>(std::min<long>(m_max, dim));
  std::vector<Vec> basis;
  std::vector<double> a, b;
  Vec v = psi;
  bool happy = false;
  for (int it = 0; it < m_eff; ++it) {
    basis.push_back(v);
    Vec w = apply_h(v);
    const double alpha = v.dot(w).real();
    a.push_back(alpha);
    w -= alpha * v;
    if (it > 0) w -= b.back() * basis[basis.size() - 2];
    for (const Vec& u : basis) w -= u.dot(w) * u;
    const double beta = w.norm();
    if (beta < 1e-14 || it == m_eff - 1) {
      happy = beta < 1e-14;
      if (!happy) b.push_back(beta);
      break;
    }
    b.push_back(beta);
    v = w / beta;
  }
  const int m = static_cast<int>(a.size());
  // residual estimate: |beta_m * (e_m^T exp(-i dt T) e1)|
  double residual = 0.0;
  std::vector<double> b_inner(b.begin(), b.begin() + (m - 1));
  Vec y = tridiag_exp_e1(a, b_inner, dt);
  if (!happy && static_cast<int>(b.size()) >= m)
    residual = std::abs(b[static_cast<size_t>(m - 1)] * y[m - 1]) * std::abs(dt);
  Vec out = Vec::Zero(psi.size());
  for (int i = 0; i < m; ++i) out += y[i] * basis[static_cast<size_t>(i)];
  psi = std::move(out);
  return residual;
}

}  // namespace

double krylov_exp_step(const std::function<Vec(const Vec&)>& apply_h, Vec& psi,
                       double dt, const KrylovOptions& opts) {
  int pieces = 1;
  for (int h = 0; h < opts.max_halvings; ++h) {
    Vec trial = psi;
    const double sub = dt / pieces;
    double worst = 0.0;
    for (int p = 0; p < pieces; ++p)
      worst = std::max(worst,
                       krylov_substep(apply_h, trial, sub, opts.subspace));
    if (worst <= opts.step_tol * pieces || h == opts.max_halvings - 1) {
      if (worst > opts.step_tol * pieces)
        throw ConvergenceError(
            "krylov_exp_step: residual above tolerance after max halvings");
      psi = std::move(trial);
      return worst;
    }
    pieces *= 2;
  }
  return 0.0;  // unreachable
}

double default_dt(double omega) { return 1e-3 * std::min(1.0, 1.0 / omega); }

NBodyTrajectory evolve_nbody(const HamiltonianSpec& spec,
                             const ManyBodyState& psi0, double t_final,
                             double dt, const EvolveOptions& opts) {
  if (dt <= 0.0 || t_final < 0.0)
    throw DomainError("evolve_nbody: need dt > 0 and T >= 0");
  auto apply = [&spec](const Vec& x) {
    ManyBodyState s(spec.basis_ptr(), spec.particles(), x);
    return spec.apply(s).coeffs();
  };
  NBodyTrajectory traj;
  ManyBodyState psi = psi0;
  double drift = 0.0;
  auto sample = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.norm_drift.push_back(drift);
    if (opts.track_energy)
      traj.energy_moment1.push_back(energy_moment(spec, psi, 1));
  };
  sample(0.0);
  const long steps = std::lround(t_final / dt);
  for (long s = 1; s <= steps; ++s) {
    krylov_exp_step(apply, psi.coeffs(), dt, opts.krylov);
    drift += std::abs(1.0 - psi.norm());
    psi.normalize();
    if (s % opts.sample_stride == 0 || s == steps) sample(s * dt);
  }
  return traj;
}

GroundStateResult imaginary_time_ground_nbody(const HamiltonianSpec& spec,
                                              const ManyBodyState& psi0,
                                              double tau, double tol,
                                              int max_iters) {
  auto apply = [&spec](const Vec& x) {
    ManyBodyState s(spec.basis_ptr(), spec.particles(), x);
    return spec.apply(s).coeffs();
  };
  GroundStateResult res{psi0, 0.0, {}, 0};
  res.state.normalize();
  auto energy_of = [&](const ManyBodyState& s) {
    return s.coeffs().dot(apply(s.coeffs())).real();
  };
  double e = energy_of(res.state);
  res.energy_trace.push_back(e);
  KrylovOptions kopts;
  for (int it = 0; it < max_iters; ++it) {
    // imaginary-time Krylov step: exp(-tau H) via the Lanczos subspace
    Vec v = res.state.coeffs();
    std::vector<Vec> basis;
    std::vector<double> a, b;
    const int m_eff = static_cast<int>(std::min<long>(kopts.subspace, v.size()));
    Vec cur = v;
    for (int k = 0; k < m_eff; ++k) {
      basis.push_back(cur);
      Vec w = apply(cur);
      const double alpha = cur.dot(w).real();
      a.push_back(alpha);
      w -= alpha * cur;
      if (k > 0) w -= b.back() * basis[basis.size() - 2];
      for (const Vec& u : basis) w -= u.dot(w) * u;
      const double beta = w.norm();
      if (beta < 1e-14 || k == m_eff - 1) break;
      b.push_back(beta);
      cur = w / beta;
    }
    const int m = static_cast<int>(a.size());
    RMat t = RMat::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, i) = a[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) {
      t(i, i + 1) = b[static_cast<size_t>(i)];
      t(i + 1, i) = b[static_cast<size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(t);
    RVec weights(m);
    const double e0 = es.eigenvalues()[0];
    for (int i = 0; i < m; ++i)
      weights[i] = std::exp(-tau * (es.eigenvalues()[i] - e0));
    RVec y = es.eigenvectors() * (weights.array() *
                                  es.eigenvectors().row(0).transpose().array())
                                     .matrix();
    Vec next = Vec::Zero(v.size());
    for (int i = 0; i < m; ++i) next += y[i] * basis[static_cast<size_t>(i)];
    const double nn = next.norm();
    if (nn <= 0.0) throw ConvergenceError("imaginary_time_ground_nbody: collapse");
    next /= nn;
    res.state = ManyBodyState(spec.basis_ptr(), spec.particles(), std::move(next));
    const double e_new = energy_of(res.state);
    res.energy_trace.push_back(e_new);
    res.iterations = it + 1;
    if (std::abs(e - e_new) < tol) {
      res.energy = e_new;
      return res;
    }
    e = e_new;
  }
  throw ConvergenceError("imaginary_time_ground_nbody: no convergence within cap");
}

}  // namespace q1d
