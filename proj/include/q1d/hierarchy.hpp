#pragma once

#include <vector>

#include "q1d/common.hpp"
#include "q1d/dynamics.hpp"
#include "q1d/marginals.hpp"
#include "q1d/nls.hpp"
#include "q1d/operators.hpp"

namespace q1d {

// Free z-propagator e^{it d^2/dz^2} on Fourier coefficients.
Vec free_flow(const FourierGrid1D& grid, const Vec& coeffs, double t);

// Discrete collision operator B_{j,k+1}: contraction of the band-limited
// Dirac kernel against the (k+1)-particle z-density.  Input and output
// kernels are over Fourier coefficients; j is 1-based as in the hierarchy.
ReducedZDensity collision_op(const ReducedZDensity& gamma, int j);

struct HierarchyResidual {
  int order = 1;
  double dt_fd = 0.0;
  std::vector<double> times;
  std::vector<double> residuals;  // HS norm per sampled time
  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }
};

// Finite-difference defect of the N-body hierarchy for the k-particle
// marginal along a stored trajectory.  The trajectory must be uniformly
// sampled with spacing dividing dt_fd.
HierarchyResidual bbgky_residual(const NBodyTrajectory& traj,
                                 const HamiltonianSpec& spec, int k,
                                 double dt_fd);

enum class GPVariant { kOneDimensional, kCoupled };

struct GPResidualOptions {
  GPVariant variant = GPVariant::kOneDimensional;
  // coupled variant: transverse mode index whose quartic integral scales
  // the contact coupling (b0 passed as `coupling`).
  int x_mode = 0;
  std::vector<double> eval_times;  // defaults to trajectory end
};

// Integral-form defect of the Gross-Pitaevskii hierarchy on a factorized
// trajectory gamma^(k) = |phi><phi|^k, evaluated exactly in the
// elementary-tensor representation (trapezoid rule in s).
// For the one-dimensional variant `coupling` is c_eff; for the coupled
// variant it is b0 and the x-factor int |mode|^4 is applied internally.
HierarchyResidual gp_residual(const NLSTrajectory& traj, int k, double coupling,
                              const GPResidualOptions& opts = {});

// Differential-form defect at order k = 1 (dense kernels), for
// cross-checking the integral meter.
HierarchyResidual gp_residual_differential(const NLSTrajectory& traj,
                                           double coupling, double dt_fd);

struct MollifierSpec {
  // f = sum_i coef_i * normalized Gaussian(width_i); int f = sum coef_i.
  std::vector<double> coefs;
  std::vector<double> widths;
};

struct DeltaRateReport {
  double kappa = 0.0;
  std::vector<double> alphas;
  std::vector<double> errors;
  double slope = 0.0;
  double slope_stderr = 0.0;
};

// Mollifier comparison |Tr J (f_a - delta) gamma| on a
// smooth rank-one two-particle state built from per-axis Hermite series.
// All integrals reduce to exact rotated Gauss-Hermite quadratures.
DeltaRateReport delta_rate_study(const MollifierSpec& f, const RVec& state_x,
                                 const RVec& state_z, const RVec& test_x,
                                 const RVec& test_z, double kappa,
                                 const std::vector<double>& alphas);

// | Tr J ( V_{N,w}(r_1 - r_2) gamma ) + b0 Tr J ( delta^3 gamma ) | for a
// fixed smooth product state; decays along in-window (N, w) sequences.
double interaction_delta_mismatch(const PotentialSpec& v, int n_particles,
                                  double omega,
                                  const std::shared_ptr<const SingleParticleBasis>& basis,
                                  const Vec& phi_z_coeffs);

// Measured space-time quantity int_0^T || <dz>^eps <dz'>^eps B_{1,2}
// gamma^(2)(t) ||_HS dt on a factorized trajectory.  Reported only; the
// admissible constant is not specified.
double space_time_bound_report(const NLSTrajectory& traj, double eps = 0.25);

}  // namespace q1d
