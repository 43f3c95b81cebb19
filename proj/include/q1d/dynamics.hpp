#pragma once

#include <functional>
#include <vector>

#include "q1d/common.hpp"
#include "q1d/operators.hpp"
#include "q1d/state.hpp"

namespace q1d {

struct KrylovOptions {
  int subspace = 20;
  double step_tol = 1e-12;  // per-step residual target
  int max_halvings = 12;
};

// One Lanczos-Krylov step of exp(-i dt H) applied to psi (psi normalized).
// Returns the a-posteriori residual estimate of the final substep.
double krylov_exp_step(const std::function<Vec(const Vec&)>& apply_h, Vec& psi,
                       double dt, const KrylovOptions& opts);

struct NBodyTrajectory {
  std::vector<double> times;
  std::vector<ManyBodyState> states;
  std::vector<double> norm_drift;     // cumulative |1 - norm| before renorm
  std::vector<double> energy_moment1; // conserved first moment log
};

struct EvolveOptions {
  KrylovOptions krylov;
  int sample_stride = 1;       // store every n-th step
  bool track_energy = true;
};

// Trajectory of exp(-i t H) psi0 sampled every sample_stride steps
// (t = 0 included).  Unitarity is enforced by renormalization; the
// pre-renormalization drift is logged.
NBodyTrajectory evolve_nbody(const HamiltonianSpec& spec,
                             const ManyBodyState& psi0, double t_final,
                             double dt, const EvolveOptions& opts = {});

// Default step per the laboratory convention: 1e-3 * min(1, 1/omega).
double default_dt(double omega);

struct GroundStateResult {
  ManyBodyState state;
  double energy;
  std::vector<double> energy_trace;
  int iterations;
};

// Normalized imaginary-time flow psi <- exp(-tau H) psi / ||..|| until the
// energy decrement falls below tol.
GroundStateResult imaginary_time_ground_nbody(const HamiltonianSpec& spec,
                                              const ManyBodyState& psi0,
                                              double tau, double tol,
                                              int max_iters = 4000);

}  // namespace q1d
