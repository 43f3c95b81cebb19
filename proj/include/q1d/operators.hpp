#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "q1d/basis.hpp"
#include "q1d/common.hpp"
#include "q1d/potential.hpp"
#include "q1d/state.hpp"

namespace q1d {

// Galerkin pair operator for a Gaussian-mixture potential on the truncated
// basis.  The mixture separates per coordinate, so each term is stored as
// a dense two-particle Hermite-mode matrix times a momentum-block-diagonal
// two-particle Fourier matrix; both factors are exact (rotated Gauss-Hermite
// quadrature in x, analytic periodized transform in z).
class PairInteraction {
 public:
  // V_{N,omega}(r_i - r_j) in the rescaled frame.
  static PairInteraction scaled(const PotentialSpec& v, int n_particles,
                                double omega, const SingleParticleBasis& basis);
  // Galerkin realization of delta^3(r_i - r_j): band-limited in z,
  // mode-products in x.  Unit coupling.
  static PairInteraction contact(const SingleParticleBasis& basis);

  bool empty() const { return terms_.empty(); }

  // out += coupling * V_pair(particle i, particle j) |in>
  void apply_add(const ManyBodyState& in, Vec& out, int pi, int pj,
                 double coupling) const;

 private:
  struct Term {
    double prefactor;
    Mat x_pair;               // (M_x^2) x (M_x^2)
    std::vector<Mat> z_mats;  // per total-frequency block
  };
  std::vector<Term> terms_;
  std::vector<std::vector<int>> z_slots_;  // shared block slot lists
  int mx_ = 0;
  int mz_ = 0;
};

// Rescaled N-body Hamiltonian
//   H = sum_j [ -d^2/dz_j^2 + omega (-Lap_xj + |x_j|^2) ]
//       + (1/N) sum_{i<j} V_{N,omega}(r_i - r_j)
// plus an optional z-trap  sum_j omega_z^2 z_j^2  (preparation stage only).
class HamiltonianSpec {
 public:
  struct Params {
    int n_particles;
    double omega;
    double c3 = 1.0;      // alpha = c3 ||V||_1^2 + 1
    double z_trap = 0.0;  // omega_z
  };

  HamiltonianSpec(std::shared_ptr<const SingleParticleBasis> basis,
                  PotentialSpec v, Params params);

  const SingleParticleBasis& basis() const { return *basis_; }
  std::shared_ptr<const SingleParticleBasis> basis_ptr() const { return basis_; }
  const PotentialSpec& potential() const { return v_; }
  int particles() const { return params_.n_particles; }
  double omega() const { return params_.omega; }
  double c3() const { return params_.c3; }
  double alpha() const { return params_.c3 * v_.l1_norm() * v_.l1_norm() + 1.0; }

  // Diagonal one-body symbol k^2 + 2 omega (l+1) per composite index.
  const RVec& one_body_diag() const { return one_body_; }
  // Diagonal of S~^2: 1 + k^2 + 2 omega l.
  const RVec& stilde_sq_diag() const { return stilde_sq_; }

  const PairInteraction& pair() const { return pair_; }

  ManyBodyState apply(const ManyBodyState& psi) const;

 private:
  std::shared_ptr<const SingleParticleBasis> basis_;
  PotentialSpec v_;
  Params params_;
  PairInteraction pair_;
  RVec one_body_;
  RVec stilde_sq_;
  Mat z_trap_mat_;  // nonempty iff z_trap > 0
};

ManyBodyState apply_hamiltonian(const HamiltonianSpec& spec,
                                const ManyBodyState& psi);

// V_{N,omega}(r_i - r_j) |psi> with unit coupling (no 1/N).
ManyBodyState apply_pair_potential(const HamiltonianSpec& spec,
                                   const ManyBodyState& psi, int pi, int pj);

// S~_j^power, power in {1, 2}; diagonal in the spectral basis.
ManyBodyState apply_stilde(const HamiltonianSpec& spec, const ManyBodyState& psi,
                           int particle, int power);

using SectorIndex = std::vector<int>;  // entries in {0, 1}

// P_alpha: zero every coefficient whose per-particle x-level class
// (ground / excited) disagrees with alpha.
ManyBodyState sector_project(const ManyBodyState& psi, const SectorIndex& alpha);

// <(alpha + H/N - 2 omega)^k psi, psi>, k in {1, 2}.
double energy_moment(const HamiltonianSpec& spec, const ManyBodyState& psi, int k);

// <(H - 2 N omega)^k psi, psi>.
double centered_moment(const HamiltonianSpec& spec, const ManyBodyState& psi,
                       int k);

// chi(kappa (H - 2 N omega) / N) psi0, renormalized; chi is 1 on (-inf, 1],
// 0 on [2, inf), quintic smoothstep between.  Dense spectral filter.
ManyBodyState spectral_cutoff(const HamiltonianSpec& spec,
                              const ManyBodyState& psi0, double kappa_cut);

double cutoff_chi(double s);

// Dense matrix of H on the full N-particle space (small systems only).
Mat dense_hamiltonian(const HamiltonianSpec& spec, long max_dim = 4096);

struct EnergyMarginReport {
  int order = 1;
  double margin_random = 0.0;   // min margin over random symmetric states
  double margin_extremal = 0.0; // lowest Ritz value of the margin form
  double margin = 0.0;          // min of the two
  double c3_used = 1.0;
  bool in_window = true;
};

// Worst-case margin of
//   <(alpha + H/N - 2w)^k psi, psi>
//     - 2^{-k} ( ||S~^(k) psi||^2 + (1/N) ||S~_1 S~^(k-1) psi||^2 )
// over normalized bosonic states.
EnergyMarginReport verify_energy_estimate(const HamiltonianSpec& spec, int k,
                                          int trials, std::uint64_t seed,
                                          bool enforce_window = true);

// Smallest c3 >= c3_lo for which the k = 1, 2 margins are >= -tol.
double calibrate_c3(const HamiltonianSpec& spec, double tol, std::uint64_t seed,
                    double c3_lo = 0.0, double c3_hi = 64.0);

enum class InequalityName {
  kCoercivity1,
  kCoercivity2,
  kCoercivity3,
  kEsySobolev,
};

struct InequalityReport {
  std::string name;
  double margin;
  double empirical_constant;
};

InequalityReport check_inequality(InequalityName which,
                                  const SingleParticleBasis& basis, double omega,
                                  const PotentialSpec* v = nullptr);

// Lowest eigenvalue of a Hermitian operator given by its action, via
// Lanczos with full reorthogonalization.  When the operator acts on an
// invariant subspace, `prepare` maps the random start into it so the
// complement's spectrum never enters the Ritz values.
double lanczos_smallest(const std::function<Vec(const Vec&)>& apply, long dim,
                        int iters, std::uint64_t seed,
                        const std::function<Vec(const Vec&)>& prepare = nullptr);

// Empirical L_x^inf / L_x^2 ratio statistic of the 2D Hermite level
// projections, with the omega^{1/2} covariance factor removed.
struct LinfRatioReport {
  double sampled_max;   // max over random unit functions in the eigenspace
  double kernel_bound;  // sup_x sqrt(K_l(x, x)), the exact operator constant
};

LinfRatioReport hermite_linf_ratio(int level, double omega, int samples,
                                   std::uint64_t seed);

}  // namespace q1d
