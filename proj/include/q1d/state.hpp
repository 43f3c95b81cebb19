#pragma once

#include <memory>
#include <vector>

#include "q1d/basis.hpp"
#include "q1d/common.hpp"

namespace q1d {

// Strided view of one tensor sub-axis of the N-particle coefficient vector.
struct Axis {
  int dim;
  long stride;
};

// Bosonic N-particle state in the rescaled frame, stored as a dense
// complex tensor of shape d^N (particle-major strides).
class ManyBodyState {
 public:
  ManyBodyState(std::shared_ptr<const SingleParticleBasis> basis, int n_particles);
  ManyBodyState(std::shared_ptr<const SingleParticleBasis> basis, int n_particles,
                Vec coeffs);

  int particles() const { return n_; }
  const SingleParticleBasis& basis() const { return *basis_; }
  std::shared_ptr<const SingleParticleBasis> basis_ptr() const { return basis_; }

  long dim() const { return static_cast<long>(coeffs_.size()); }
  Vec& coeffs() { return coeffs_; }
  const Vec& coeffs() const { return coeffs_; }

  long particle_stride(int p) const;
  Axis x_axis(int p) const;
  Axis z_axis(int p) const;

  double norm() const { return coeffs_.norm(); }
  void normalize();

  // Average over all particle permutations.
  ManyBodyState symmetrized() const;
  double symmetry_defect() const;  // || psi - Sym psi ||

  ManyBodyState permuted(const std::vector<int>& perm) const;

  static ManyBodyState product(std::shared_ptr<const SingleParticleBasis> basis,
                               int n_particles, const Vec& single_particle);

 private:
  std::shared_ptr<const SingleParticleBasis> basis_;
  int n_;
  Vec coeffs_;
};

// out = op applied on two sub-axes of in (all other axes untouched).
// op has row/col index a * axis_b.dim + b.
void apply_on_axis_pair(const Vec& in, Vec& out, const Mat& op, Axis a, Axis b,
                        const std::vector<Axis>& rest);

// Block version: slots[k] lists combined indices (a * axis_b.dim + b) of
// block k, mats[k] the dense block.  Entries outside all blocks are zero.
void apply_on_axis_pair_blocks(const Vec& in, Vec& out,
                               const std::vector<std::vector<int>>& slots,
                               const std::vector<Mat>& mats, Axis a, Axis b,
                               const std::vector<Axis>& rest);

// out = op applied on one sub-axis.
void apply_on_axis(const Vec& in, Vec& out, const Mat& op, Axis a,
                   const std::vector<Axis>& rest);

// All sub-axes of an N-particle tensor except the listed ones.
std::vector<Axis> complement_axes(const ManyBodyState& state,
                                  const std::vector<Axis>& used);

}  // namespace q1d
