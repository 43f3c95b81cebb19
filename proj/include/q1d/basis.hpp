#pragma once

#include <memory>
#include <string>

#include "q1d/common.hpp"
#include "q1d/fourier_grid.hpp"
#include "q1d/hermite.hpp"

namespace q1d {

// Tensor basis of the truncated 2D Hermite eigenmodes (transverse, x) and
// the periodic Fourier grid (longitudinal, z).  Composite single-particle
// index is x-major:  i = ix * M_z + iz.
class SingleParticleBasis {
 public:
  SingleParticleBasis(int levels, int quad_nodes, int z_points, double z_length);

  const Hermite2DBasis& x() const { return x_; }
  const FourierGrid1D& z() const { return z_; }

  int x_size() const { return x_.size(); }
  int z_size() const { return z_.size(); }
  int size() const { return x_.size() * z_.size(); }

  int index(int ix, int iz) const { return ix * z_.size() + iz; }
  int x_of(int i) const { return i / z_.size(); }
  int z_of(int i) const { return i % z_.size(); }

  // One-line descriptor used in snapshot headers; ordering_version guards
  // the mode-ordering convention.
  struct Descriptor {
    int levels;
    int quad_nodes;
    int z_points;
    double z_length;
    int ordering_version = 1;
  };
  Descriptor descriptor() const;

  // Coefficients of a separable function f(x, z) = (x-mode ix0) * phi(z),
  // phi given by Fourier coefficients.
  Vec separable_coeffs(int ix0, const Vec& z_coeffs) const;

  // Collocation grid: tensor Gauss-Hermite nodes in x times the z grid,
  // index (g1 * G_x + g2) * M_z + n_z.
  long grid_size() const;
  // Weight of each grid point in the collocation inner product.
  RVec grid_weights() const;
  Vec to_position_grid(const Vec& coeffs) const;
  // Weighted projection back onto the retained modes; inverse of
  // to_position_grid on their span, orthogonal projection off it.
  Vec from_position_grid(const Vec& values) const;

 private:
  Hermite2DBasis x_;
  FourierGrid1D z_;
};

std::shared_ptr<const SingleParticleBasis> build_basis(int levels, int quad_nodes,
                                                       int z_points,
                                                       double z_length);

}  // namespace q1d
