#pragma once

#include <cstddef>
#include <vector>

#include "q1d/common.hpp"

namespace q1d {

// Gauss-Hermite rule for the weight e^{-x^2} on the real line.
// quad_weights are the bare weights w_g; total_weights include the e^{+x^2}
// compensation so that  int f(x) dx ~= sum_g total_weights[g] * f(nodes[g])
// for smooth, decaying f.
struct GaussHermiteRule {
  RVec nodes;
  RVec quad_weights;
  RVec total_weights;
};

GaussHermiteRule gauss_hermite(int n);

// Orthonormal Hermite functions psi_n(x) = c_n H_n(x) e^{-x^2/2},
// int psi_n psi_m dx = delta_{nm}. Returns psi_0..psi_{nmax-1} at x.
std::vector<double> hermite_functions(int nmax, double x);

double hermite_function(int n, double x);

// Truncated 2D Hermite eigenbasis of -Lap_x + |x|^2, grouped by total
// level l = n1 + n2 < L.  Modes are ordered level-major, then by n1;
// eigenvalue of any mode at level l is 2(l+1) with degeneracy l+1.
class Hermite2DBasis {
 public:
  Hermite2DBasis(int levels, int quad_nodes);

  int levels() const { return levels_; }
  int quad_nodes() const { return static_cast<int>(rule_.nodes.size()); }
  int size() const { return static_cast<int>(modes_.size()); }

  struct Mode {
    int n1;
    int n2;
  };
  const std::vector<Mode>& modes() const { return modes_; }
  int level_of(int mode) const { return modes_[mode].n1 + modes_[mode].n2; }
  double eigenvalue(int mode) const { return 2.0 * (level_of(mode) + 1); }

  // Orthonormal mode value at x = (x1, x2).
  double eval_mode(int mode, double x1, double x2) const;

  const GaussHermiteRule& rule() const { return rule_; }

  // 1D evaluation table: table(g, n) = psi_n(node_g), n < levels.
  const RMat& eval_table() const { return table_; }

  // Gram matrix of the 2D modes under the tensor quadrature.
  RMat gram() const;

 private:
  int levels_;
  std::vector<Mode> modes_;
  GaussHermiteRule rule_;
  RMat table_;
};

// Ground state h(x) = pi^{-1/2} e^{-|x|^2/2} of the 2D Hermite operator.
inline double ground_h(double x1, double x2) {
  return std::exp(-0.5 * (x1 * x1 + x2 * x2)) / std::sqrt(PI);
}

// int |h|^4 d^2x evaluated by 2D Gauss-Hermite quadrature.
double h_quartic_quadrature(int n = 64);

}  // namespace q1d
