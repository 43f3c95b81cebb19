#pragma once

#include <vector>

#include "q1d/common.hpp"

namespace q1d {

// Centered isotropic 3D Gaussian component  sign * depth * e^{-|r|^2/(2 sigma^2)}.
struct GaussianTerm {
  double depth;  // > 0
  double sigma;  // > 0
  int sign;      // +1 or -1
};

// Pair potential V as a Gaussian mixture, together with the scaling
// exponent beta of the interaction.  V is even and radial by construction.
class PotentialSpec {
 public:
  // Focusing mixture: enforces int V <= 0.
  static PotentialSpec focusing(std::vector<GaussianTerm> terms, double beta);
  // Repulsive mixture (trap-preparation stage): enforces all signs positive.
  static PotentialSpec repulsive(std::vector<GaussianTerm> terms, double beta);

  const std::vector<GaussianTerm>& terms() const { return terms_; }
  double beta() const { return beta_; }

  double integral() const { return integral_; }  // int V d^3r
  double l1_norm() const { return l1_; }
  double linf_norm() const { return linf_; }

  double value(double x1, double x2, double z) const;
  double radial_value(double rho) const;

  bool empty() const { return terms_.empty(); }

 private:
  PotentialSpec(std::vector<GaussianTerm> terms, double beta);

  std::vector<GaussianTerm> terms_;
  double beta_ = 0.0;
  double integral_ = 0.0;
  double l1_ = 0.0;
  double linf_ = 0.0;
};

// Rescaled-frame pair potential
//   V_{N,omega}(r) = N^{3b} w^{3b-1} V((Nw)^b x / sqrt(w), (Nw)^b z).
double scaled_potential(const PotentialSpec& v, int n_particles, double omega,
                        double x1, double x2, double z);

}  // namespace q1d
