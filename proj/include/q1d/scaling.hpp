#pragma once

#include "q1d/common.hpp"
#include "q1d/potential.hpp"

namespace q1d {

// Closed-form scaling exponents controlling the admissible (N, omega)
// region.  Valid for beta in (0, 3/7).

double v1_exponent(double beta);

struct V2Result {
  double value;
  // True when the exclusive 2b/(1-2b) term is the unique minimizer, so the
  // upper window end is an open bound.
  bool strict;
};

V2Result v2_exponent(double beta);

double vE_exponent(double beta);

enum class WindowMode { kDynamics, kEnergyOnly };

struct OmegaWindow {
  double lower;
  double upper;
  bool upper_open;  // exclusive upper end (strict exponent binds)
  bool empty;       // lower bound exceeds upper bound
  bool contains(double omega) const {
    if (empty || omega < lower) return false;
    return upper_open ? omega < upper : omega <= upper;
  }
};

OmegaWindow omega_window(double beta, int n_particles, double c1, double c2,
                         WindowMode mode);

struct CouplingReport {
  double b0;         // |int V|
  double h_quartic;  // int |h|^4 d^2x by quadrature
  double c_eff;      // b0 * h_quartic, the 1D cubic coupling
  double g;          // 8 pi a omega0x * h_quartic
  double scat;       // (a / 8 pi) int V   (beta < 1 branch)
};

CouplingReport coupling_report(const PotentialSpec& v, double a, double omega0x);

}  // namespace q1d
