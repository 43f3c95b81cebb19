#pragma once

#include <vector>

#include "q1d/common.hpp"
#include "q1d/fourier_grid.hpp"

namespace q1d {

// Complex field phi(z) on the periodic grid, evolved by the 1D focusing
// cubic NLS  i phi_t = -phi_zz - c |phi|^2 phi.
struct NLSField {
  FourierGrid1D grid;
  Vec values;  // grid samples
  double coupling = 0.0;
  double time = 0.0;

  double mass() const;      // int |phi|^2 dz
  double energy() const;    // int (|phi_z|^2 - (c/2) |phi|^4) dz
  double momentum() const;  // Im int conj(phi) phi_z dz
  Vec coeffs() const { return grid.to_coeffs(values); }
  double sup_norm() const { return values.cwiseAbs().maxCoeff(); }
};

// Mass-one bright soliton matched to coupling c:
//   phi(z) = sqrt(eta/2) sech(eta z), eta = c / 4.
NLSField soliton_field(const FourierGrid1D& grid, double coupling);

// Mass-one Gaussian of width w.
NLSField gaussian_field(const FourierGrid1D& grid, double coupling,
                        double width = 1.0);

struct NLSTrajectory {
  std::vector<double> times;
  std::vector<NLSField> fields;
};

struct NLSOptions {
  int sample_stride = 1;
  double blowup_factor = 1e3;  // halt if sup norm exceeds factor * initial
};

// Strang-split propagation; exact mass per step up to roundoff.  A breach
// of the sup-norm ceiling signals resolution failure (the 1D cubic NLS is
// subcritical) and raises ConvergenceError.
NLSTrajectory nls_evolve(const NLSField& phi0, double t_final, double dt,
                         const NLSOptions& opts = {});

struct NLSGroundResult {
  NLSField field;
  double energy;
  std::vector<double> energy_trace;
};

// Normalized imaginary-time flow for the 1D energy functional
//   int ( |phi_z|^2 + trap * z^2 |phi|^2 + (g/2) |phi|^4 ) dz
// (g > 0 defocusing, g < 0 focusing), mass fixed to 1.
NLSGroundResult nls_imaginary_time_ground(const FourierGrid1D& grid, double trap,
                                          double g, double tau, double tol,
                                          int max_iters = 20000);

}  // namespace q1d
