#include "q1d/nls.hpp"

#include <cmath>

namespace q1d {

double NLSField::mass() const {
  return values.squaredNorm() * grid.dz();
}

double NLSField::energy() const {
  Vec c = grid.to_coeffs(values);
  double kinetic = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    const double k = grid.wavenumber(m);
    kinetic += k * k * std::norm(c[m]);
  }
  double quartic = 0.0;
  for (int n = 0; n < grid.size(); ++n) quartic += std::pow(std::abs(values[n]), 4);
  quartic *= grid.dz();
  return kinetic - 0.5 * coupling * quartic;
}

double NLSField::momentum() const {
  Vec c = grid.to_coeffs(values);
  double p = 0.0;
  for (int m = 0; m < grid.size(); ++m)
    p += grid.wavenumber(m) * std::norm(c[m]);
  return p;
}

NLSField soliton_field(const FourierGrid1D& grid, double coupling) {
  if (coupling <= 0.0) throw DomainError("soliton_field: need focusing coupling");
  const double eta = coupling / 4.0;
  NLSField f{grid, Vec(grid.size()), coupling, 0.0};
  for (int n = 0; n < grid.size(); ++n)
    f.values[n] = std::sqrt(eta / 2.0) / std::cosh(eta * grid.node(n));
  return f;
}

NLSField gaussian_field(const FourierGrid1D& grid, double coupling, double width) {
  NLSField f{grid, Vec(grid.size()), coupling, 0.0};
  for (int n = 0; n < grid.size(); ++n) {
    const double z = grid.node(n);
    f.values[n] = std::exp(-z * z / (2.0 * width * width));
  }
  f.values /= std::sqrt(f.mass());
  return f;
}

namespace {

// unit-modulus phase factor; the normalization removes the fixed O(eps)
// modulus bias that would otherwise accumulate linearly in the step count
Complex unit_phase(double th) {
  const double c = std::cos(th), s = std::sin(th);
  const double r = std::sqrt(c * c + s * s);
  return Complex(c / r, s / r);
}

void kinetic_phase(NLSField& f, double dt) {
  Vec c = f.grid.to_coeffs(f.values);
  for (int m = 0; m < f.grid.size(); ++m) {
    const double k = f.grid.wavenumber(m);
    c[m] *= unit_phase(-dt * k * k);
  }
  f.values = f.grid.to_grid(c);
}

void nonlinear_phase(NLSField& f, double dt) {
  for (int n = 0; n < f.grid.size(); ++n)
    f.values[n] *= unit_phase(dt * f.coupling * std::norm(f.values[n]));
}

}  // namespace

NLSTrajectory nls_evolve(const NLSField& phi0, double t_final, double dt,
                         const NLSOptions& opts) {
  if (dt == 0.0) throw DomainError("nls_evolve: dt must be nonzero");
  NLSTrajectory traj;
  NLSField f = phi0;
  const double ceiling = opts.blowup_factor * std::max(f.sup_norm(), 1e-300);
  traj.times.push_back(f.time);
  traj.fields.push_back(f);
  const double mass0 = f.mass();
  const long steps = std::lround(std::abs(t_final / dt));
  for (long s = 1; s <= steps; ++s) {
    kinetic_phase(f, 0.5 * dt);
    nonlinear_phase(f, dt);
    kinetic_phase(f, 0.5 * dt);
    // every substep is unitary; rescaling removes the accumulated
    // transform roundoff so the mass stays pinned
    f.values *= std::sqrt(mass0 / f.mass());
    f.time += dt;
    if (f.sup_norm() > ceiling)
      throw ConvergenceError(
          "nls_evolve: sup-norm ceiling breached (resolution failure)");
    if (s % opts.sample_stride == 0 || s == steps) {
      traj.times.push_back(f.time);
      traj.fields.push_back(f);
    }
  }
  return traj;
}

NLSGroundResult nls_imaginary_time_ground(const FourierGrid1D& grid, double trap,
                                          double g, double tau, double tol,
                                          int max_iters) {
  NLSField f = gaussian_field(grid, 0.0, 1.0);
  auto energy_of = [&](const NLSField& u) {
    Vec c = grid.to_coeffs(u.values);
    double e = 0.0;
    for (int m = 0; m < grid.size(); ++m)
      e += grid.wavenumber(m) * grid.wavenumber(m) * std::norm(c[m]);
    for (int n = 0; n < grid.size(); ++n) {
      const double z = grid.node(n);
      const double a2 = std::norm(u.values[n]);
      e += grid.dz() * (trap * z * z * a2 + 0.5 * g * a2 * a2);
    }
    return e;
  };
  NLSGroundResult res{f, energy_of(f), {}};
  res.energy_trace.push_back(res.energy);
  double step = tau;
  for (int it = 0; it < max_iters; ++it) {
    NLSField trial = res.field;
    // Strang-split imaginary-time step with renormalization
    Vec c = grid.to_coeffs(trial.values);
    for (int m = 0; m < grid.size(); ++m) {
      const double k = grid.wavenumber(m);
      c[m] *= std::exp(-0.5 * step * k * k);
    }
    trial.values = grid.to_grid(c);
    for (int n = 0; n < grid.size(); ++n) {
      const double z = grid.node(n);
      const double pot = trap * z * z + g * std::norm(trial.values[n]);
      trial.values[n] *= std::exp(-step * pot);
    }
    c = grid.to_coeffs(trial.values);
    for (int m = 0; m < grid.size(); ++m) {
      const double k = grid.wavenumber(m);
      c[m] *= std::exp(-0.5 * step * k * k);
    }
    trial.values = grid.to_grid(c);
    trial.values /= std::sqrt(trial.mass());
    const double e_new = energy_of(trial);
    if (e_new > res.energy + 1e-15) {
      step *= 0.5;  // overshoot; retry smaller
      if (step < 1e-8)
        throw ConvergenceError("nls_imaginary_time_ground: step underflow");
      continue;
    }
    const bool done = res.energy - e_new < tol;
    res.field = trial;
    res.energy = e_new;
    res.energy_trace.push_back(e_new);
    if (done) return res;
  }
  throw ConvergenceError("nls_imaginary_time_ground: no convergence within cap");
}

}  // namespace q1d
