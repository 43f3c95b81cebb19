#include "q1d/scaling.hpp"

#include <cmath>
#include <limits>

#include "q1d/hermite.hpp"

namespace q1d {

namespace {

constexpr double kBetaMax = 3.0 / 7.0;

void check_beta(double beta, const char* who) {
  if (!(beta > 0.0 && beta < kBetaMax))
    throw DomainError(std::string(who) + ": beta must lie in (0, 3/7)");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// The four restriction curves of the upper window exponent.
double term_kinetic(double beta) { return (1.0 - beta) / beta; }

double term_transfer(double beta) {
  if (beta <= 0.2) return kInf;
  return (0.6 - beta) / (beta - 0.2);
}

double term_width(double beta) { return 2.0 * beta / (1.0 - 2.0 * beta); }

double term_moment(double beta) { return (7.0 / 8.0 - beta) / beta; }

}  // namespace

double v1_exponent(double beta) {
  check_beta(beta, "v1_exponent");
  return beta / (1.0 - beta);
}

V2Result v2_exponent(double beta) {
  check_beta(beta, "v2_exponent");
  const double others =
      std::min({term_kinetic(beta), term_transfer(beta), term_moment(beta)});
  const double strict_term = term_width(beta);
  if (strict_term < others) return {strict_term, true};
  return {others, false};
}

double vE_exponent(double beta) {
  check_beta(beta, "vE_exponent");
  return std::min({term_kinetic(beta), term_transfer(beta), term_moment(beta)});
}

OmegaWindow omega_window(double beta, int n_particles, double c1, double c2,
                         WindowMode mode) {
  if (n_particles < 2) throw DomainError("omega_window: N must be >= 2");
  if (c1 <= 0.0 || c2 <= 0.0)
    throw DomainError("omega_window: window constants must be positive");
  OmegaWindow w{};
  w.lower = c1 * std::pow(n_particles, v1_exponent(beta));
  if (mode == WindowMode::kDynamics) {
    const V2Result v2 = v2_exponent(beta);
    w.upper = c2 * std::pow(n_particles, v2.value);
    w.upper_open = v2.strict;
  } else {
    w.upper = c2 * std::pow(n_particles, vE_exponent(beta));
    w.upper_open = false;
  }
  w.empty = w.upper_open ? (w.lower >= w.upper) : (w.lower > w.upper);
  return w;
}

CouplingReport coupling_report(const PotentialSpec& v, double a, double omega0x) {
  if (v.integral() > 0.0)
    throw DomainError("coupling_report: potential must have nonpositive integral");
  CouplingReport r{};
  r.b0 = std::abs(v.integral());
  r.h_quartic = h_quartic_quadrature();
  r.c_eff = r.b0 * r.h_quartic;
  r.g = 8.0 * PI * a * omega0x * r.h_quartic;
  r.scat = a / (8.0 * PI) * v.integral();
  return r;
}

}  // namespace q1d
