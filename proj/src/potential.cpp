#include "q1d/potential.hpp"

#include <algorithm>
#include <cmath>

namespace q1d {

namespace {

// |f(rho)| integrated over R^3 for a radial profile, by composite Simpson
// on [0, R] with R covering all mixture tails.
double radial_l1(const PotentialSpec& v) {
  double rmax = 0.0;
  for (const auto& t : v.terms()) rmax = std::max(rmax, 10.0 * t.sigma);
  if (rmax <= 0.0) return 0.0;
  const int n = 4000;  // even
  const double h = rmax / n;
  auto f = [&](double rho) {
    return std::abs(v.radial_value(rho)) * rho * rho;
  };
  double sum = f(0.0) + f(rmax);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return 4.0 * PI * sum * h / 3.0;
}

double radial_linf(const PotentialSpec& v) {
  double rmax = 0.0;
  for (const auto& t : v.terms()) rmax = std::max(rmax, 8.0 * t.sigma);
  double best = 0.0;
  const int n = 8000;
  for (int i = 0; i <= n; ++i)
    best = std::max(best, std::abs(v.radial_value(rmax * i / n)));
  return best;
}

}  // namespace

PotentialSpec::PotentialSpec(std::vector<GaussianTerm> terms, double beta)
    : terms_(std::move(terms)), beta_(beta) {
  for (const auto& t : terms_) {
    if (t.depth <= 0.0 || t.sigma <= 0.0)
      throw DomainError("PotentialSpec: depths and widths must be positive");
    if (t.sign != 1 && t.sign != -1)
      throw DomainError("PotentialSpec: sign must be +1 or -1");
    integral_ += t.sign * t.depth * std::pow(2.0 * PI, 1.5) * std::pow(t.sigma, 3);
  }
  l1_ = radial_l1(*this);
  linf_ = radial_linf(*this);
}

PotentialSpec PotentialSpec::focusing(std::vector<GaussianTerm> terms,
                                      double beta) {
  PotentialSpec v(std::move(terms), beta);
  if (v.integral() > 0.0)
    throw DomainError("PotentialSpec::focusing: mixture must have nonpositive integral");
  return v;
}

PotentialSpec PotentialSpec::repulsive(std::vector<GaussianTerm> terms,
                                       double beta) {
  PotentialSpec v(std::move(terms), beta);
  for (const auto& t : v.terms())
    if (t.sign < 0)
      throw DomainError("PotentialSpec::repulsive: all components must be nonnegative");
  return v;
}

double PotentialSpec::value(double x1, double x2, double z) const {
  return radial_value(std::sqrt(x1 * x1 + x2 * x2 + z * z));
}

double PotentialSpec::radial_value(double rho) const {
  double v = 0.0;
  for (const auto& t : terms_)
    v += t.sign * t.depth * std::exp(-rho * rho / (2.0 * t.sigma * t.sigma));
  return v;
}

double scaled_potential(const PotentialSpec& v, int n_particles, double omega,
                        double x1, double x2, double z) {
  if (n_particles < 1) throw DomainError("scaled_potential: N must be >= 1");
  if (omega < 1.0) throw DomainError("scaled_potential: omega must be >= 1");
  const double b = v.beta();
  const double nw = n_particles * omega;
  const double pre = std::pow(n_particles, 3.0 * b) * std::pow(omega, 3.0 * b - 1.0);
  const double sx = std::pow(nw, b) / std::sqrt(omega);
  const double sz = std::pow(nw, b);
  return pre * v.value(sx * x1, sx * x2, sz * z);
}

}  // namespace q1d
