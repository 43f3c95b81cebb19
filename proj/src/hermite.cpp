#include "q1d/hermite.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace q1d {

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the
  // (physicists') Hermite recurrence, weights from the first eigenvector row.
  RMat jacobi = RMat::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = std::sqrt(i / 2.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(jacobi);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("gauss_hermite: Jacobi eigensolve failed");
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.quad_weights.resize(n);
  rule.total_weights.resize(n);
  const double mu0 = std::sqrt(PI);  // int e^{-x^2} dx
  for (int g = 0; g < n; ++g) {
    const double v0 = es.eigenvectors()(0, g);
    rule.quad_weights[g] = mu0 * v0 * v0;
    rule.total_weights[g] =
        rule.quad_weights[g] * std::exp(rule.nodes[g] * rule.nodes[g]);
  }
  return rule;
}

std::vector<double> hermite_functions(int nmax, double x) {
  std::vector<double> psi(static_cast<size_t>(std::max(nmax, 0)));
  if (nmax <= 0) return psi;
  const double g = std::exp(-0.5 * x * x) / std::pow(PI, 0.25);
  psi[0] = g;
  if (nmax == 1) return psi;
  psi[1] = std::sqrt(2.0) * x * g;
  for (int n = 1; n + 1 < nmax; ++n) {
    psi[n + 1] = std::sqrt(2.0 / (n + 1.0)) * x * psi[n] -
                 std::sqrt(n / (n + 1.0)) * psi[n - 1];
  }
  return psi;
}

double hermite_function(int n, double x) {
  return hermite_functions(n + 1, x)[static_cast<size_t>(n)];
}

Hermite2DBasis::Hermite2DBasis(int levels, int quad_nodes) : levels_(levels) {
  if (levels < 1) throw DomainError("Hermite2DBasis: levels must be >= 1");
  if (quad_nodes < levels + 1)
    throw DomainError("Hermite2DBasis: need at least levels+1 quadrature nodes");
  for (int l = 0; l < levels; ++l)
    for (int n1 = 0; n1 <= l; ++n1) modes_.push_back({n1, l - n1});
  rule_ = gauss_hermite(quad_nodes);
  table_.resize(quad_nodes, levels);
  for (int g = 0; g < quad_nodes; ++g) {
    const auto psi = hermite_functions(levels, rule_.nodes[g]);
    for (int n = 0; n < levels; ++n) table_(g, n) = psi[static_cast<size_t>(n)];
  }
}

double Hermite2DBasis::eval_mode(int mode, double x1, double x2) const {
  if (mode < 0 || mode >= size())
    throw DomainError("Hermite2DBasis::eval_mode: mode index out of range");
  const Mode m = modes_[static_cast<size_t>(mode)];
  return hermite_function(m.n1, x1) * hermite_function(m.n2, x2);
}

RMat Hermite2DBasis::gram() const {
  const int m = size();
  const int gq = quad_nodes();
  RMat gram = RMat::Zero(m, m);
  for (int g1 = 0; g1 < gq; ++g1) {
    for (int g2 = 0; g2 < gq; ++g2) {
      const double w = rule_.total_weights[g1] * rule_.total_weights[g2];
      for (int a = 0; a < m; ++a) {
        const double va = table_(g1, modes_[a].n1) * table_(g2, modes_[a].n2);
        for (int b = 0; b < m; ++b) {
          const double vb = table_(g1, modes_[b].n1) * table_(g2, modes_[b].n2);
          gram(a, b) += w * va * vb;
        }
      }
    }
  }
  return gram;
}

double h_quartic_quadrature(int n) {
  const GaussHermiteRule rule = gauss_hermite(n);
  double sum = 0.0;
  for (int g1 = 0; g1 < n; ++g1) {
    for (int g2 = 0; g2 < n; ++g2) {
      const double x1 = rule.nodes[g1];
      const double x2 = rule.nodes[g2];
      const double h = ground_h(x1, x2);
      sum += rule.total_weights[g1] * rule.total_weights[g2] * h * h * h * h;
    }
  }
  return sum;
}

}  // namespace q1d
