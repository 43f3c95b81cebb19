#pragma once

#include <map>
#include <memory>
#include <vector>

#include "q1d/basis.hpp"
#include "q1d/common.hpp"
#include "q1d/operators.hpp"
#include "q1d/state.hpp"

namespace q1d {

// Discrete kernel of the k-particle reduced density matrix; hermitian,
// positive, unit trace for normalized pure states.
struct DensityMatrix {
  int order;
  std::shared_ptr<const SingleParticleBasis> basis;
  Mat kernel;  // d^k x d^k

  double trace() const { return kernel.trace().real(); }
};

// k-particle kernel over the z-grid only (transverse part traced out).
struct ReducedZDensity {
  int order;
  int z_size;
  double box_length;
  Mat kernel;  // M_z^k x M_z^k
};

DensityMatrix reduce_marginal(const ManyBodyState& psi, int k,
                              long max_entries = 64L * 1024 * 1024);

// Trace out the last particle.
DensityMatrix partial_trace_last(const DensityMatrix& gamma);

// Trace out all transverse coordinates.
ReducedZDensity trace_x(const DensityMatrix& gamma);

double trace_distance(const Mat& a, const Mat& b);
double hs_distance(const Mat& a, const Mat& b);

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.kernel, b.kernel);
}
inline double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return hs_distance(a.kernel, b.kernel);
}

// Finite test-operator family for the weak* surrogate metric: per-particle
// products of Hermite-level caps and z-frequency band limits at dyadic
// cutoffs; every member is an orthogonal projection (operator norm 1).
struct MetricConfig {
  std::vector<int> caps = {2, 4, 8};

  static MetricConfig defaults() { return MetricConfig{}; }
};

double dk_metric(const DensityMatrix& a, const DensityMatrix& b,
                 const MetricConfig& cfg = MetricConfig::defaults());

// Tr | gamma^(1) - |h (x) phi><h (x) phi| |, the quantity inside the
// propagation-of-chaos limit.  phi is given by its z-basis coefficients.
double factorization_gap(const DensityMatrix& gamma1, const Vec& phi_coeffs);

struct SectorWeights {
  // ||P_alpha psi|| keyed by the number of excited particles is reported
  // as the root sum of squares over all alpha with that |alpha|.
  std::map<int, double> by_excited_count;
  // per-tuple weights, tuple encoded as bits (particle p -> bit p)
  std::vector<double> by_tuple;
};

SectorWeights sector_weights(const ManyBodyState& psi);

// |Tr P_alpha gamma P_beta| for all tuple pairs up to |alpha|,|beta| <= 2.
RMat sector_trace_table(const DensityMatrix& gamma);

}  // namespace q1d
