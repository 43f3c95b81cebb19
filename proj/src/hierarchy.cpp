#include "q1d/hierarchy.hpp"

#include <cmath>

namespace q1d {

namespace {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Mat grid_matrix(const FourierGrid1D& g, bool to_grid_dir) {
  const int m = g.size();
  Mat f(m, m);
  for (int j = 0; j < m; ++j) {
    Vec unit = Vec::Zero(m);
    unit[j] = 1.0;
    f.col(j) = to_grid_dir ? g.to_grid(unit) : g.to_coeffs(unit);
  }
  return f;
}

// Apply F along one row axis of a kernel whose rows decompose into naxes
// axes of dimension m (axis 0 most significant).
Mat transform_rows(const Mat& k, const Mat& f, int axis, int naxes, int m) {
  const long rows = k.rows(), cols = k.cols();
  const long stride = ipow(m, naxes - 1 - axis);
  Mat out(rows, cols);
  Vec slab(m), res(m);
  const long outer = rows / (stride * m);
  for (long c = 0; c < cols; ++c)
    for (long o = 0; o < outer; ++o)
      for (long s = 0; s < stride; ++s) {
        const long base = o * stride * m + s;
        for (int i = 0; i < m; ++i) slab[i] = k(base + i * stride, c);
        res.noalias() = f * slab;
        for (int i = 0; i < m; ++i) out(base + i * stride, c) = res[i];
      }
  return out;
}

Mat transform_cols(const Mat& k, const Mat& f, int axis, int naxes, int m) {
  const long rows = k.rows(), cols = k.cols();
  const long stride = ipow(m, naxes - 1 - axis);
  Mat out(rows, cols);
  Vec slab(m), res(m);
  const long outer = cols / (stride * m);
  for (long r = 0; r < rows; ++r)
    for (long o = 0; o < outer; ++o)
      for (long s = 0; s < stride; ++s) {
        const long base = o * stride * m + s;
        for (int i = 0; i < m; ++i) slab[i] = k(r, base + i * stride);
        res.noalias() = f.transpose() * slab;
        for (int i = 0; i < m; ++i) out(r, base + i * stride) = res[i];
      }
  return out;
}

}  // namespace

Vec free_flow(const FourierGrid1D& grid, const Vec& coeffs, double t) {
  if (coeffs.size() != grid.size()) throw ShapeError("free_flow: size mismatch");
  Vec out = coeffs;
  for (int m = 0; m < grid.size(); ++m) {
    const double k = grid.wavenumber(m);
    const double th = -t * k * k;
    out[m] *= Complex(std::cos(th), std::sin(th));
  }
  return out;
}

ReducedZDensity collision_op(const ReducedZDensity& gamma, int j) {
  const int kp1 = gamma.order;
  if (kp1 < 2) throw DomainError("collision_op: need at least a pair density");
  if (j < 1 || j > kp1 - 1) throw DomainError("collision_op: j out of range");
  const int m = gamma.z_size;
  FourierGrid1D grid(m, gamma.box_length);
  const Mat f = grid_matrix(grid, true);
  const Mat finv = grid_matrix(grid, false);
  // plain grid representation
  Mat g = gamma.kernel;
  for (int ax = 0; ax < kp1; ++ax) g = transform_rows(g, f, ax, kp1, m);
  for (int ax = 0; ax < kp1; ++ax) g = transform_cols(g, finv, ax, kp1, m);

  const int k = kp1 - 1;
  const long dk = ipow(m, k);
  const double inv_dz = 1.0 / grid.dz();
  Mat out(dk, dk);
  std::vector<int> ri(k), ci(k);
  for (long r = 0; r < dk; ++r) {
    long rem = r;
    for (int p = k - 1; p >= 0; --p) {
      ri[p] = static_cast<int>(rem % m);
      rem /= m;
    }
    for (long c = 0; c < dk; ++c) {
      rem = c;
      for (int p = k - 1; p >= 0; --p) {
        ci[p] = static_cast<int>(rem % m);
        rem /= m;
      }
      const int pin1 = ri[j - 1];
      const int pin2 = ci[j - 1];
      out(r, c) = inv_dz * (g(r * m + pin1, c * m + pin1) -
                            g(r * m + pin2, c * m + pin2));
    }
  }
  for (int ax = 0; ax < k; ++ax) out = transform_rows(out, finv, ax, k, m);
  for (int ax = 0; ax < k; ++ax) out = transform_cols(out, f, ax, k, m);
  return ReducedZDensity{k, m, gamma.box_length, std::move(out)};
}

namespace {

// Tr_{k+1..N} [ V(r_j - r_{k+1}) , |psi><psi| ] on the first-k space.
Mat traced_pair_commutator(const HamiltonianSpec& spec, const ManyBodyState& psi,
                           int k) {
  const int n = psi.particles();
  const int d = psi.basis().size();
  const long dk = ipow(d, k);
  const long dr = ipow(d, n - k);
  using RowMat =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> mp(psi.coeffs().data(), dk, dr);
  Mat acc = Mat::Zero(dk, dk);
  for (int j = 0; j < k; ++j) {
    ManyBodyState phi = apply_pair_potential(spec, psi, j, k);
    Eigen::Map<const RowMat> mf(phi.coeffs().data(), dk, dr);
    Mat t = mf * mp.adjoint();
    acc += t - t.adjoint();
  }
  return acc;
}

RVec k_particle_diag(const HamiltonianSpec& spec, int k) {
  const int d = spec.basis().size();
  const long dk = ipow(d, k);
  RVec e(dk);
  const RVec& one = spec.one_body_diag();
  for (long idx = 0; idx < dk; ++idx) {
    long rem = idx;
    double s = 0.0;
    for (int p = 0; p < k; ++p) {
      s += one[static_cast<int>(rem % d)];
      rem /= d;
    }
    e[idx] = s;
  }
  return e;
}

}  // namespace

HierarchyResidual bbgky_residual(const NBodyTrajectory& traj,
                                 const HamiltonianSpec& spec, int k,
                                 double dt_fd) {
  const size_t ns = traj.times.size();
  if (ns < 3) throw DomainError("bbgky_residual: insufficient samples");
  const int n = spec.particles();
  if (k < 1 || k > n) throw DomainError("bbgky_residual: k out of range");
  const double delta = traj.times[1] - traj.times[0];
  const long stride = std::lround(dt_fd / delta);
  if (stride < 1 || std::abs(stride * delta - dt_fd) > 1e-10 * std::max(1.0, dt_fd))
    throw DomainError("bbgky_residual: dt_fd must be a multiple of the sample spacing");

  HierarchyResidual res;
  res.order = k;
  res.dt_fd = dt_fd;
  const RVec ediag = k_particle_diag(spec, k);
  for (size_t i = stride; i + stride < ns; ++i) {
    const Mat g_minus = reduce_marginal(traj.states[i - stride], k).kernel;
    const Mat g_plus = reduce_marginal(traj.states[i + stride], k).kernel;
    const Mat g = reduce_marginal(traj.states[i], k).kernel;
    Mat defect = Complex(0.0, 1.0) * (g_plus - g_minus) / (2.0 * dt_fd);
    // one-body commutator (diagonal symbol)
    const long dk = g.rows();
    for (long r = 0; r < dk; ++r)
      for (long c = 0; c < dk; ++c)
        defect(r, c) -= (ediag[r] - ediag[c]) * g(r, c);
    // intra-group interaction commutator
    if (k >= 2 && !spec.potential().empty()) {
      ManyBodyState col(spec.basis_ptr(), k);
      Mat vg = Mat::Zero(dk, dk);
      for (long c = 0; c < dk; ++c) {
        col.coeffs() = g.col(c);
        Vec out = Vec::Zero(dk);
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            spec.pair().apply_add(col, out, a, b, 1.0);
        vg.col(c) = out;
      }
      defect -= (vg - vg.adjoint()) / n;
    }
    // collision term against the (k+1)-marginal
    if (k < n && !spec.potential().empty()) {
      const double w = static_cast<double>(n - k) / n;
      defect -= w * traced_pair_commutator(spec, traj.states[i], k);
    }
    res.times.push_back(traj.times[i]);
    res.residuals.push_back(defect.norm());
  }
  return res;
}

namespace {

double hermite_quartic_1d(int n) {
  const GaussHermiteRule rule = gauss_hermite(std::max(4 * n + 8, 24));
  double s = 0.0;
  for (long g = 0; g < rule.nodes.size(); ++g) {
    const double u = rule.nodes[g] / std::sqrt(2.0);
    const double psi = hermite_function(n, u);
    s += rule.total_weights[g] / std::sqrt(2.0) * psi * psi * psi * psi;
  }
  return s;
}

// One tensor-slot factor of an elementary term: either the dense leading
// difference gamma(t) - U(t) gamma(0), or a short list of rank-one dyads
// over the vector pool.
struct SlotFactor {
  bool dense = false;
  struct Dyad {
    Complex coef;
    int ket;
    int bra;
  };
  std::vector<Dyad> dyads;
};

struct ProductTerm {
  Complex coef;
  std::vector<int> slots;  // indices into the factor table
};

}  // namespace

HierarchyResidual gp_residual(const NLSTrajectory& traj, int k, double coupling,
                              const GPResidualOptions& opts) {
  if (k < 1 || k > 3) throw DomainError("gp_residual: order must be 1..3");
  if (traj.times.size() < 2) throw DomainError("gp_residual: short trajectory");
  const FourierGrid1D& grid = traj.fields.front().grid;

  double c_eff = coupling;
  if (opts.variant == GPVariant::kCoupled)
    c_eff = coupling * hermite_quartic_1d(opts.x_mode) *
            hermite_quartic_1d(opts.x_mode);
  if (std::abs(traj.fields.front().coupling - c_eff) > 1e-10)
    throw ConfigError("gp_residual: trajectory coupling does not match variant");

  std::vector<double> evals = opts.eval_times;
  if (evals.empty()) evals.push_back(traj.times.back());

  HierarchyResidual res;
  res.order = k;
  res.dt_fd = traj.times[1] - traj.times[0];

  for (double t : evals) {
    // locate the sample index of t
    size_t it = 0;
    bool found = false;
    for (size_t i = 0; i < traj.times.size(); ++i)
      if (std::abs(traj.times[i] - t) < 1e-9) {
        it = i;
        found = true;
        break;
      }
    if (!found) throw DomainError("gp_residual: eval time not on the sample grid");
    for (size_t i = 1; i <= it; ++i)
      if (std::abs(traj.times[i] - traj.times[i - 1] - res.dt_fd) > 1e-10)
        throw DomainError("gp_residual: trajectory must be uniformly sampled");
    if (it == 0) {
      res.times.push_back(t);
      res.residuals.push_back(0.0);
      continue;
    }

    // vector pool: per sample, the propagated field and propagated g*phi
    std::vector<Vec> pool;
    std::vector<int> u_of(it + 1), y_of(it + 1);
    for (size_t i = 0; i <= it; ++i) {
      const NLSField& f = traj.fields[i];
      const double tau = t - traj.times[i];
      u_of[i] = static_cast<int>(pool.size());
      pool.push_back(free_flow(grid, f.coeffs(), tau));
      Vec gphi(grid.size());
      for (int nn = 0; nn < grid.size(); ++nn)
        gphi[nn] = std::norm(f.values[nn]) * f.values[nn];
      y_of[i] = static_cast<int>(pool.size());
      pool.push_back(free_flow(grid, grid.to_coeffs(gphi), tau));
    }
    const int a_t = u_of[it];  // tau = 0: the field at time t itself
    const int b_0 = u_of[0];   // U(t) applied to the initial field

    // gamma(t) - U(t) gamma(0) assembled densely; writing the k-fold
    // product difference as sum_j B..B (A-B) A..A keeps every remaining
    // term small, so the Gram evaluation below is cancellation-free.
    Mat delta = pool[a_t] * pool[a_t].adjoint() - pool[b_0] * pool[b_0].adjoint();

    std::vector<SlotFactor> factors;
    const int f_delta = 0;
    factors.push_back({true, {}});
    const int f_a = 1;
    factors.push_back({false, {{Complex(1.0, 0.0), a_t, a_t}}});
    const int f_b = 2;
    factors.push_back({false, {{Complex(1.0, 0.0), b_0, b_0}}});
    std::vector<int> f_p(it + 1), f_c(it + 1);
    for (size_t i = 0; i <= it; ++i) {
      f_p[i] = static_cast<int>(factors.size());
      factors.push_back({false, {{Complex(1.0, 0.0), u_of[i], u_of[i]}}});
      f_c[i] = static_cast<int>(factors.size());
      factors.push_back({false,
                         {{Complex(1.0, 0.0), y_of[i], u_of[i]},
                          {Complex(-1.0, 0.0), u_of[i], y_of[i]}}});
    }

    std::vector<ProductTerm> terms;
    for (int j = 0; j < k; ++j) {
      ProductTerm pt{Complex(1.0, 0.0), std::vector<int>(k, f_a)};
      for (int p = 0; p < j; ++p) pt.slots[p] = f_b;
      pt.slots[j] = f_delta;
      terms.push_back(pt);
    }
    const double ds = res.dt_fd;
    for (size_t i = 0; i <= it; ++i) {
      const double w = (i == 0 || i == it) ? 0.5 * ds : ds;
      for (int j = 0; j < k; ++j) {
        ProductTerm pt{Complex(0.0, -c_eff * w), std::vector<int>(k, f_p[i])};
        pt.slots[j] = f_c[i];
        terms.push_back(pt);
      }
    }

    const int np = static_cast<int>(pool.size());
    Mat gram(np, np);
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q) gram(p, q) = pool[p].dot(pool[q]);
    // delta * pool for the dense-vs-dyad cross terms
    std::vector<Vec> dpool(pool.size());
    for (int p = 0; p < np; ++p) dpool[static_cast<size_t>(p)] = delta * pool[p];
    const double delta_sq = delta.squaredNorm();

    auto slot_dot = [&](int fa, int fb) -> Complex {
      const SlotFactor& a = factors[static_cast<size_t>(fa)];
      const SlotFactor& b = factors[static_cast<size_t>(fb)];
      if (a.dense && b.dense) return Complex(delta_sq, 0.0);
      if (a.dense) {
        // <Delta, sum c |u><v|> = sum c conj(u^H Delta v)
        Complex s(0.0, 0.0);
        for (const auto& d : b.dyads)
          s += d.coef * std::conj(pool[d.ket].dot(dpool[static_cast<size_t>(d.bra)]));
        return s;
      }
      if (b.dense) {
        Complex s(0.0, 0.0);
        for (const auto& d : a.dyads)
          s += std::conj(d.coef) *
               pool[d.ket].dot(dpool[static_cast<size_t>(d.bra)]);
        return s;
      }
      Complex s(0.0, 0.0);
      for (const auto& da : a.dyads)
        for (const auto& db : b.dyads)
          s += std::conj(da.coef) * db.coef * gram(da.ket, db.ket) *
               std::conj(gram(da.bra, db.bra));
      return s;
    };

    double norm_sq = 0.0;
    const size_t nt = terms.size();
    for (size_t a = 0; a < nt; ++a)
      for (size_t b = 0; b < nt; ++b) {
        Complex prod = std::conj(terms[a].coef) * terms[b].coef;
        for (int j = 0; j < k && prod != Complex(0.0, 0.0); ++j)
          prod *= slot_dot(terms[a].slots[j], terms[b].slots[j]);
        norm_sq += prod.real();
      }
    res.times.push_back(t);
    res.residuals.push_back(std::sqrt(std::max(norm_sq, 0.0)));
  }
  return res;
}

HierarchyResidual gp_residual_differential(const NLSTrajectory& traj,
                                           double coupling, double dt_fd) {
  if (traj.times.size() < 3)
    throw DomainError("gp_residual_differential: insufficient samples");
  const FourierGrid1D& grid = traj.fields.front().grid;
  const int m = grid.size();
  const double delta = traj.times[1] - traj.times[0];
  const long stride = std::lround(dt_fd / delta);
  if (stride < 1 || std::abs(stride * delta - dt_fd) > 1e-10)
    throw DomainError("gp_residual_differential: dt_fd must match sampling");
  const Mat f = grid_matrix(grid, true);
  const Mat finv = grid_matrix(grid, false);
  HierarchyResidual res;
  res.order = 1;
  res.dt_fd = dt_fd;
  auto rank1 = [&](size_t i) {
    const Vec c = traj.fields[i].coeffs();
    return Mat(c * c.adjoint());
  };
  for (size_t i = stride; i + stride < traj.times.size(); ++i) {
    const Mat g = rank1(i);
    Mat defect =
        Complex(0.0, 1.0) * (rank1(i + stride) - rank1(i - stride)) / (2.0 * dt_fd);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        const double kr = grid.wavenumber(r), kc = grid.wavenumber(c);
        defect(r, c) -= (kr * kr - kc * kc) * g(r, c);
      }
    // + c [ |phi|^2 , gamma ]
    Vec absq(m);
    for (int nn = 0; nn < m; ++nn) absq[nn] = std::norm(traj.fields[i].values[nn]);
    Mat mg = finv * absq.asDiagonal() * f;
    defect += coupling * (mg * g - g * mg);
    res.times.push_back(traj.times[i]);
    res.residuals.push_back(defect.norm());
  }
  return res;
}

namespace {

// int int F1(s) g_sigma(s - t) F2(t) ds dt for Hermite-series products,
// exact by the rotated Gauss-Hermite rule.  F1 = prod of series in `left`,
// F2 = prod of series in `right`; g is the normalized Gaussian of width
// sigma (sigma <= 0 encodes the delta: a single 1D integral).
double cross_gaussian_integral(const std::vector<RVec>& left,
                               const std::vector<RVec>& right, double sigma) {
  int nmax = 2;
  for (const auto& v : left) nmax = std::max<int>(nmax, v.size());
  for (const auto& v : right) nmax = std::max<int>(nmax, v.size());
  const int gq = std::max(4 * nmax + 8, 32);
  const GaussHermiteRule rule = gauss_hermite(gq);
  auto series = [](const std::vector<RVec>& fs, double x) {
    double prod = 1.0;
    for (const auto& cvec : fs) {
      const auto psi = hermite_functions(static_cast<int>(cvec.size()), x);
      double v = 0.0;
      for (long n = 0; n < cvec.size(); ++n) v += cvec[n] * psi[static_cast<size_t>(n)];
      prod *= v;
    }
    return prod;
  };
  if (sigma <= 0.0) {
    double s = 0.0;
    for (long g = 0; g < rule.nodes.size(); ++g) {
      const double u = rule.nodes[g] / std::sqrt(2.0);
      s += rule.total_weights[g] / std::sqrt(2.0) * series(left, u) *
           series(right, u);
    }
    return s;
  }
  const double cq = 0.5 + 1.0 / (2.0 * sigma * sigma);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * PI));
  double s = 0.0;
  for (long ga = 0; ga < rule.nodes.size(); ++ga) {
    const double p = rule.nodes[ga] / std::sqrt(2.0);
    for (long gb = 0; gb < rule.nodes.size(); ++gb) {
      const double q = rule.nodes[gb] / std::sqrt(cq);
      const double sg = norm * std::exp(-q * q / (2.0 * sigma * sigma));
      s += rule.total_weights[ga] * rule.total_weights[gb] /
           std::sqrt(2.0 * cq) * sg * series(left, p + 0.5 * q) *
           series(right, p - 0.5 * q);
    }
  }
  return s;
}

}  // namespace

DeltaRateReport delta_rate_study(const MollifierSpec& f, const RVec& state_x,
                                 const RVec& state_z, const RVec& test_x,
                                 const RVec& test_z, double kappa,
                                 const std::vector<double>& alphas) {
  if (f.coefs.size() != f.widths.size() || f.coefs.empty())
    throw DomainError("delta_rate_study: malformed mollifier");
  double total = 0.0;
  for (double c : f.coefs) total += c;
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("delta_rate_study: mollifier must integrate to one");
  if (!(kappa > 0.0 && kappa < 0.5))
    throw DomainError("delta_rate_study: kappa must lie in (0, 1/2)");

  // <u, w> factor (orthonormal series: plain dot products)
  const long nx = std::min(state_x.size(), test_x.size());
  const long nz = std::min(state_z.size(), test_z.size());
  const double ox = test_x.head(nx).dot(state_x.head(nx));
  const double oz = test_z.head(nz).dot(state_z.head(nz));
  const double c1 = ox * ox * oz;

  const std::vector<RVec> left_x = {test_x, state_x};
  const std::vector<RVec> right_x = {state_x, state_x};
  const std::vector<RVec> left_z = {test_z, state_z};
  const std::vector<RVec> right_z = {state_z, state_z};

  const double qx_delta = cross_gaussian_integral(left_x, right_x, -1.0);
  const double qz_delta = cross_gaussian_integral(left_z, right_z, -1.0);
  const double c2_delta = qx_delta * qx_delta * qz_delta;

  DeltaRateReport rep;
  rep.kappa = kappa;
  rep.alphas = alphas;
  for (double a : alphas) {
    double c2 = 0.0;
    for (size_t i = 0; i < f.coefs.size(); ++i) {
      const double sigma = a * f.widths[i];
      const double qx = cross_gaussian_integral(left_x, right_x, sigma);
      const double qz = cross_gaussian_integral(left_z, right_z, sigma);
      c2 += f.coefs[i] * qx * qx * qz;
    }
    rep.errors.push_back(std::abs(c1 * (c2 - c2_delta)));
  }

  // least-squares slope of log error vs log alpha
  const int n = static_cast<int>(alphas.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(alphas[static_cast<size_t>(i)]);
    const double y = std::log(std::max(rep.errors[static_cast<size_t>(i)], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  rep.slope = (n * sxy - sx * sy) / denom;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(alphas[static_cast<size_t>(i)]);
    const double y = std::log(std::max(rep.errors[static_cast<size_t>(i)], 1e-300));
    const double fit = rep.slope * x + (sy - rep.slope * sx) / n;
    ss_res += (y - fit) * (y - fit);
  }
  if (n > 2)
    rep.slope_stderr = std::sqrt(ss_res / (n - 2) / (sxx - sx * sx / n));
  return rep;
}

double space_time_bound_report(const NLSTrajectory& traj, double eps) {
  if (traj.times.size() < 2)
    throw DomainError("space_time_bound_report: short trajectory");
  const FourierGrid1D& grid = traj.fields.front().grid;
  const int m = grid.size();
  const Mat f = grid_matrix(grid, true);
  const Mat finv = grid_matrix(grid, false);
  RVec w(m);
  for (int i = 0; i < m; ++i) {
    const double k = grid.wavenumber(i);
    w[i] = std::pow(1.0 + k * k, 0.5 * eps);
  }
  double integral = 0.0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const NLSField& fl = traj.fields[i];
    const Vec c = fl.coeffs();
    RVec absq(m);
    for (int n = 0; n < m; ++n) absq[n] = std::norm(fl.values[n]);
    const Mat mg = finv * absq.cast<Complex>().asDiagonal() * f;
    const Mat gamma = c * c.adjoint();
    Mat b = mg * gamma - gamma * mg;
    for (int r = 0; r < m; ++r)
      for (int cc = 0; cc < m; ++cc) b(r, cc) *= w[r] * w[cc];
    const double step = (i == 0 || i + 1 == traj.times.size())
                            ? 0.5 * (traj.times[1] - traj.times[0])
                            : traj.times[i + 1] - traj.times[i];
    integral += step * b.norm();
  }
  return integral;
}

double interaction_delta_mismatch(
    const PotentialSpec& v, int n_particles, double omega,
    const std::shared_ptr<const SingleParticleBasis>& basis,
    const Vec& phi_z_coeffs) {
  const Vec u = basis->separable_coeffs(0, phi_z_coeffs);
  ManyBodyState psi = ManyBodyState::product(basis, 2, u);
  const PairInteraction vp = PairInteraction::scaled(v, n_particles, omega, *basis);
  const PairInteraction dp = PairInteraction::contact(*basis);
  Vec phi_v = Vec::Zero(psi.dim());
  vp.apply_add(psi, phi_v, 0, 1, 1.0);
  Vec phi_d = Vec::Zero(psi.dim());
  dp.apply_add(psi, phi_d, 0, 1, 1.0);
  const double b0 = std::abs(v.integral());
  const Complex val_v = psi.coeffs().dot(phi_v);
  const Complex val_d = psi.coeffs().dot(phi_d);
  return std::abs(val_v + b0 * val_d);
}

}  // namespace q1d
