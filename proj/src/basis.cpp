#include "q1d/basis.hpp"

namespace q1d {

SingleParticleBasis::SingleParticleBasis(int levels, int quad_nodes, int z_points,
                                         double z_length)
    : x_(levels, quad_nodes), z_(z_points, z_length) {}

SingleParticleBasis::Descriptor SingleParticleBasis::descriptor() const {
  return {x_.levels(), x_.quad_nodes(), z_.size(), z_.box_length(), 1};
}

Vec SingleParticleBasis::separable_coeffs(int ix0, const Vec& z_coeffs) const {
  if (ix0 < 0 || ix0 >= x_size())
    throw DomainError("separable_coeffs: x mode out of range");
  if (z_coeffs.size() != z_size())
    throw ShapeError("separable_coeffs: z coefficient size mismatch");
  Vec c = Vec::Zero(size());
  for (int iz = 0; iz < z_size(); ++iz) c[index(ix0, iz)] = z_coeffs[iz];
  return c;
}

long SingleParticleBasis::grid_size() const {
  return static_cast<long>(x_.quad_nodes()) * x_.quad_nodes() * z_.size();
}

RVec SingleParticleBasis::grid_weights() const {
  const int g = x_.quad_nodes();
  const int mz = z_.size();
  RVec w(grid_size());
  const RVec& tw = x_.rule().total_weights;
  for (int g1 = 0; g1 < g; ++g1)
    for (int g2 = 0; g2 < g; ++g2)
      for (int n = 0; n < mz; ++n)
        w[(static_cast<long>(g1) * g + g2) * mz + n] = tw[g1] * tw[g2] * z_.dz();
  return w;
}

Vec SingleParticleBasis::to_position_grid(const Vec& coeffs) const {
  if (coeffs.size() != size())
    throw ShapeError("to_position_grid: coefficient size mismatch");
  const int g = x_.quad_nodes();
  const int mz = z_.size();
  const auto& modes = x_.modes();
  const RMat& tab = x_.eval_table();
  Vec out = Vec::Zero(grid_size());
  Vec zbuf(mz);
  for (int g1 = 0; g1 < g; ++g1)
    for (int g2 = 0; g2 < g; ++g2) {
      zbuf.setZero();
      for (int ix = 0; ix < x_.size(); ++ix) {
        const double mode_val = tab(g1, modes[ix].n1) * tab(g2, modes[ix].n2);
        if (mode_val == 0.0) continue;
        for (int m = 0; m < mz; ++m) zbuf[m] += mode_val * coeffs[index(ix, m)];
      }
      out.segment((static_cast<long>(g1) * g + g2) * mz, mz) = z_.to_grid(zbuf);
    }
  return out;
}

Vec SingleParticleBasis::from_position_grid(const Vec& values) const {
  if (values.size() != grid_size())
    throw ShapeError("from_position_grid: grid size mismatch");
  const int g = x_.quad_nodes();
  const int mz = z_.size();
  const auto& modes = x_.modes();
  const RMat& tab = x_.eval_table();
  const RVec& tw = x_.rule().total_weights;
  Vec out = Vec::Zero(size());
  for (int g1 = 0; g1 < g; ++g1)
    for (int g2 = 0; g2 < g; ++g2) {
      const Vec zc =
          z_.to_coeffs(values.segment((static_cast<long>(g1) * g + g2) * mz, mz));
      const double w = tw[g1] * tw[g2];
      for (int ix = 0; ix < x_.size(); ++ix) {
        const double mode_val = tab(g1, modes[ix].n1) * tab(g2, modes[ix].n2);
        if (mode_val == 0.0) continue;
        for (int m = 0; m < mz; ++m) out[index(ix, m)] += w * mode_val * zc[m];
      }
    }
  return out;
}

std::shared_ptr<const SingleParticleBasis> build_basis(int levels, int quad_nodes,
                                                       int z_points,
                                                       double z_length) {
  return std::make_shared<const SingleParticleBasis>(levels, quad_nodes, z_points,
                                                     z_length);
}

}  // namespace q1d
