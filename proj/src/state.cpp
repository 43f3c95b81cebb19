#include "q1d/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace q1d {

namespace {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Mixed-radix loop over the rest axes; calls fn(base_offset).
template <typename Fn>
void for_each_rest(const std::vector<Axis>& rest, Fn&& fn) {
  const int na = static_cast<int>(rest.size());
  std::vector<int> idx(na, 0);
  long offset = 0;
  while (true) {
    fn(offset);
    int k = na - 1;
    for (; k >= 0; --k) {
      ++idx[k];
      offset += rest[k].stride;
      if (idx[k] < rest[k].dim) break;
      offset -= static_cast<long>(rest[k].dim) * rest[k].stride;
      idx[k] = 0;
    }
    if (k < 0) break;
  }
}

}  // namespace

ManyBodyState::ManyBodyState(std::shared_ptr<const SingleParticleBasis> basis,
                             int n_particles)
    : basis_(std::move(basis)), n_(n_particles) {
  if (n_ < 1) throw DomainError("ManyBodyState: need at least one particle");
  coeffs_ = Vec::Zero(ipow(basis_->size(), n_));
}

ManyBodyState::ManyBodyState(std::shared_ptr<const SingleParticleBasis> basis,
                             int n_particles, Vec coeffs)
    : basis_(std::move(basis)), n_(n_particles), coeffs_(std::move(coeffs)) {
  if (n_ < 1) throw DomainError("ManyBodyState: need at least one particle");
  if (coeffs_.size() != ipow(basis_->size(), n_))
    throw ShapeError("ManyBodyState: coefficient size does not match d^N");
}

long ManyBodyState::particle_stride(int p) const {
  if (p < 0 || p >= n_) throw DomainError("particle index out of range");
  return ipow(basis_->size(), n_ - 1 - p);
}

Axis ManyBodyState::x_axis(int p) const {
  return {basis_->x_size(), particle_stride(p) * basis_->z_size()};
}

Axis ManyBodyState::z_axis(int p) const {
  return {basis_->z_size(), particle_stride(p)};
}

void ManyBodyState::normalize() {
  const double n = norm();
  if (n <= 0.0) throw DomainError("ManyBodyState::normalize: zero state");
  coeffs_ /= n;
}

ManyBodyState ManyBodyState::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw ShapeError("permuted: permutation length mismatch");
  const int d = basis_->size();
  ManyBodyState out(basis_, n_);
  std::vector<int> digits(n_);
  const long total = dim();
  for (long i = 0; i < total; ++i) {
    long rem = i;
    for (int p = n_ - 1; p >= 0; --p) {
      digits[p] = static_cast<int>(rem % d);
      rem /= d;
    }
    long j = 0;
    for (int p = 0; p < n_; ++p) j = j * d + digits[perm[p]];
    out.coeffs_[j] = coeffs_[i];
  }
  return out;
}

ManyBodyState ManyBodyState::symmetrized() const {
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  ManyBodyState acc(basis_, n_);
  int count = 0;
  do {
    acc.coeffs_ += permuted(perm).coeffs_;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc.coeffs_ /= static_cast<double>(count);
  return acc;
}

double ManyBodyState::symmetry_defect() const {
  return (coeffs_ - symmetrized().coeffs_).norm();
}

ManyBodyState ManyBodyState::product(
    std::shared_ptr<const SingleParticleBasis> basis, int n_particles,
    const Vec& single_particle) {
  if (single_particle.size() != basis->size())
    throw ShapeError("product: single-particle coefficient size mismatch");
  ManyBodyState s(basis, n_particles);
  Vec cur = single_particle;
  s.coeffs_ = single_particle;
  for (int p = 1; p < n_particles; ++p) {
    Vec next(s.coeffs_.size() * single_particle.size());
    long pos = 0;
    for (long i = 0; i < s.coeffs_.size(); ++i)
      for (long j = 0; j < single_particle.size(); ++j)
        next[pos++] = s.coeffs_[i] * single_particle[j];
    s.coeffs_ = std::move(next);
  }
  return s;
}

void apply_on_axis_pair(const Vec& in, Vec& out, const Mat& op, Axis a, Axis b,
                        const std::vector<Axis>& rest) {
  const int da = a.dim, db = b.dim;
  if (op.rows() != da * db || op.cols() != da * db)
    throw ShapeError("apply_on_axis_pair: operator shape mismatch");
  out.resize(in.size());
  Vec slab(da * db), res(da * db);
  for_each_rest(rest, [&](long base) {
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j)
        slab[i * db + j] = in[base + i * a.stride + j * b.stride];
    res.noalias() = op * slab;
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j)
        out[base + i * a.stride + j * b.stride] = res[i * db + j];
  });
}

void apply_on_axis_pair_blocks(const Vec& in, Vec& out,
                               const std::vector<std::vector<int>>& slots,
                               const std::vector<Mat>& mats, Axis a, Axis b,
                               const std::vector<Axis>& rest) {
  const int db = b.dim;
  out.resize(in.size());
  const size_t nblocks = slots.size();
  // offsets of combined (i, j) slots
  std::vector<std::vector<long>> offs(nblocks);
  size_t max_block = 1;
  for (size_t k = 0; k < nblocks; ++k) {
    offs[k].reserve(slots[k].size());
    for (int s : slots[k])
      offs[k].push_back((s / db) * a.stride + (s % db) * b.stride);
    max_block = std::max(max_block, slots[k].size());
  }
  Vec slab(max_block), res(max_block);
  for_each_rest(rest, [&](long base) {
    for (size_t k = 0; k < nblocks; ++k) {
      const auto& off = offs[k];
      const int bs = static_cast<int>(off.size());
      for (int s = 0; s < bs; ++s) slab[s] = in[base + off[s]];
      res.head(bs).noalias() = mats[k] * slab.head(bs);
      for (int s = 0; s < bs; ++s) out[base + off[s]] = res[s];
    }
  });
}

void apply_on_axis(const Vec& in, Vec& out, const Mat& op, Axis a,
                   const std::vector<Axis>& rest) {
  const int da = a.dim;
  if (op.rows() != da || op.cols() != da)
    throw ShapeError("apply_on_axis: operator shape mismatch");
  out.resize(in.size());
  Vec slab(da), res(da);
  for_each_rest(rest, [&](long base) {
    for (int i = 0; i < da; ++i) slab[i] = in[base + i * a.stride];
    res.noalias() = op * slab;
    for (int i = 0; i < da; ++i) out[base + i * a.stride] = res[i];
  });
}

std::vector<Axis> complement_axes(const ManyBodyState& state,
                                  const std::vector<Axis>& used) {
  std::vector<Axis> rest;
  for (int p = 0; p < state.particles(); ++p) {
    for (Axis cand : {state.x_axis(p), state.z_axis(p)}) {
      bool taken = false;
      for (const Axis& u : used)
        if (u.stride == cand.stride && u.dim == cand.dim) taken = true;
      if (!taken) rest.push_back(cand);
    }
  }
  return rest;
}

}  // namespace q1d
