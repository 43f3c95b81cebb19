#include "q1d/fourier_grid.hpp"

#include <cmath>
#include <vector>

namespace q1d {

void fft_radix2(Vec& data, bool inverse) {
  const int n = static_cast<int>(data.size());
  if (n <= 1) return;
  if (n & (n - 1))
    throw ShapeError("fft_radix2: length must be a power of two");
  // Bit-reversal permutation.
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  // per-level twiddle table from direct trig calls keeps the transform
  // unitary to machine precision over long step counts
  std::vector<Complex> tw(static_cast<size_t>(n / 2));
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * PI / len;
    for (int k = 0; k < len / 2; ++k)
      tw[static_cast<size_t>(k)] = Complex(std::cos(ang * k), std::sin(ang * k));
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        const Complex u = data[i + k];
        const Complex v = data[i + k + len / 2] * tw[static_cast<size_t>(k)];
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
      }
    }
  }
}

FourierGrid1D::FourierGrid1D(int points, double box_length)
    : m_(points), length_(box_length) {
  if (points < 4 || (points & (points - 1)))
    throw DomainError("FourierGrid1D: points must be a power of two >= 4");
  if (!(box_length > 0.0))
    throw DomainError("FourierGrid1D: box length must be positive");
}

Vec FourierGrid1D::to_coeffs(const Vec& grid_values) const {
  if (grid_values.size() != m_)
    throw ShapeError("FourierGrid1D::to_coeffs: size mismatch");
  Vec work = grid_values;
  fft_radix2(work, false);
  // c_m = (dz / sqrt(L)) (-1)^m DFT(f)_m   (phase from the -L/2 grid origin)
  const double scale = dz() / std::sqrt(length_);
  for (int m = 0; m < m_; ++m) work[m] *= (m % 2 ? -scale : scale);
  return work;
}

Vec FourierGrid1D::to_grid(const Vec& coeffs) const {
  if (coeffs.size() != m_)
    throw ShapeError("FourierGrid1D::to_grid: size mismatch");
  Vec work = coeffs;
  const double scale = 1.0 / std::sqrt(length_);
  for (int m = 0; m < m_; ++m) work[m] *= (m % 2 ? -scale : scale);
  fft_radix2(work, true);
  return work;
}

double boundary_mass(const FourierGrid1D& grid, const Vec& values,
                     double fraction) {
  if (values.size() != grid.size()) throw ShapeError("boundary_mass: size mismatch");
  const double cut = 0.5 * grid.box_length() * (1.0 - fraction);
  double mass = 0.0;
  for (int n = 0; n < grid.size(); ++n)
    if (std::abs(grid.node(n)) >= cut) mass += std::norm(values[n]);
  return mass * grid.dz();
}

}  // namespace q1d
