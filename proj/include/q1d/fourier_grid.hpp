#pragma once

#include <vector>

#include "q1d/common.hpp"

namespace q1d {

// In-place radix-2 FFT, unnormalized:  X_k = sum_n x_n e^{-2 pi i k n / N}
// (inverse flag flips the sign and leaves the 1/N to the caller).
void fft_radix2(Vec& data, bool inverse);

// Periodic grid on [-L/2, L/2) with M (power of two) points and the
// orthonormal plane-wave basis e_m(z) = e^{i k_m z} / sqrt(L),
// k_m = 2 pi fr(m) / L, fr(m) = m for m < M/2 and m - M otherwise.
class FourierGrid1D {
 public:
  FourierGrid1D(int points, double box_length);

  int size() const { return m_; }
  double box_length() const { return length_; }
  double dz() const { return length_ / m_; }
  double node(int n) const { return -0.5 * length_ + n * dz(); }
  int freq(int m) const { return m < m_ / 2 ? m : m - m_; }
  double wavenumber(int m) const { return 2.0 * PI * freq(m) / length_; }

  // Grid values -> basis coefficients (unitary for the weighted grid norm
  // ||f||^2 = dz * sum |f_n|^2).
  Vec to_coeffs(const Vec& grid_values) const;
  // Basis coefficients -> grid values.
  Vec to_grid(const Vec& coeffs) const;

 private:
  int m_;
  double length_;
};

// Mass carried by the outer `fraction` of the box on each side; the
// periodization tail monitor.
double boundary_mass(const FourierGrid1D& grid, const Vec& values,
                     double fraction = 0.1);

}  // namespace q1d
