#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lansa/field.hpp"

namespace lansa {

/// c_k = n^-3 sum_x f(x) exp(-i k.x).  All modes (Nyquist included) are
/// kept so that to_physical(to_spectral(f)) == f.
SpectralField to_spectral(const PhysicalField& f);
/// Inverse of to_spectral; the imaginary residue of a non-Hermitian input is
/// discarded.
PhysicalField to_physical(const SpectralField& f);

/// Values of a vector field on the product grid.
struct GridVector {
  std::array<std::vector<double>, 3> c;
};

/// Gradient on the product grid; d(i, j) holds d f_i / d x_j.
struct GridTensor {
  std::array<std::vector<double>, 9> d;
  std::vector<double>& operator()(int i, int j) { return d[3 * i + j]; }
  const std::vector<double>& operator()(int i, int j) const { return d[3 * i + j]; }
};

/// Collocation grid on which quadratic terms are formed without aliasing.
///
/// three_halves: fields are zero padded onto a 3n/2 grid.  two_thirds: the
/// grid stays at n and modes with |k_i| > retained_band() are discarded on
/// the way in and on the way out.  Either way the truncated product of two
/// band-limited fields equals the exact product projected onto the retained
/// modes.
class ProductGrid {
 public:
  explicit ProductGrid(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int points_per_axis() const { return m_; }
  std::size_t size() const { return static_cast<std::size_t>(m_) * m_ * m_; }

  /// Scalar coefficient array (n^3, FFT order) to grid values.  With
  /// derivative_axis >= 0 the d/dx_axis derivative is evaluated instead.
  std::vector<double> to_grid(std::span<const Complex> coeffs, int derivative_axis = -1) const;
  /// Grid values back to n^3 coefficients, truncated to the retained band.
  void from_grid(std::span<const double> values, std::span<Complex> out) const;

  GridVector vector(const SpectralField& f) const;
  GridTensor gradient(const SpectralField& f) const;
  /// Result is not marked divergence-free.
  SpectralField field(const GridVector& v) const;

 private:
  GridSpec grid_;
  int m_;
  // Retained (n-grid index, product-grid index) pairs.
  std::vector<std::size_t> src_, dst_;
  std::vector<std::array<double, 3>> wave_;
};

}  // namespace lansa
