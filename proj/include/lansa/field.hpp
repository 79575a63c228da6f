#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lansa/grid.hpp"

namespace lansa {

using Complex = std::complex<double>;

/// Three-component vector field stored as Fourier coefficients,
/// f(x) = sum_k c_k exp(i k.x).  Component-major, x fastest within a
/// component.  Real fields satisfy c(-k) = conj(c(k)).
class SpectralField {
 public:
  SpectralField() = default;
  /// Zero field on `grid`.
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::size_t component_size() const { return grid_.points(); }

  std::span<Complex> component(int c) {
    return {coeffs_.data() + c * component_size(), component_size()};
  }
  std::span<const Complex> component(int c) const {
    return {coeffs_.data() + c * component_size(), component_size()};
  }
  Complex& at(int c, std::size_t idx) { return coeffs_[c * component_size() + idx]; }
  const Complex& at(int c, std::size_t idx) const { return coeffs_[c * component_size() + idx]; }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Set by operators whose output is known to be solenoidal and zero-mean.
  bool divergence_free() const { return divergence_free_; }
  void set_divergence_free(bool v) { divergence_free_ = v; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  /// this += s * o
  SpectralField& axpy(double s, const SpectralField& o);

 private:
  GridSpec grid_{};
  std::vector<Complex> coeffs_;
  bool divergence_free_ = true;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Three-component real field on the n^3 collocation grid, component-major,
/// x fastest.
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(const GridSpec& grid, double fill = 0.0);

  const GridSpec& grid() const { return grid_; }
  std::size_t component_size() const { return grid_.points(); }

  std::span<double> component(int c) {
    return {values_.data() + c * component_size(), component_size()};
  }
  std::span<const double> component(int c) const {
    return {values_.data() + c * component_size(), component_size()};
  }
  double& at(int c, std::size_t idx) { return values_[c * component_size() + idx]; }
  double at(int c, std::size_t idx) const { return values_[c * component_size() + idx]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  PhysicalField& operator+=(const PhysicalField& o);
  PhysicalField& operator-=(const PhysicalField& o);
  PhysicalField& operator*=(double s);
  PhysicalField& axpy(double s, const PhysicalField& o);

 private:
  GridSpec grid_{};
  std::vector<double> values_;
};

PhysicalField operator+(PhysicalField a, const PhysicalField& b);
PhysicalField operator-(PhysicalField a, const PhysicalField& b);
PhysicalField operator*(double s, PhysicalField a);

/// Collocation point coordinates.
double grid_coordinate(const GridSpec& g, int index);

}  // namespace lansa
