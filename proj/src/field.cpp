#include "lansa/field.hpp"

#include "lansa/errors.hpp"

namespace lansa {

SpectralField::SpectralField(const GridSpec& grid)
    : grid_(grid), coeffs_(3 * grid.points(), Complex{0.0, 0.0}) {}

SpectralField& SpectralField::operator+=(const SpectralField& o) { return axpy(1.0, o); }
SpectralField& SpectralField::operator-=(const SpectralField& o) { return axpy(-1.0, o); }

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& o) {
  require_same_space(grid_, o.grid_, "SpectralField arithmetic");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * o.coeffs_[i];
  divergence_free_ = divergence_free_ && o.divergence_free_;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

PhysicalField::PhysicalField(const GridSpec& grid, double fill)
    : grid_(grid), values_(3 * grid.points(), fill) {}

PhysicalField& PhysicalField::operator+=(const PhysicalField& o) { return axpy(1.0, o); }
PhysicalField& PhysicalField::operator-=(const PhysicalField& o) { return axpy(-1.0, o); }

PhysicalField& PhysicalField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

PhysicalField& PhysicalField::axpy(double s, const PhysicalField& o) {
  require_same_space(grid_, o.grid_, "PhysicalField arithmetic");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
  return *this;
}

PhysicalField operator+(PhysicalField a, const PhysicalField& b) { return a += b; }
PhysicalField operator-(PhysicalField a, const PhysicalField& b) { return a -= b; }
PhysicalField operator*(double s, PhysicalField a) { return a *= s; }

double grid_coordinate(const GridSpec& g, int index) {
  return g.domain_length * static_cast<double>(index) / static_cast<double>(g.n);
}

}  // namespace lansa
