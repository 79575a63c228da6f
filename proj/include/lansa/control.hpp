#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lansa/field.hpp"

namespace lansa {

/// Componentwise box constraints v_a <= v <= v_b.  Each side holds either a
/// single slice (broadcast over time) or one slice per time step; +-inf
/// entries leave that side open.
struct BoxBounds {
  std::vector<PhysicalField> lower;
  std::vector<PhysicalField> upper;

  static BoxBounds constant(const GridSpec& grid, const std::array<double, 3>& lo,
                            const std::array<double, 3>& hi);

  const PhysicalField& lower_at(int step) const;
  const PhysicalField& upper_at(int step) const;

  /// Throws ConfigError on shape mismatch or lower > upper anywhere.
  void validate(const GridSpec& grid) const;
};

/// Space-time control: one physical slice per step n = 0..n_steps-1, held
/// constant on [t_n, t_{n+1}).
struct ControlField {
  GridSpec grid;
  std::vector<PhysicalField> slices;
  std::optional<BoxBounds> bounds;

  static ControlField zeros(const GridSpec& grid);

  int steps() const { return static_cast<int>(slices.size()); }
  void require_shape(const GridSpec& g, const char* where) const;

  ControlField& axpy(double s, const ControlField& o);
  ControlField& operator*=(double s);
};

/// dt * sum_n (a_n, b_n): the time-discrete L2(Q) pairing matching the
/// left-endpoint quadrature of the control cost.
double spacetime_inner(const ControlField& a, const ControlField& b);
double spacetime_norm(const ControlField& a);

}  // namespace lansa
