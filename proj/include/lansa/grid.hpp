#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>

namespace lansa {

enum class Dealiasing { ThreeHalves, TwoThirds };

std::string_view to_string(Dealiasing d);
Dealiasing parse_dealiasing(std::string_view s);

/// Periodic box [0, L)^3 sampled with n points per axis, plus the uniform
/// time grid t_k = k * dt, k = 0..n_steps.
///
/// Fourier coefficients are stored in FFT order: index i along an axis maps
/// to the integer wavenumber i for i <= n/2 and i - n otherwise.  The Nyquist
/// plane (|k_i| = n/2) is kept at zero by every operator that produces a
/// solenoidal field, so the retained set is |k_i| <= n/2 - 1.
struct GridSpec {
  int n = 8;
  double domain_length = 2.0 * std::numbers::pi;
  Dealiasing dealias = Dealiasing::ThreeHalves;
  double dt = 0.05;
  int n_steps = 16;

  /// Throws ConfigError when any field is out of range.
  void validate() const;

  std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }
  double volume() const { return domain_length * domain_length * domain_length; }
  double cell_volume() const { return volume() / static_cast<double>(points()); }
  double final_time() const { return dt * n_steps; }
  /// 2*pi / L: converts integer wavenumbers into physical ones.
  double base_wavenumber() const { return 2.0 * std::numbers::pi / domain_length; }

  int wavenumber(int index) const { return index <= n / 2 ? index : index - n; }
  bool is_nyquist(int index) const { return index == n / 2; }

  /// Flat index of (ix, iy, iz), x fastest.
  std::size_t flat(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(iz) * n + iy) * n + ix;
  }
  /// Flat index of the mode -k for the mode stored at (ix, iy, iz).
  std::size_t mirror(int ix, int iy, int iz) const {
    return flat((n - ix) % n, (n - iy) % n, (n - iz) % n);
  }

  /// Grid size of the product (collocation) grid used for quadratic terms.
  int product_points_per_axis() const;
  /// Largest |k_i| that survives truncation of quadratic products.
  int retained_band() const;

  /// Same discretization in space (time parameters may differ).
  bool same_space(const GridSpec& other) const {
    return n == other.n && domain_length == other.domain_length && dealias == other.dealias;
  }
  bool operator==(const GridSpec&) const = default;
};

/// Throws ConfigError("<where>: grid mismatch") unless a and b share space.
void require_same_space(const GridSpec& a, const GridSpec& b, const char* where);

}  // namespace lansa
