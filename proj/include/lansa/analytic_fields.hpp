#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "lansa/control.hpp"
#include "lansa/field.hpp"

namespace lansa {

using Rng = std::mt19937_64;

/// A (sin x cos y cos z, -cos x sin y cos z, 0) in box coordinates scaled by
/// the base wavenumber.
SpectralField taylor_green(const GridSpec& grid, double amplitude);

/// Real solenoidal field amplitude * e cos(k.x) with e the unit vector obtained
/// by projecting `direction` orthogonally to k.
SpectralField single_mode(const GridSpec& grid, const std::array<int, 3>& k, double amplitude,
                          const std::array<double, 3>& direction);

/// Band-limited (|k| <= band, default n/4) divergence-free field with unit
/// V-norm and Gaussian coefficients.
SpectralField random_solenoidal(const GridSpec& grid, Rng& rng, int band = -1);

/// Band-limited real physical field with no divergence constraint,
/// normalised to unit l2 norm.
PhysicalField random_physical(const GridSpec& grid, Rng& rng, int band = -1);

/// n_steps slices of random_physical scaled by `amplitude`.
ControlField random_control(const GridSpec& grid, Rng& rng, double amplitude, int band = -1);

}  // namespace lansa
