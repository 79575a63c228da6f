#pragma once

#include "lansa/field.hpp"

namespace lansa::detail {

enum class Direction { Forward, Backward };

/// Unnormalized 3D DFT of an m^3 array (x fastest), out of place.
/// Forward uses exp(-i k.x).  Safe to call from several threads.
void dft3d(int m, const Complex* in, Complex* out, Direction dir);

}  // namespace lansa::detail
