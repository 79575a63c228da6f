#include "lansa/transforms.hpp"

#include <cstdlib>

#include "fft.hpp"

namespace lansa {

using detail::dft3d;
using detail::Direction;

SpectralField to_spectral(const PhysicalField& f) {
  const GridSpec& g = f.grid();
  SpectralField out(g);
  out.set_divergence_free(false);
  const double scale = 1.0 / static_cast<double>(g.points());
  std::vector<Complex> buf(g.points());
  for (int c = 0; c < 3; ++c) {
    auto src = f.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = Complex(src[i], 0.0);
    auto dst = out.component(c);
    dft3d(g.n, buf.data(), dst.data(), Direction::Forward);
    for (auto& v : dst) v *= scale;
  }
  return out;
}

PhysicalField to_physical(const SpectralField& f) {
  const GridSpec& g = f.grid();
  PhysicalField out(g);
  std::vector<Complex> buf(g.points());
  for (int c = 0; c < 3; ++c) {
    dft3d(g.n, f.component(c).data(), buf.data(), Direction::Backward);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i].real();
  }
  return out;
}

ProductGrid::ProductGrid(const GridSpec& grid)
    : grid_(grid), m_(grid.product_points_per_axis()) {
  const int n = grid.n;
  const int band = grid.retained_band();
  const double k0 = grid.base_wavenumber();
  auto wrap = [this](int k) { return k < 0 ? k + m_ : k; };
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const int kx = grid.wavenumber(ix), ky = grid.wavenumber(iy), kz = grid.wavenumber(iz);
        if (std::abs(kx) > band || std::abs(ky) > band || std::abs(kz) > band) continue;
        src_.push_back(grid.flat(ix, iy, iz));
        dst_.push_back((static_cast<std::size_t>(wrap(kz)) * m_ + wrap(ky)) * m_ + wrap(kx));
        wave_.push_back({k0 * kx, k0 * ky, k0 * kz});
      }
}

std::vector<double> ProductGrid::to_grid(std::span<const Complex> coeffs,
                                         int derivative_axis) const {
  std::vector<Complex> buf(size(), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < src_.size(); ++r) {
    Complex v = coeffs[src_[r]];
    if (derivative_axis >= 0) v *= Complex(0.0, wave_[r][derivative_axis]);
    buf[dst_[r]] = v;
  }
  std::vector<Complex> out(size());
  dft3d(m_, buf.data(), out.data(), Direction::Backward);
  std::vector<double> values(size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = out[i].real();
  return values;
}

void ProductGrid::from_grid(std::span<const double> values, std::span<Complex> out) const {
  std::vector<Complex> buf(size()), spec(size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = Complex(values[i], 0.0);
  dft3d(m_, buf.data(), spec.data(), Direction::Forward);
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& v : out) v = Complex{0.0, 0.0};
  for (std::size_t r = 0; r < src_.size(); ++r) out[src_[r]] = spec[dst_[r]] * scale;
}

GridVector ProductGrid::vector(const SpectralField& f) const {
  GridVector v;
  for (int c = 0; c < 3; ++c) v.c[c] = to_grid(f.component(c));
  return v;
}

GridTensor ProductGrid::gradient(const SpectralField& f) const {
  GridTensor t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = to_grid(f.component(i), j);
  return t;
}

SpectralField ProductGrid::field(const GridVector& v) const {
  SpectralField out(grid_);
  out.set_divergence_free(false);
  for (int c = 0; c < 3; ++c) from_grid(v.c[c], out.component(c));
  return out;
}

}  // namespace lansa
