#include "lansa/analytic_fields.hpp"

#include <cmath>

#include "lansa/errors.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

namespace {

int default_band(const GridSpec& g, int band) { return band >= 0 ? band : std::max(1, g.n / 4); }

SpectralField random_band(const GridSpec& g, Rng& rng, int band) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField f(g);
  const int b2 = band * band;
  for (int iz = 0; iz < g.n; ++iz)
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix) {
        const int kx = g.wavenumber(ix), ky = g.wavenumber(iy), kz = g.wavenumber(iz);
        const std::size_t i = g.flat(ix, iy, iz);
        // Draw for every mode so the stream does not depend on the band.
        Complex draw[3];
        for (auto& d : draw) {
          const double re = normal(rng);
          const double im = normal(rng);
          d = {re, im};
        }
        if (kx * kx + ky * ky + kz * kz > b2 || g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz))
          continue;
        for (int c = 0; c < 3; ++c) f.at(c, i) = draw[c];
      }
  make_hermitian(f);
  f.set_divergence_free(false);
  return f;
}

}  // namespace

SpectralField taylor_green(const GridSpec& grid, double amplitude) {
  grid.validate();
  PhysicalField p(grid);
  const double kap = grid.base_wavenumber();
  for (int iz = 0; iz < grid.n; ++iz)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix) {
        const double x = kap * grid_coordinate(grid, ix);
        const double y = kap * grid_coordinate(grid, iy);
        const double z = kap * grid_coordinate(grid, iz);
        const std::size_t i = grid.flat(ix, iy, iz);
        p.at(0, i) = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        p.at(1, i) = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
      }
  return leray_project(to_spectral(p));
}

SpectralField single_mode(const GridSpec& grid, const std::array<int, 3>& k, double amplitude,
                          const std::array<double, 3>& direction) {
  grid.validate();
  const int half = grid.n / 2;
  for (int v : k)
    if (std::abs(v) >= half) throw ConfigError("single_mode: wavenumber outside the retained set");
  const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
  if (k2 == 0.0) throw ConfigError("single_mode: k = 0 carries no solenoidal mode");
  std::array<double, 3> e = direction;
  const double kd = (k[0] * e[0] + k[1] * e[1] + k[2] * e[2]) / k2;
  for (int c = 0; c < 3; ++c) e[c] -= kd * k[c];
  const double en = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
  if (en < 1e-12) throw ConfigError("single_mode: direction parallel to k");
  auto idx = [&](int kk) { return kk >= 0 ? kk : kk + grid.n; };
  SpectralField f(grid);
  const std::size_t plus = grid.flat(idx(k[0]), idx(k[1]), idx(k[2]));
  const std::size_t minus = grid.flat(idx(-k[0]), idx(-k[1]), idx(-k[2]));
  for (int c = 0; c < 3; ++c) {
    f.at(c, plus) += 0.5 * amplitude * e[c] / en;
    f.at(c, minus) += 0.5 * amplitude * e[c] / en;
  }
  f.set_divergence_free(true);
  return f;
}

SpectralField random_solenoidal(const GridSpec& grid, Rng& rng, int band) {
  grid.validate();
  SpectralField f = leray_project(random_band(grid, rng, default_band(grid, band)));
  const double norm = v_norm(f);
  if (norm == 0.0) throw ConfigError("random_solenoidal: band holds no solenoidal modes");
  f *= 1.0 / norm;
  return f;
}

PhysicalField random_physical(const GridSpec& grid, Rng& rng, int band) {
  grid.validate();
  PhysicalField p = to_physical(random_band(grid, rng, default_band(grid, band)));
  const double norm = l2_norm(p);
  if (norm > 0.0) p *= 1.0 / norm;
  return p;
}

ControlField random_control(const GridSpec& grid, Rng& rng, double amplitude, int band) {
  ControlField v = ControlField::zeros(grid);
  for (auto& s : v.slices) s = amplitude * random_physical(grid, rng, band);
  return v;
}

}  // namespace lansa
