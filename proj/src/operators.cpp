#include "lansa/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lansa/errors.hpp"

namespace lansa {

namespace {

struct Axes {
  int ix, iy, iz;
};

Axes unflatten(const GridSpec& g, std::size_t idx) {
  const auto n = static_cast<std::size_t>(g.n);
  return {static_cast<int>(idx % n), static_cast<int>((idx / n) % n), static_cast<int>(idx / (n * n))};
}

// Multiply every component of mode idx by m(idx).
template <class Multiplier>
SpectralField modewise(const SpectralField& u, Multiplier&& m) {
  SpectralField out(u);
  const std::size_t np = u.component_size();
  for (std::size_t idx = 0; idx < np; ++idx) {
    const double s = m(idx);
    for (int c = 0; c < 3; ++c) out.at(c, idx) *= s;
  }
  return out;
}

double weighted_sum(const SpectralField& u, const SpectralField& v, auto&& weight) {
  require_same_space(u.grid(), v.grid(), "inner product");
  const std::size_t np = u.component_size();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < np; ++idx) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
      const Complex a = u.at(c, idx), b = v.at(c, idx);
      s += a.real() * b.real() + a.imag() * b.imag();
    }
    if (s != 0.0) sum += weight(idx) * s;
  }
  return u.grid().volume() * sum;
}

}  // namespace

std::array<double, 3> wavevector(const GridSpec& g, std::size_t idx) {
  const Axes a = unflatten(g, idx);
  const double k0 = g.base_wavenumber();
  return {k0 * g.wavenumber(a.ix), k0 * g.wavenumber(a.iy), k0 * g.wavenumber(a.iz)};
}

double wavenumber_squared(const GridSpec& g, std::size_t idx) {
  const auto k = wavevector(g, idx);
  return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
}

bool on_nyquist(const GridSpec& g, std::size_t idx) {
  const Axes a = unflatten(g, idx);
  return g.is_nyquist(a.ix) || g.is_nyquist(a.iy) || g.is_nyquist(a.iz);
}

SpectralField leray_project(const SpectralField& f) {
  const GridSpec& g = f.grid();
  SpectralField out(f);
  const std::size_t np = f.component_size();
  for (std::size_t idx = 0; idx < np; ++idx) {
    const double k2 = wavenumber_squared(g, idx);
    if (k2 == 0.0 || on_nyquist(g, idx)) {
      for (int c = 0; c < 3; ++c) out.at(c, idx) = 0.0;
      continue;
    }
    const auto k = wavevector(g, idx);
    const Complex kc = k[0] * f.at(0, idx) + k[1] * f.at(1, idx) + k[2] * f.at(2, idx);
    for (int c = 0; c < 3; ++c) out.at(c, idx) -= k[c] * kc / k2;
  }
  out.set_divergence_free(true);
  return out;
}

SpectralField apply_stokes(const SpectralField& u) {
  require_solenoidal(u, "apply_stokes");
  const GridSpec& g = u.grid();
  return modewise(u, [&](std::size_t idx) { return wavenumber_squared(g, idx); });
}

SpectralField apply_helmholtz(const SpectralField& u, double alpha) {
  const GridSpec& g = u.grid();
  return modewise(u, [&](std::size_t idx) { return 1.0 + alpha * wavenumber_squared(g, idx); });
}

SpectralField invert_helmholtz(const SpectralField& u, double alpha) {
  const GridSpec& g = u.grid();
  return modewise(u,
                  [&](std::size_t idx) { return 1.0 / (1.0 + alpha * wavenumber_squared(g, idx)); });
}

SpectralField apply_laplacian(const SpectralField& u) {
  const GridSpec& g = u.grid();
  return modewise(u, [&](std::size_t idx) { return -wavenumber_squared(g, idx); });
}

double l2_inner(const SpectralField& u, const SpectralField& v) {
  return weighted_sum(u, v, [](std::size_t) { return 1.0; });
}

double l2_inner(const PhysicalField& u, const PhysicalField& v) {
  require_same_space(u.grid(), v.grid(), "l2_inner");
  double sum = 0.0;
  auto a = u.values();
  auto b = v.values();
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return u.grid().cell_volume() * sum;
}

double v_inner(const SpectralField& u, const SpectralField& v) {
  const GridSpec& g = u.grid();
  return weighted_sum(u, v, [&](std::size_t idx) { return wavenumber_squared(g, idx); });
}

double l2_norm(const SpectralField& u) { return std::sqrt(std::max(0.0, l2_inner(u, u))); }
double l2_norm(const PhysicalField& u) { return std::sqrt(std::max(0.0, l2_inner(u, u))); }
double v_norm(const SpectralField& u) { return std::sqrt(std::max(0.0, v_inner(u, u))); }

double da_norm(const SpectralField& u) {
  const GridSpec& g = u.grid();
  const double s = weighted_sum(u, u, [&](std::size_t idx) {
    const double k2 = wavenumber_squared(g, idx);
    return k2 * k2;
  });
  return std::sqrt(std::max(0.0, s));
}

double da_dual_norm(const SpectralField& u) {
  const GridSpec& g = u.grid();
  const double s = weighted_sum(u, u, [&](std::size_t idx) {
    const double k2 = wavenumber_squared(g, idx);
    return k2 == 0.0 ? 0.0 : 1.0 / (k2 * k2);
  });
  return std::sqrt(std::max(0.0, s));
}

double divergence_defect(const SpectralField& u) {
  const GridSpec& g = u.grid();
  const std::size_t np = u.component_size();
  double largest = 0.0;
  for (std::size_t idx = 0; idx < np; ++idx) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) m += std::norm(u.at(c, idx));
    largest = std::max(largest, std::sqrt(m));
  }
  if (largest == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t idx = 0; idx < np; ++idx) {
    const double k2 = wavenumber_squared(g, idx);
    if (k2 == 0.0) {
      double m = 0.0;
      for (int c = 0; c < 3; ++c) m += std::norm(u.at(c, idx));
      worst = std::max(worst, std::sqrt(m));
      continue;
    }
    const auto k = wavevector(g, idx);
    const Complex kc = k[0] * u.at(0, idx) + k[1] * u.at(1, idx) + k[2] * u.at(2, idx);
    worst = std::max(worst, std::abs(kc) / std::sqrt(k2));
  }
  return worst / largest;
}

bool is_solenoidal(const SpectralField& u, double tol) { return divergence_defect(u) <= tol; }

void require_solenoidal(const SpectralField& u, const char* where) {
  const double d = divergence_defect(u);
  if (d > 1e-12)
    throw ContractViolation(std::string(where) +
                            ": input is not divergence-free with zero mean (defect " +
                            std::to_string(d) + ")");
}

double hermitian_defect(const SpectralField& u) {
  const GridSpec& g = u.grid();
  double largest = 0.0, worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto comp = u.component(c);
    for (const auto& v : comp) largest = std::max(largest, std::abs(v));
    for (int iz = 0; iz < g.n; ++iz)
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
          worst = std::max(worst, std::abs(comp[g.mirror(ix, iy, iz)] -
                                           std::conj(comp[g.flat(ix, iy, iz)])));
  }
  return largest == 0.0 ? 0.0 : worst / largest;
}

void make_hermitian(SpectralField& u) {
  const GridSpec& g = u.grid();
  for (int c = 0; c < 3; ++c) {
    auto comp = u.component(c);
    std::vector<Complex> copy(comp.begin(), comp.end());
    for (int iz = 0; iz < g.n; ++iz)
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
          const std::size_t i = g.flat(ix, iy, iz);
          comp[i] = 0.5 * (copy[i] + std::conj(copy[g.mirror(ix, iy, iz)]));
        }
  }
}

}  // namespace lansa
