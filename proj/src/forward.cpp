#include "lansa/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lansa/errors.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

void ModelParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 0");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be > 0");
}

namespace {

// [base + dt * rhs / (1 + alpha k^2)] / (1 + nu dt k^2), modewise.
SpectralField implicit_update(const SpectralField& base, const SpectralField& rhs,
                              const ModelParams& p) {
  const GridSpec& g = base.grid();
  const double dt = g.dt;
  SpectralField out(g);
  for (std::size_t idx = 0; idx < out.component_size(); ++idx) {
    const double k2 = wavenumber_squared(g, idx);
    const double filter = 1.0 / (1.0 + p.alpha * k2);
    const double decay = 1.0 / (1.0 + p.nu * dt * k2);
    for (int c = 0; c < 3; ++c)
      out.at(c, idx) = decay * (base.at(c, idx) + dt * filter * rhs.at(c, idx));
  }
  out.set_divergence_free(base.divergence_free() && rhs.divergence_free());
  return out;
}

void require_finite(const SpectralField& u, int step, const char* what) {
  for (const Complex& c : u.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw BlowUpError(std::string(what) + ": non-finite state", step);
}

}  // namespace

std::vector<SpectralField> inject_control(const ControlField& control) {
  std::vector<SpectralField> out;
  out.reserve(control.slices.size());
  for (const auto& s : control.slices) out.push_back(leray_project(to_spectral(s)));
  return out;
}

SpectralField step_forward(const SpectralField& u, const SpectralField& forcing,
                           const ModelParams& params, int step) {
  require_same_space(u.grid(), forcing.grid(), "step_forward");
  require_solenoidal(forcing, "step_forward(forcing)");
  SpectralField rhs = forcing - leray_project(bilinear_B(u, u, params.alpha));
  rhs.set_divergence_free(true);
  SpectralField next = implicit_update(u, rhs, params);
  require_finite(next, step, "step_forward");
  return next;
}

StateTrajectory solve_forward(const SpectralField& u0, std::span<const SpectralField> forcing,
                              const ModelParams& params) {
  params.validate();
  const GridSpec& g = u0.grid();
  g.validate();
  if (forcing.size() != static_cast<std::size_t>(g.n_steps))
    throw ConfigError("solve_forward: expected n_steps forcing slices");
  require_solenoidal(u0, "solve_forward(u0)");

  StateTrajectory traj{g, params.alpha, params.nu, {}};
  traj.snapshots.reserve(g.n_steps + 1);
  traj.snapshots.push_back(u0);
  traj.snapshots.back().set_divergence_free(true);
  const double guard = 1e6 * l2_norm(u0) + 1.0;
  for (int n = 0; n < g.n_steps; ++n) {
    SpectralField next = step_forward(traj.snapshots.back(), forcing[n], params, n + 1);
    if (l2_norm(next) > guard)
      throw BlowUpError("solve_forward: amplitude guard exceeded", n + 1);
    traj.snapshots.push_back(std::move(next));
  }
  return traj;
}

StateTrajectory solve_forward(const SpectralField& u0, const ControlField& control,
                              const ModelParams& params) {
  control.require_shape(u0.grid(), "solve_forward");
  const auto forcing = inject_control(control);
  return solve_forward(u0, std::span<const SpectralField>(forcing), params);
}

StateTrajectory solve_linearized(const StateTrajectory& state, std::span<const SpectralField> source,
                                 const ModelParams& params) {
  const GridSpec& g = state.grid;
  if (source.size() != static_cast<std::size_t>(g.n_steps) ||
      state.snapshots.size() != static_cast<std::size_t>(g.n_steps + 1))
    throw ConfigError("solve_linearized: trajectory/source length mismatch");

  StateTrajectory tangent{g, params.alpha, params.nu, {}};
  tangent.snapshots.reserve(g.n_steps + 1);
  tangent.snapshots.emplace_back(g);
  for (int n = 0; n < g.n_steps; ++n) {
    require_same_space(g, source[n].grid(), "solve_linearized");
    const SpectralField& w = tangent.snapshots.back();
    SpectralField rhs = leray_project(source[n]);
    rhs -= leray_project(linearized_Bu(state.snapshots[n], w, params.alpha));
    SpectralField next = implicit_update(w, rhs, params);
    require_finite(next, n + 1, "solve_linearized");
    tangent.snapshots.push_back(std::move(next));
  }
  return tangent;
}

double filtered_energy(const SpectralField& u, double alpha) {
  return l2_inner(u, u) + alpha * v_inner(u, u);
}

double EnergyBudget::worst_excess() const {
  if (energy.empty()) return 0.0;
  const double scale = std::max(energy.front() + forcing.back(), std::numeric_limits<double>::min());
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < energy.size(); ++n)
    worst = std::max(worst, (energy[n] + dissipation[n] - energy.front() - forcing[n]) / scale);
  return worst;
}

EnergyBudget energy_budget(const StateTrajectory& state, const ControlField* control) {
  const GridSpec& g = state.grid;
  const double kmin = g.base_wavenumber();
  EnergyBudget b;
  b.constant = 1.0 / (state.nu * kmin * kmin);
  double diss = 0.0, forcing = 0.0;
  for (std::size_t n = 0; n < state.snapshots.size(); ++n) {
    const SpectralField& u = state.snapshots[n];
    if (n > 0) {
      const double a = da_norm(u);
      diss += state.nu * g.dt * (v_inner(u, u) + state.alpha * a * a);
      if (control) {
        const double v = l2_norm(control->slices[n - 1]);
        forcing += b.constant * g.dt * v * v;
      }
    }
    b.energy.push_back(filtered_energy(u, state.alpha));
    b.dissipation.push_back(diss);
    b.forcing.push_back(forcing);
  }
  return b;
}

}  // namespace lansa
