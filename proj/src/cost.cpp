#include "lansa/cost.hpp"

#include <algorithm>
#include <cmath>

#include "lansa/errors.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

double ProblemConfig::ingest_targets() {
  double worst = 0.0;
  auto project = [&](SpectralField& f) {
    SpectralField p = leray_project(f);
    const double norm = l2_norm(f);
    if (norm > 0.0) worst = std::max(worst, l2_norm(f - p) / norm);
    f = std::move(p);
  };
  project(u0);
  for (auto& d : u_d) project(d);
  return worst;
}

void ProblemConfig::validate() const {
  grid.validate();
  model().validate();
  if (!(weights.gamma1 >= 0.0) || !(weights.gamma2 >= 0.0))
    throw ConfigError("gamma1 and gamma2 must be nonnegative");
  if (!(weights.gamma3 > 0.0)) throw ConfigError("gamma3 must be positive");
  if (!u0.grid().same_space(grid) || !u_target.grid().same_space(grid))
    throw ConfigError("initial state / terminal target grid mismatch");
  if (u_d.size() != 1 && u_d.size() != static_cast<std::size_t>(grid.n_steps + 1))
    throw ConfigError("u_d must have 1 or n_steps+1 slices");
  for (const auto& d : u_d)
    if (!d.grid().same_space(grid)) throw ConfigError("u_d grid mismatch");
  if (bounds) bounds->validate(grid);
}

CostBreakdown evaluate_cost(const StateTrajectory& state, const ControlField& control,
                            const ProblemConfig& cfg) {
  const GridSpec& g = cfg.grid;
  if (state.snapshots.size() != static_cast<std::size_t>(g.n_steps + 1))
    throw ConfigError("evaluate_cost: trajectory length mismatch");
  control.require_shape(g, "evaluate_cost");

  CostBreakdown c;
  double tracking = 0.0;
  for (int n = 0; n <= g.n_steps; ++n) {
    const double a = da_norm(leray_project(state.snapshots[n] - cfg.desired_at(n)));
    tracking += trapezoid_weight(n, g.n_steps) * a * a;
  }
  c.tracking = 0.5 * cfg.weights.gamma1 * g.dt * tracking;
  const double e = l2_norm(state.final_state() - cfg.u_target);
  c.terminal = 0.5 * cfg.weights.gamma2 * e * e;
  double ctrl = 0.0;
  for (const auto& s : control.slices) ctrl += l2_inner(s, s);
  c.control = 0.5 * cfg.weights.gamma3 * g.dt * ctrl;
  c.total = c.tracking + c.terminal + c.control;
  return c;
}

ControlField reduced_gradient(const ControlField& control, const AdjointTrajectory& adj, double gamma3) {
  if (adj.snapshots.size() != control.slices.size() + 1 || !adj.grid.same_space(control.grid))
    throw ContractViolation("reduced_gradient: adjoint does not match the control");
  ControlField g = control;
  g.bounds.reset();
  for (int n = 0; n < control.steps(); ++n) {
    g.slices[n] *= gamma3;
    g.slices[n] += to_physical(adj.snapshots[n]);
  }
  return g;
}

ControlField project_admissible(const ControlField& v, const std::optional<BoxBounds>& bounds) {
  if (!bounds) return v;
  bounds->validate(v.grid);
  ControlField out = v;
  for (int n = 0; n < v.steps(); ++n) {
    auto vals = out.slices[n].values();
    auto lo = bounds->lower_at(n).values();
    auto hi = bounds->upper_at(n).values();
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::min(std::max(vals[i], lo[i]), hi[i]);
  }
  return out;
}

double optimality_residual(const ControlField& control, const AdjointTrajectory& adj, double gamma3,
                           const std::optional<BoxBounds>& bounds) {
  if (adj.snapshots.size() != control.slices.size() + 1)
    throw ContractViolation("optimality_residual: adjoint does not match the control");
  ControlField candidate = control;
  for (int n = 0; n < control.steps(); ++n) {
    candidate.slices[n] = to_physical(adj.snapshots[n]);
    candidate.slices[n] *= -1.0 / gamma3;
  }
  candidate = project_admissible(candidate, bounds);
  ControlField diff = control;
  diff.axpy(-1.0, candidate);
  return spacetime_norm(diff);
}

double discrete_lagrangian(const StateTrajectory& state, const ControlField& control,
                           const AdjointTrajectory& adj, const ProblemConfig& cfg) {
  const GridSpec& g = cfg.grid;
  const CostBreakdown j = evaluate_cost(state, control, cfg);
  const auto forcing = inject_control(control);
  double pairing = 0.0;
  for (int n = 0; n < g.n_steps; ++n) {
    const SpectralField& u = state.snapshots[n];
    const SpectralField& up = state.snapshots[n + 1];
    SpectralField implicit = up;
    for (std::size_t idx = 0; idx < implicit.component_size(); ++idx) {
      const double k2 = wavenumber_squared(g, idx);
      for (int c = 0; c < 3; ++c) implicit.at(c, idx) *= 1.0 + cfg.nu * g.dt * k2;
    }
    SpectralField residual = apply_helmholtz(implicit - u, cfg.alpha);
    residual *= 1.0 / g.dt;
    residual += leray_project(bilinear_B(u, u, cfg.alpha));
    residual -= forcing[n];
    pairing += l2_inner(residual, adj.snapshots[n]);
  }
  return j.total - g.dt * pairing;
}

Evaluation evaluate(const ProblemConfig& cfg, const ControlField& control) {
  Evaluation e{control, solve_forward(cfg.u0, control, cfg.model()), {}};
  e.cost = evaluate_cost(e.state, control, cfg);
  return e;
}

AdjointTrajectory adjoint_for(const ProblemConfig& cfg, const Evaluation& eval,
                              const AdjointOptions& opts) {
  return solve_adjoint(eval.state, cfg.u_d, cfg.u_target, cfg.weights, opts);
}

}  // namespace lansa
