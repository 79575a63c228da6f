#include "lansa/adjoint.hpp"

#include <cmath>

#include "lansa/errors.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

SpectralField bilinear_B_star(const SpectralField& u_hat, const SpectralField& lambda, double alpha) {
  require_same_space(u_hat.grid(), lambda.grid(), "bilinear_B_star");
  require_solenoidal(u_hat, "bilinear_B_star(u_hat)");
  require_solenoidal(lambda, "bilinear_B_star(lambda)");

  const ProductGrid pg(u_hat.grid());
  const GridVector u = pg.vector(u_hat);
  const GridVector l = pg.vector(lambda);
  const GridTensor du = pg.gradient(u_hat);
  const GridTensor dl = pg.gradient(lambda);
  const GridVector m = pg.vector(apply_helmholtz(u_hat, alpha));
  const GridTensor dlap = pg.gradient(apply_laplacian(u_hat));

  // q = u.grad l, r = l.grad u, s = -(grad l)^T . m + alpha l.grad(Lap u)
  GridVector q, r, s;
  for (int j = 0; j < 3; ++j) {
    q.c[j].assign(pg.size(), 0.0);
    r.c[j].assign(pg.size(), 0.0);
    s.c[j].assign(pg.size(), 0.0);
    for (int i = 0; i < 3; ++i) {
      const auto& ui = u.c[i];
      const auto& li = l.c[i];
      const auto& mi = m.c[i];
      const auto& dlj_i = dl(j, i);
      const auto& duj_i = du(j, i);
      const auto& dli_j = dl(i, j);
      const auto& dlapj_i = dlap(j, i);
      for (std::size_t p = 0; p < pg.size(); ++p) {
        q.c[j][p] += ui[p] * dlj_i[p];
        r.c[j][p] += li[p] * duj_i[p];
        s.c[j][p] += alpha * li[p] * dlapj_i[p] - dli_j[p] * mi[p];
      }
    }
  }

  SpectralField out = pg.field(s);
  out -= apply_helmholtz(pg.field(q), alpha);
  out.axpy(-alpha, apply_laplacian(pg.field(r)));
  return leray_project(out);
}

SpectralField terminal_condition(const SpectralField& u_final, const SpectralField& u_target,
                                 double gamma2, double alpha) {
  require_same_space(u_final.grid(), u_target.grid(), "terminal_condition");
  return invert_helmholtz(leray_project(gamma2 * (u_final - u_target)), alpha);
}

double trapezoid_weight(int n, int n_steps) { return (n == 0 || n == n_steps) ? 0.5 : 1.0; }

namespace {

// lambda_{n-1} = D [ lambda_n + S (P r - dt B*(u, lambda_n)) ], r already projected.
SpectralField adjoint_step(const SpectralField& lambda_next, const SpectralField* coupling_state,
                           const SpectralField& projected_source, const ModelParams& p,
                           const AdjointOptions& opts, int step) {
  const GridSpec& g = lambda_next.grid();
  SpectralField rhs = projected_source;
  if (coupling_state) {
    const double sign = opts.corrupt_coupling_sign ? -1.0 : 1.0;
    rhs.axpy(-sign * g.dt, bilinear_B_star(*coupling_state, lambda_next, p.alpha));
  }
  SpectralField out(g);
  for (std::size_t idx = 0; idx < out.component_size(); ++idx) {
    const double k2 = wavenumber_squared(g, idx);
    const double filter = 1.0 / (1.0 + p.alpha * k2);
    const double decay = 1.0 / (1.0 + p.nu * g.dt * k2);
    for (int c = 0; c < 3; ++c)
      out.at(c, idx) = decay * (lambda_next.at(c, idx) + filter * rhs.at(c, idx));
  }
  for (const Complex& c : out.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw BlowUpError("adjoint sweep: non-finite state", step);
  out.set_divergence_free(true);
  return out;
}

// weight * A^2 P(u - u_d)
SpectralField tracking_source(const SpectralField& u, const SpectralField& u_d, double weight) {
  SpectralField e = leray_project(u - u_d);
  const GridSpec& g = e.grid();
  for (std::size_t idx = 0; idx < e.component_size(); ++idx) {
    const double k2 = wavenumber_squared(g, idx);
    for (int c = 0; c < 3; ++c) e.at(c, idx) *= weight * k2 * k2;
  }
  return e;
}

}  // namespace

SpectralField step_backward(const SpectralField& lambda_next, const SpectralField& u_hat,
                            const SpectralField& u_d, double tracking_weight,
                            const ModelParams& params, bool couple, const AdjointOptions& opts) {
  require_same_space(lambda_next.grid(), u_hat.grid(), "step_backward");
  const SpectralField source = tracking_source(u_hat, u_d, tracking_weight);
  return adjoint_step(lambda_next, couple ? &u_hat : nullptr, source, params, opts, 0);
}

AdjointTrajectory backward_sweep(const StateTrajectory& state, const SpectralField& terminal,
                                 std::span<const SpectralField> sources, const AdjointOptions& opts) {
  const GridSpec& g = state.grid;
  const int steps = g.n_steps;
  if (state.snapshots.size() != static_cast<std::size_t>(steps + 1) ||
      sources.size() != static_cast<std::size_t>(steps + 1))
    throw ConfigError("backward_sweep: trajectory/source length mismatch");
  const ModelParams p{state.alpha, state.nu};

  AdjointTrajectory adj;
  adj.grid = g;
  adj.alpha = state.alpha;
  adj.nu = state.nu;
  adj.snapshots.assign(steps + 1, SpectralField(g));
  adj.snapshots[steps] = invert_helmholtz(leray_project(terminal), state.alpha);
  for (int n = steps; n >= 1; --n) {
    const SpectralField* coupling = n < steps ? &state.snapshots[n] : nullptr;
    adj.snapshots[n - 1] =
        adjoint_step(adj.snapshots[n], coupling, leray_project(sources[n]), p, opts, n);
  }
  return adj;
}

AdjointTrajectory solve_adjoint(const StateTrajectory& state, std::span<const SpectralField> u_d,
                                const SpectralField& u_target, const CostWeights& weights,
                                const AdjointOptions& opts) {
  const GridSpec& g = state.grid;
  const int steps = g.n_steps;
  if (u_d.size() != 1 && u_d.size() != static_cast<std::size_t>(steps + 1))
    throw ConfigError("solve_adjoint: u_d must have 1 or n_steps+1 slices");
  auto target_at = [&](int n) -> const SpectralField& { return u_d.size() == 1 ? u_d[0] : u_d[n]; };

  std::vector<SpectralField> sources;
  sources.reserve(steps + 1);
  sources.emplace_back(g);
  for (int n = 1; n <= steps; ++n) {
    const double w = weights.gamma1 * g.dt * trapezoid_weight(n, steps);
    sources.push_back(tracking_source(state.snapshots[n], target_at(n), w));
  }
  const SpectralField terminal = weights.gamma2 * (state.final_state() - u_target);
  AdjointTrajectory adj = backward_sweep(state, terminal, sources, opts);
  adj.weights = weights;
  return adj;
}

}  // namespace lansa
