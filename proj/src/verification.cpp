#include "lansa/verification.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "lansa/analytic_fields.hpp"
#include "lansa/errors.hpp"
#include "lansa/field_io.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

double worse(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::quiet_NaN();
  return std::max(a, b);
}

nlohmann::json grid_context(const GridSpec& g) { return grid_to_json(g); }

/// F(u) = nu Delta_alpha A u + P B(u, u)
SpectralField steady_operator(const SpectralField& u, const ModelParams& p) {
  SpectralField out = p.nu * apply_helmholtz(apply_stokes(u), p.alpha);
  out += leray_project(bilinear_B(u, u, p.alpha));
  return out;
}

SpectralField steady_tangent(const SpectralField& u, const SpectralField& w, const ModelParams& p) {
  SpectralField out = p.nu * apply_helmholtz(apply_stokes(w), p.alpha);
  out += leray_project(linearized_Bu(u, w, p.alpha));
  return out;
}

ControlField unit_direction(const GridSpec& g, Rng& rng) {
  ControlField d = random_control(g, rng, 1.0);
  d *= 1.0 / spacetime_norm(d);
  return d;
}

}  // namespace

CheckReport& CheckReport::finish() {
  passed = !std::isnan(measured) && measured <= tolerance;
  return *this;
}

nlohmann::json to_json(const CheckReport& r) {
  return {{"name", r.name}, {"measured", r.measured}, {"tolerance", r.tolerance},
          {"passed", r.passed}, {"context", r.context}};
}

CheckReport check_skew_symmetry(int n_trials, const GridSpec& grid, double alpha, std::uint64_t seed, double tol) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < n_trials; ++t) {
    const SpectralField u = random_solenoidal(grid, rng);
    const SpectralField v = random_solenoidal(grid, rng);
    const double pairing = l2_inner(bilinear_B(u, v, alpha), u);
    const double scale = v_norm(u) * da_norm(v) * l2_norm(u);
    worst = worse(worst, std::abs(pairing) / std::max(scale, kTiny));
  }
  CheckReport r{"skew_symmetry", worst, tol};
  r.context = {{"alpha", alpha}, {"trials", n_trials}, {"seed", seed}, {"grid", grid_context(grid)},
               {"scale", "||u||_V * ||A v|| * ||u||"}};
  return r.finish();
}

CheckReport check_adjoint_identity(int n_trials, const GridSpec& grid, double alpha, std::uint64_t seed, double tol) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < n_trials; ++t) {
    const SpectralField u = random_solenoidal(grid, rng);
    const SpectralField h = random_solenoidal(grid, rng);
    const SpectralField l = random_solenoidal(grid, rng);
    const SpectralField lh = linearized_Bu(u, h, alpha);
    const SpectralField bl = bilinear_B_star(u, l, alpha);
    const double lhs = l2_inner(lh, l);
    const double rhs = l2_inner(h, bl);
    const double scale = std::max(l2_norm(leray_project(lh)) * l2_norm(l), l2_norm(h) * l2_norm(bl));
    worst = worse(worst, std::abs(lhs - rhs) / std::max(scale, kTiny));
  }
  CheckReport r{"adjoint_identity", worst, tol};
  r.context = {{"alpha", alpha}, {"trials", n_trials}, {"seed", seed}, {"grid", grid_context(grid)},
               {"scale", "max(||P B_u h|| ||l||, ||h|| ||B* l||)"}};
  return r.finish();
}

CheckReport check_dense_transpose(const GridSpec& grid, double alpha, const SpectralField& u_hat, double tol) {
  require_same_space(grid, u_hat.grid(), "check_dense_transpose");
  const std::size_t dim = 3 * grid.points();
  std::vector<double> g(dim * dim), h(dim * dim);  // column-major
  for (std::size_t j = 0; j < dim; ++j) {
    PhysicalField e(grid);
    e.values()[j] = 1.0;
    const SpectralField basis = leray_project(to_spectral(e));
    const PhysicalField gc = to_physical(leray_project(linearized_Bu(u_hat, basis, alpha)));
    const PhysicalField hc = to_physical(bilinear_B_star(u_hat, basis, alpha));
    std::copy(gc.values().begin(), gc.values().end(), g.begin() + j * dim);
    std::copy(hc.values().begin(), hc.values().end(), h.begin() + j * dim);
  }
  double gmax = 0.0, defect = 0.0;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      gmax = std::max(gmax, std::abs(g[j * dim + i]));
      defect = worse(defect, std::abs(g[j * dim + i] - h[i * dim + j]));
    }
  CheckReport r{"dense_transpose", defect / std::max(gmax, kTiny), tol};
  r.context = {{"alpha", alpha}, {"dimension", dim}, {"max_abs_entry", gmax}, {"grid", grid_context(grid)},
               {"scale", "max |G|"}};
  return r.finish();
}

CheckReport check_discrete_duality(const GridSpec& grid, const ModelParams& params, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const int N = grid.n_steps;
  SpectralField u0 = random_solenoidal(grid, rng);
  const StateTrajectory state = solve_forward(u0, random_control(grid, rng, 0.5), params);
  std::vector<SpectralField> g, r;
  for (int n = 0; n < N; ++n) g.push_back(random_solenoidal(grid, rng));
  r.emplace_back(grid);
  for (int n = 1; n <= N; ++n) {
    SpectralField s = random_solenoidal(grid, rng);
    s.axpy(0.3, to_spectral(random_physical(grid, rng)));  // unprojected part must not matter
    r.push_back(std::move(s));
  }
  const SpectralField terminal = random_solenoidal(grid, rng);
  const StateTrajectory w = solve_linearized(state, g, params);
  const AdjointTrajectory adj = backward_sweep(state, terminal, r);
  double lhs = 0.0, rhs = 0.0, mag = 0.0;
  for (int n = 0; n < N; ++n) {
    const double t = grid.dt * l2_inner(g[n], adj.snapshots[n]);
    lhs += t;
    mag += std::abs(t);
  }
  for (int n = 1; n <= N; ++n) {
    const double t = l2_inner(w.snapshots[n], leray_project(r[n]));
    rhs += t;
    mag += std::abs(t);
  }
  const double tt = l2_inner(w.snapshots[N], leray_project(terminal));
  rhs += tt;
  mag += std::abs(tt);
  CheckReport rep{"discrete_duality", std::abs(lhs - rhs) / std::max(mag, kTiny), tol};
  rep.context = {{"alpha", params.alpha}, {"nu", params.nu}, {"seed", seed}, {"lhs", lhs}, {"rhs", rhs},
                 {"grid", grid_context(grid)}, {"scale", "sum of |individual pairings|"}};
  return rep.finish();
}

CheckReport check_frechet_remainder(const GridSpec& grid, const ModelParams& params, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const SpectralField u = random_solenoidal(grid, rng);
  const SpectralField w = random_solenoidal(grid, rng);
  const SpectralField fuw = steady_operator(u + w, params);
  const SpectralField fu = steady_operator(u, params);
  const SpectralField lw = steady_tangent(u, w, params);
  SpectralField defect = fuw - fu - lw - leray_project(bilinear_B(w, w, params.alpha));
  const double scale = std::max({l2_norm(fuw), l2_norm(fu), l2_norm(lw)});
  CheckReport r{"frechet_remainder", l2_norm(defect) / std::max(scale, kTiny), tol};
  r.context = {{"alpha", params.alpha}, {"nu", params.nu}, {"seed", seed}, {"grid", grid_context(grid)},
               {"scale", "max(||F(u+w)||, ||F(u)||, ||F_u w||)"}};
  return r.finish();
}

CheckReport check_frechet_homogeneity(const GridSpec& grid, const ModelParams& params, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const SpectralField u = random_solenoidal(grid, rng);
  const SpectralField w = random_solenoidal(grid, rng);
  auto remainder = [&](double s) {
    const SpectralField sw = s * w;
    return l2_norm(steady_operator(u + sw, params) - steady_operator(u, params) - steady_tangent(u, sw, params));
  };
  const double r1 = remainder(1.0), r2 = remainder(2.0);
  const double ratio = r2 / std::max(r1, kTiny);
  CheckReport r{"frechet_homogeneity", std::abs(ratio - 4.0), tol};
  r.context = {{"alpha", params.alpha}, {"nu", params.nu}, {"seed", seed}, {"ratio", ratio},
               {"remainder_w", r1}, {"remainder_2w", r2}, {"grid", grid_context(grid)}};
  return r.finish();
}

CheckReport check_energy_decay(const GridSpec& grid, const ModelParams& params, const SpectralField& u0, double tol) {
  const ControlField zero = ControlField::zeros(grid);
  const StateTrajectory state = solve_forward(u0, zero, params);
  const EnergyBudget b = energy_budget(state, &zero);
  const double e0 = std::max(b.energy.front(), kTiny);
  double increase = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < b.energy.size(); ++n) increase = worse(increase, (b.energy[n] - b.energy[n - 1]) / e0);
  const double excess = b.worst_excess();
  CheckReport r{"energy_decay", worse(increase, excess), tol};
  r.context = {{"alpha", params.alpha}, {"nu", params.nu}, {"worst_step_increase", increase},
               {"budget_excess", excess}, {"initial_energy", b.energy.front()},
               {"final_energy", b.energy.back()}, {"strictly_decreasing", increase < 0.0},
               {"grid", grid_context(grid)}};
  return r.finish();
}

CheckReport check_mode_decay(const GridSpec& grid, const ModelParams& params, const std::array<int, 3>& k, double tol) {
  const double kap = grid.base_wavenumber();
  const double k2 = kap * kap * (double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]);
  auto defect = [&](const GridSpec& g) {
    const SpectralField u0 = single_mode(g, k, 1e-3, {1.0, 1.0, 1.0});
    const StateTrajectory s = solve_forward(u0, ControlField::zeros(g), params);
    const double amp = l2_norm(s.final_state()) / l2_norm(u0);
    return std::abs(amp - std::exp(-params.nu * k2 * g.final_time()));
  };
  GridSpec half = grid;
  half.dt = grid.dt / 2;
  half.n_steps = grid.n_steps * 2;
  const double d1 = defect(grid), d2 = defect(half);
  const double ratio = d1 / std::max(d2, kTiny);
  // Leading-order defect of (1 + a dt)^-N against exp(-a T).
  const double a = params.nu * k2;
  const double envelope = 0.5 * a * a * grid.final_time() * grid.dt * std::exp(-a * grid.final_time());
  const bool within = d1 <= 1.5 * envelope && d2 <= 1.5 * 0.5 * envelope;
  CheckReport r{"mode_decay", within ? std::abs(ratio - 2.0) : std::numeric_limits<double>::infinity(), tol};
  r.context = {{"alpha", params.alpha}, {"nu", params.nu}, {"k", k}, {"defect_dt", d1}, {"defect_dt_half", d2},
               {"ratio", ratio}, {"first_order_envelope", envelope}, {"within_envelope", within},
               {"grid", grid_context(grid)}};
  return r.finish();
}

CheckReport check_dual_norm_inequality(int n_trials, const GridSpec& grid, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < n_trials; ++t) {
    const SpectralField u = to_spectral(random_physical(grid, rng));
    const double a = da_dual_norm(u), b = da_dual_norm(apply_helmholtz(u, alpha));
    worst = worse(worst, (a * a - b * b) / std::max(b * b, kTiny));
  }
  CheckReport r{"dual_norm_inequality", worst, alpha == 0.0 ? 1e-14 : -1e-12};
  r.context = {{"alpha", alpha}, {"trials", n_trials}, {"seed", seed}, {"strict", alpha > 0.0},
               {"grid", grid_context(grid)}};
  return r.finish();
}

std::vector<double> default_epsilons() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}; }

GradientCheck fd_gradient_check(const ProblemConfig& cfg, const ControlField& control, int n_directions,
                                std::span<const double> epsilons, std::uint64_t seed,
                                const AdjointOptions& adjoint_opts, double tol, int threads) {
  cfg.validate();
  Rng rng(seed);
  const Evaluation base = evaluate(cfg, control);
  const AdjointTrajectory adj = adjoint_for(cfg, base, adjoint_opts);
  const ControlField grad = reduced_gradient(control, adj, cfg.weights.gamma3);
  std::vector<ControlField> dirs;
  std::vector<double> predicted;
  for (int d = 0; d < n_directions; ++d) {
    dirs.push_back(unit_direction(cfg.grid, rng));
    predicted.push_back(spacetime_inner(grad, dirs.back()));
  }
  // errors[e][d]: relative error of direction d at epsilon e.
  std::vector<std::vector<double>> errors(epsilons.size(), std::vector<double>(n_directions));
  auto work = [&](int d) {
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      const double eps = epsilons[e];
      ControlField plus = control, minus = control;
      plus.axpy(eps, dirs[d]);
      minus.axpy(-eps, dirs[d]);
      const double fd = (evaluate(cfg, plus).cost.total - evaluate(cfg, minus).cost.total) / (2.0 * eps);
      errors[e][d] = std::abs(fd - predicted[d]) / std::max(std::abs(predicted[d]), kTiny);
    }
  };
  const int workers = std::clamp(threads, 1, n_directions);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int d = w; d < n_directions; d += workers) work(d);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  GradientCheck out;
  double plateau = std::numeric_limits<double>::infinity();
  double best_eps = 0.0;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    const double eps = epsilons[e];
    double row = 0.0;
    for (double err : errors[e]) row = worse(row, err);
    out.sweep.push_back({eps, row});
    if (!(row >= plateau)) {
      plateau = row;
      best_eps = eps;
    }
  }
  out.report = CheckReport{"fd_gradient", plateau, tol};
  out.report.context = {{"directions", n_directions}, {"seed", seed}, {"plateau_epsilon", best_eps},
                        {"cost", base.cost.total}, {"gradient_norm", spacetime_norm(grad)},
                        {"corrupt_adjoint", adjoint_opts.corrupt_coupling_sign}, {"grid", grid_context(cfg.grid)}};
  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& row : out.sweep) sweep.push_back({{"epsilon", row.epsilon}, {"max_rel_error", row.max_rel_error}});
  out.report.context["sweep"] = sweep;
  out.report.finish();
  return out;
}

CheckReport check_minimum_principle(const ProblemConfig& cfg, const Evaluation& at, const AdjointTrajectory& adj,
                                    int n_samples, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const double l_hat = discrete_lagrangian(at.state, at.control, adj, cfg);
  const double radius = std::max(spacetime_norm(at.control), 1.0);
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    const double frac = n_samples > 1 ? double(s) / (n_samples - 1) : 0.0;
    const double t = radius * std::pow(10.0, -3.0 + 3.0 * frac);
    ControlField v = at.control;
    v.axpy(t, unit_direction(cfg.grid, rng));
    v = project_admissible(v, cfg.bounds);
    const double l_v = discrete_lagrangian(at.state, v, adj, cfg);
    worst = worse(worst, (l_hat - l_v) / std::max({std::abs(l_hat), std::abs(l_v), kTiny}));
  }
  CheckReport r{"minimum_principle", worst, tol};
  r.context = {{"samples", n_samples}, {"seed", seed}, {"lagrangian_at_optimum", l_hat},
               {"scale", "max(|L(v_hat)|, |L(v)|)"}};
  return r.finish();
}

std::vector<std::string> battery_names() {
  return {"skew_symmetry", "adjoint_identity", "dense_transpose", "discrete_duality", "frechet_remainder",
          "frechet_homogeneity", "energy_decay", "mode_decay", "dual_norm_inequality", "fd_gradient"};
}

std::vector<CheckReport> run_battery(const std::vector<std::string>& names, std::uint64_t seed, int threads) {
  const auto known = battery_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) throw ConfigError("unknown check: " + n);
  auto wanted = [&](const char* n) { return names.empty() || std::find(names.begin(), names.end(), n) != names.end(); };

  GridSpec grid;
  grid.n = 8;
  grid.dt = 0.01;
  grid.n_steps = 16;
  const double alphas[] = {0.0, 0.1, 1.0};
  const ModelParams params{0.1, 0.05};
  std::vector<CheckReport> out;

  if (wanted("skew_symmetry"))
    for (double a : alphas) out.push_back(check_skew_symmetry(50, grid, a, seed));
  if (wanted("adjoint_identity"))
    for (double a : alphas) out.push_back(check_adjoint_identity(50, grid, a, seed + 1));
  if (wanted("dense_transpose")) {
    GridSpec small = grid;
    small.n = 4;
    Rng rng(seed + 2);
    const SpectralField u = random_solenoidal(small, rng);
    for (double a : alphas) out.push_back(check_dense_transpose(small, a, u));
  }
  if (wanted("discrete_duality")) out.push_back(check_discrete_duality(grid, params, seed + 3));
  if (wanted("frechet_remainder")) out.push_back(check_frechet_remainder(grid, params, seed + 4));
  if (wanted("frechet_homogeneity")) out.push_back(check_frechet_homogeneity(grid, params, seed + 5));
  if (wanted("energy_decay")) {
    Rng rng(seed + 6);
    CheckReport worst;
    for (int t = 0; t < 10; ++t) {
      CheckReport r = check_energy_decay(grid, params, random_solenoidal(grid, rng));
      if (t == 0 || !r.passed || r.measured > worst.measured) worst = r;
    }
    worst.context["trials"] = 10;
    out.push_back(worst);
  }
  if (wanted("mode_decay")) out.push_back(check_mode_decay(grid, ModelParams{0.1, 0.5}, {1, 0, 0}));
  if (wanted("dual_norm_inequality"))
    for (double a : alphas) out.push_back(check_dual_norm_inequality(100, grid, a, seed + 7));
  if (wanted("fd_gradient")) {
    Rng rng(seed + 8);
    ProblemConfig cfg;
    cfg.grid = grid;
    cfg.grid.dt = 0.02;
    cfg.alpha = params.alpha;
    cfg.nu = params.nu;
    cfg.weights = {1.0, 1.0, 0.1};
    cfg.u0 = taylor_green(cfg.grid, 1.0);
    cfg.u_d = {0.5 * random_solenoidal(cfg.grid, rng)};
    cfg.u_target = random_solenoidal(cfg.grid, rng);
    const ControlField v = random_control(cfg.grid, rng, 0.5);
    const auto eps = default_epsilons();
    out.push_back(fd_gradient_check(cfg, v, 5, eps, seed + 9, {}, 1e-6, threads).report);
  }
  return out;
}

}  // namespace lansa
