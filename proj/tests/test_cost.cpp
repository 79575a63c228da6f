#include <doctest.h>

#include <cmath>
#include <limits>

#include "lansa/analytic_fields.hpp"
#include "lansa/cost.hpp"
#include "lansa/errors.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"
#include "oracles.hpp"

using namespace lansa;

namespace {

ProblemConfig problem(std::uint64_t seed, int n = 8, CostWeights w = {2.0, 3.0, 0.5}) {
  Rng rng(seed);
  ProblemConfig cfg;
  cfg.grid.n = n;
  cfg.grid.dt = 0.02;
  cfg.grid.n_steps = 8;
  cfg.alpha = 0.2;
  cfg.nu = 0.1;
  cfg.weights = w;
  cfg.u0 = random_solenoidal(cfg.grid, rng);
  for (int k = 0; k <= cfg.grid.n_steps; ++k) cfg.u_d.push_back(random_solenoidal(cfg.grid, rng));
  cfg.u_target = random_solenoidal(cfg.grid, rng);
  return cfg;
}

AdjointTrajectory fake_adjoint(const GridSpec& g, Rng& rng, double scale) {
  AdjointTrajectory a{g, {}, {}, 0.0, 1.0};
  for (int n = 0; n <= g.n_steps; ++n) a.snapshots.push_back(scale * random_solenoidal(g, rng));
  return a;
}

BoxBounds box(const GridSpec& g, double lo, double hi) { return BoxBounds::constant(g, {lo, lo, lo}, {hi, hi, hi}); }

}  // namespace

TEST_SUITE("cost_control") {
  TEST_CASE("cost vanishes on matched data and zero control") {
    ProblemConfig cfg = problem(1);
    const StateTrajectory s = solve_forward(cfg.u0, ControlField::zeros(cfg.grid), cfg.model());
    cfg.u_d = s.snapshots;
    cfg.u_target = s.final_state();
    const CostBreakdown c = evaluate_cost(s, ControlField::zeros(cfg.grid), cfg);
    CHECK(c.total == 0.0);
  }

  TEST_CASE("constant control cost has the closed form") {
    ProblemConfig cfg = problem(2, 8, {0.0, 0.0, 0.7});
    cfg.grid.domain_length = 1.0;
    cfg.grid.dt = 1.0 / cfg.grid.n_steps;  // unit time box
    Rng rng(2);
    cfg.u0 = random_solenoidal(cfg.grid, rng);
    cfg.u_d = {SpectralField(cfg.grid)};
    cfg.u_target = SpectralField(cfg.grid);
    ControlField v = ControlField::zeros(cfg.grid);
    const double c[3] = {0.5, -1.0, 2.0};
    for (auto& s : v.slices)
      for (int k = 0; k < 3; ++k)
        for (auto& x : s.component(k)) x = c[k];
    const StateTrajectory st = solve_forward(cfg.u0, v, cfg.model());
    const CostBreakdown j = evaluate_cost(st, v, cfg);
    CHECK(j.tracking == 0.0);
    CHECK(j.terminal == 0.0);
    CHECK(j.control == doctest::Approx(0.5 * 0.7 * (0.25 + 1.0 + 4.0)).epsilon(1e-14));
  }

  TEST_CASE("cost agrees with a direct-summation quadrature oracle") {
    ProblemConfig cfg = problem(3, 6);
    Rng rng(3);
    const ControlField v = random_control(cfg.grid, rng, 0.8);
    const StateTrajectory s = solve_forward(cfg.u0, v, cfg.model());
    const CostBreakdown j = evaluate_cost(s, v, cfg);

    const GridSpec& g = cfg.grid;
    double tracking = 0.0;
    for (int n = 0; n <= g.n_steps; ++n) {
      const double w = (n == 0 || n == g.n_steps) ? 0.5 : 1.0;
      tracking += w * oracle::weighted_projected_energy(to_physical(s.snapshots[n] - cfg.u_d[n]), 4);
    }
    tracking *= 0.5 * cfg.weights.gamma1 * g.dt;
    const PhysicalField diff = to_physical(s.final_state() - cfg.u_target);
    const double terminal = 0.5 * cfg.weights.gamma2 * oracle::direct_inner(diff, diff);
    double control = 0.0;
    for (const auto& sl : v.slices) control += oracle::direct_inner(sl, sl);
    control *= 0.5 * cfg.weights.gamma3 * g.dt;

    CHECK(j.tracking == doctest::Approx(tracking).epsilon(1e-12));
    CHECK(j.terminal == doctest::Approx(terminal).epsilon(1e-12));
    CHECK(j.control == doctest::Approx(control).epsilon(1e-12));
    CHECK(j.total == j.tracking + j.terminal + j.control);
    CHECK(j.total > 0.0);
  }

  TEST_CASE("shape mismatch is a configuration error") {
    ProblemConfig cfg = problem(4);
    const StateTrajectory s = solve_forward(cfg.u0, ControlField::zeros(cfg.grid), cfg.model());
    ControlField v = ControlField::zeros(cfg.grid);
    v.slices.pop_back();
    CHECK_THROWS_AS(evaluate_cost(s, v, cfg), ConfigError);
    cfg.u_d.resize(3, cfg.u_d[0]);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  TEST_CASE("weights: gamma3 must be positive, tracking weights nonnegative") {
    ProblemConfig cfg = problem(5, 8, {0.0, 0.0, 1.0});
    CHECK_NOTHROW(cfg.validate());
    cfg.weights.gamma3 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.weights = {-1.0, 1.0, 1.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.weights = {1.0, 1.0, 1.0};
    cfg.nu = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  TEST_CASE("reduced gradient special cases") {
    const ProblemConfig cfg = problem(6);
    Rng rng(6);
    const ControlField v = random_control(cfg.grid, rng, 1.0);
    AdjointTrajectory zero{cfg.grid, std::vector<SpectralField>(cfg.grid.n_steps + 1, SpectralField(cfg.grid)), {}, 0.0, 1.0};
    ControlField g = reduced_gradient(v, zero, 0.5);
    ControlField expect = v;
    expect *= 0.5;
    expect.axpy(-1.0, g);
    CHECK(spacetime_norm(expect) == 0.0);

    const AdjointTrajectory lam = fake_adjoint(cfg.grid, rng, 1.0);
    g = reduced_gradient(ControlField::zeros(cfg.grid), lam, 0.5);
    for (int n = 0; n < cfg.grid.n_steps; ++n) {
      const PhysicalField d = g.slices[n] - to_physical(lam.snapshots[n]);
      CHECK(l2_norm(d) == 0.0);
    }
    AdjointTrajectory short_adj = lam;
    short_adj.snapshots.pop_back();
    CHECK_THROWS_AS(reduced_gradient(v, short_adj, 0.5), ContractViolation);
  }

  TEST_CASE("directional derivative matches a central difference at eps = 1e-5") {
    const ProblemConfig cfg = problem(7);
    Rng rng(7);
    const ControlField v = random_control(cfg.grid, rng, 0.5);
    const Evaluation e = evaluate(cfg, v);
    const ControlField g = reduced_gradient(v, adjoint_for(cfg, e), cfg.weights.gamma3);
    for (int d = 0; d < 3; ++d) {
      const ControlField dir = random_control(cfg.grid, rng, 1.0);
      const double eps = 1e-5;
      ControlField p = v, m = v;
      p.axpy(eps, dir);
      m.axpy(-eps, dir);
      const double fd = (evaluate(cfg, p).cost.total - evaluate(cfg, m).cost.total) / (2 * eps);
      const double an = spacetime_inner(g, dir);
      CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an));
    }
  }

  TEST_CASE("projection onto the box") {
    const ProblemConfig cfg = problem(8);
    Rng rng(8);
    const BoxBounds b = box(cfg.grid, -0.3, 0.4);
    SUBCASE("inside is unchanged") {
      ControlField v = random_control(cfg.grid, rng, 1.0);
      for (auto& s : v.slices)
        for (auto& x : s.values()) x = 0.1 * std::tanh(x);
      const ControlField p = project_admissible(v, b);
      ControlField d = p;
      d.axpy(-1.0, v);
      CHECK(spacetime_norm(d) == 0.0);
    }
    SUBCASE("above the upper bound everywhere maps to the upper bound") {
      ControlField v = ControlField::zeros(cfg.grid);
      for (auto& s : v.slices)
        for (auto& x : s.values()) x = 5.0;
      const ControlField p = project_admissible(v, b);
      for (const auto& s : p.slices)
        for (double x : s.values()) CHECK(x == 0.4);
    }
    SUBCASE("idempotent and non-expansive") {
      for (int t = 0; t < 10; ++t) {
        const ControlField x = random_control(cfg.grid, rng, 30.0), y = random_control(cfg.grid, rng, 30.0);
        const ControlField px = project_admissible(x, b), py = project_admissible(y, b);
        ControlField twice = project_admissible(px, b);
        twice.axpy(-1.0, px);
        CHECK(spacetime_norm(twice) == 0.0);
        ControlField dp = px, dxy = x;
        dp.axpy(-1.0, py);
        dxy.axpy(-1.0, y);
        CHECK(spacetime_norm(dp) <= spacetime_norm(dxy));
      }
    }
    SUBCASE("absent bounds give the identity") {
      const ControlField v = random_control(cfg.grid, rng, 1.0);
      ControlField d = project_admissible(v, std::nullopt);
      d.axpy(-1.0, v);
      CHECK(spacetime_norm(d) == 0.0);
    }
    SUBCASE("inverted bounds are rejected") {
      const BoxBounds bad = box(cfg.grid, 1.0, -1.0);
      CHECK_THROWS_AS(project_admissible(ControlField::zeros(cfg.grid), bad), ConfigError);
    }
    SUBCASE("time-dependent bounds") {
      BoxBounds tb;
      for (int n = 0; n < cfg.grid.n_steps; ++n) {
        tb.lower.emplace_back(cfg.grid, -1.0 - n);
        tb.upper.emplace_back(cfg.grid, -0.5 * n);
      }
      const ControlField p = project_admissible(ControlField::zeros(cfg.grid), tb);
      for (int n = 0; n < cfg.grid.n_steps; ++n)
        for (double x : p.slices[n].values()) CHECK(x == (n == 0 ? 0.0 : -0.5 * n));
    }
  }

  TEST_CASE("optimality residual") {
    const ProblemConfig cfg = problem(9);
    Rng rng(9);
    const AdjointTrajectory lam = fake_adjoint(cfg.grid, rng, 2.0);
    const double gamma3 = 0.25;
    SUBCASE("unconstrained fixed point gives zero") {
      ControlField v = ControlField::zeros(cfg.grid);
      for (int n = 0; n < v.steps(); ++n) v.slices[n] = (-1.0 / gamma3) * to_physical(lam.snapshots[n]);
      CHECK(optimality_residual(v, lam, gamma3, std::nullopt) == 0.0);
    }
    SUBCASE("zero adjoint gives the control norm") {
      AdjointTrajectory zero = lam;
      for (auto& s : zero.snapshots) s *= 0.0;
      const ControlField v = random_control(cfg.grid, rng, 0.1);
      const BoxBounds b = box(cfg.grid, -1.0, 1.0);
      CHECK(optimality_residual(v, zero, gamma3, b) == doctest::Approx(spacetime_norm(v)).epsilon(1e-15));
    }
  }

  TEST_CASE("variational inequality at a residual-zero point") {
    const ProblemConfig cfg = problem(10);
    Rng rng(10);
    const AdjointTrajectory lam = fake_adjoint(cfg.grid, rng, 3.0);
    const double gamma3 = 0.5;
    const BoxBounds b = BoxBounds::constant(cfg.grid, {-0.2, -1.0, -0.05}, {0.1, 1.0, 0.3});
    ControlField vhat = ControlField::zeros(cfg.grid);
    for (int n = 0; n < vhat.steps(); ++n) vhat.slices[n] = (-1.0 / gamma3) * to_physical(lam.snapshots[n]);
    vhat = project_admissible(vhat, b);
    REQUIRE(optimality_residual(vhat, lam, gamma3, b) == 0.0);
    const ControlField g = reduced_gradient(vhat, lam, gamma3);
    const double scale = spacetime_norm(g) * std::max(1.0, spacetime_norm(vhat));
    int active = 0;
    for (const auto& s : vhat.slices)
      for (int c = 0; c < 3; ++c)
        for (double x : s.component(c))
          if (x == b.lower[0].component(c)[0] || x == b.upper[0].component(c)[0]) ++active;
    CHECK(active > 0);
    for (int t = 0; t < 100; ++t) {
      const ControlField v = project_admissible(random_control(cfg.grid, rng, 5.0), b);
      ControlField d = v;
      d.axpy(-1.0, vhat);
      CHECK(spacetime_inner(g, d) >= -1e-10 * scale);
    }
  }

  TEST_CASE("control term is exactly quadratic along a segment") {
    ProblemConfig cfg = problem(11);
    Rng rng(11);
    const ControlField a = random_control(cfg.grid, rng, 1.0), b = random_control(cfg.grid, rng, 1.0);
    ControlField mid = a;
    mid.axpy(1.0, b);
    mid *= 0.5;
    const StateTrajectory s = solve_forward(cfg.u0, ControlField::zeros(cfg.grid), cfg.model());
    const double ca = evaluate_cost(s, a, cfg).control, cb = evaluate_cost(s, b, cfg).control;
    const double cm = evaluate_cost(s, mid, cfg).control;
    ControlField d = b;
    d.axpy(-1.0, a);
    const double expect = 0.25 * cfg.weights.gamma3 * spacetime_inner(d, d);
    CHECK(ca + cb - 2.0 * cm == doctest::Approx(expect).epsilon(1e-10));
    CHECK(ca + cb - 2.0 * cm > 0.0);
  }

  TEST_CASE("non-solenoidal targets are projected on ingestion") {
    ProblemConfig cfg = problem(12);
    Rng rng(12);
    cfg.u_d = {to_spectral(random_physical(cfg.grid, rng))};
    const double removed = cfg.ingest_targets();
    CHECK(removed > 0.01);
    CHECK(cfg.u_d[0].divergence_free());
    CHECK(divergence_defect(cfg.u_d[0]) < 1e-14);
  }
}
