#include <doctest.h>

#include <cmath>

#include "lansa/analytic_fields.hpp"
#include "lansa/optimizer.hpp"
#include "lansa/verification.hpp"

using namespace lansa;

namespace {

ProblemConfig problem(CostWeights w, std::uint64_t seed = 1) {
  Rng rng(seed);
  ProblemConfig cfg;
  cfg.grid.n = 8;
  cfg.grid.dt = 0.02;
  cfg.grid.n_steps = 8;
  cfg.alpha = 0.1;
  cfg.nu = 0.05;
  cfg.weights = w;
  cfg.u0 = taylor_green(cfg.grid, 1.0);
  cfg.u_d = {0.5 * random_solenoidal(cfg.grid, rng)};
  cfg.u_target = random_solenoidal(cfg.grid, rng);
  return cfg;
}

bool feasible(const ControlField& v, const BoxBounds& b) {
  for (int n = 0; n < v.steps(); ++n)
    for (std::size_t i = 0; i < v.slices[n].values().size(); ++i) {
      const double x = v.slices[n].values()[i];
      if (x < b.lower_at(n).values()[i] || x > b.upper_at(n).values()[i]) return false;
    }
  return true;
}

}  // namespace

TEST_SUITE("optimizer") {
  TEST_CASE("convergence decisions") {
    const std::vector<double> falling = {10, 5, 2, 1, 0.5, 0.2};
    CHECK(check_convergence(falling, 1e-9, 1e-8) == Termination::ResidualTol);
    CHECK_FALSE(check_convergence(falling, 1.0, 1e-8).has_value());
    const std::vector<double> flat = {3, 3, 3, 3, 3, 3};
    CHECK(check_convergence(flat, 1.0, 1e-8) == Termination::Stagnation);
    const std::vector<double> short_flat = {3, 3, 3, 3, 3};
    CHECK_FALSE(check_convergence(short_flat, 1.0, 1e-8).has_value());
    CHECK(to_string(Termination::LineSearchFail) == "line_search_fail");
  }

  TEST_CASE("pure control penalty converges to zero within two iterations") {
    ProblemConfig cfg = problem({0.0, 0.0, 0.5});
    cfg.bounds = BoxBounds::constant(cfg.grid, {-3, -3, -3}, {3, 3, 3});
    Rng rng(2);
    ControlField v0 = random_control(cfg.grid, rng, 1.0);
    OptimizerOptions o;
    o.residual_tol = 1e-12;
    const OptimizationResult r = projected_gradient(cfg, o, v0);
    CHECK(r.termination == Termination::ResidualTol);
    CHECK(r.iterations <= 2);
    CHECK(spacetime_norm(r.final_control) <= 1e-12);
  }

  TEST_CASE("a fixed point terminates at iteration zero") {
    const ProblemConfig cfg = problem({0.0, 0.0, 1.0});
    OptimizerOptions o;
    o.residual_tol = 1e-12;
    const OptimizationResult r = projected_gradient(cfg, o);
    CHECK(r.termination == Termination::ResidualTol);
    CHECK(r.iterations == 0);
    CHECK(r.residual_history.front() <= 1e-12);
  }

  TEST_CASE("max_iter = 0 stops immediately") {
    const ProblemConfig cfg = problem({1.0, 1.0, 0.1});
    OptimizerOptions o;
    o.max_iter = 0;
    const OptimizationResult r = projected_gradient(cfg, o);
    CHECK(r.termination == Termination::MaxIter);
    CHECK(r.iterations == 0);
    CHECK(r.cost_history.size() == 1);
  }

  TEST_CASE("an exhausted line search is reported, not thrown") {
    const ProblemConfig cfg = problem({1.0, 1.0, 0.1});
    OptimizerOptions o;
    o.step0 = 1e8;
    o.max_shrinks = 0;
    o.step_rule = StepRule::Fixed;
    OptimizationResult r;
    CHECK_NOTHROW(r = projected_gradient(cfg, o));
    CHECK(r.termination == Termination::LineSearchFail);
  }

  TEST_CASE("monotone descent and feasibility under box constraints") {
    ProblemConfig cfg = problem({1.0, 1.0, 0.1}, 3);
    cfg.bounds = BoxBounds::constant(cfg.grid, {-0.5, -0.5, -0.5}, {-0.05, 0.5, 0.5});
    OptimizerOptions o;
    o.max_iter = 60;
    o.residual_tol = 1e-6;
    std::vector<double> seen;
    const OptimizationResult r = projected_gradient(cfg, o, std::nullopt, [&](const IterationRecord& rec) {
      seen.push_back(rec.cost.total);
    });
    REQUIRE(seen.size() == r.cost_history.size());
    for (std::size_t i = 1; i < r.cost_history.size(); ++i) CHECK(r.cost_history[i].total < r.cost_history[i - 1].total);
    CHECK(feasible(r.final_control, *cfg.bounds));
    CHECK(r.residual_history.back() < 1e-3 * r.residual_history.front());
    CHECK(r.gradient_norm > 10.0 * r.residual_history.back());
  }

  TEST_CASE("minimum principle at a converged point") {
    ProblemConfig cfg = problem({1.0, 1.0, 0.1}, 4);
    cfg.bounds = BoxBounds::constant(cfg.grid, {-0.5, -0.5, -0.5}, {-0.05, 0.5, 0.5});
    OptimizerOptions o;
    o.max_iter = 400;
    o.residual_tol = 1e-7;
    const OptimizationResult r = projected_gradient(cfg, o);
    REQUIRE(r.final_evaluation);
    const CheckReport mp = check_minimum_principle(cfg, *r.final_evaluation, *r.final_adjoint, 20, 5);
    CHECK_MESSAGE(mp.passed, to_json(mp).dump());
  }
}
