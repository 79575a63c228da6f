#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lansa/cost.hpp"

namespace lansa {

enum class Termination { ResidualTol, MaxIter, LineSearchFail, Stagnation };
std::string_view to_string(Termination t);

/// First trial step of each line search.  Doubling: min(step0, 2 * last
/// accepted step).  BarzilaiBorwein: <dv, dv> / <dv, dg> from the previous
/// iterate, capped at step0.
enum class StepRule { Fixed, Doubling, BarzilaiBorwein };
std::string_view to_string(StepRule r);
StepRule parse_step_rule(std::string_view s);

struct OptimizerOptions {
  int max_iter = 200;
  double step0 = 0.0;          ///< initial trial step; <= 0 means 1 / gamma3
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double residual_tol = 1e-8;  ///< absolute tolerance on optimality_residual
  double residual_rtol = 0.0;  ///< tolerance relative to the initial residual
  int max_shrinks = 40;
  int stagnation_window = 5;
  double stagnation_rtol = 1e-12;
  StepRule step_rule = StepRule::BarzilaiBorwein;
};

struct IterationRecord {
  int iter = 0;
  CostBreakdown cost;
  double residual = 0.0;
  double step_size = 0.0;
  double wall_ms = 0.0;
};

struct OptimizationResult {
  ControlField final_control;
  std::vector<CostBreakdown> cost_history;
  std::vector<double> residual_history;
  std::vector<IterationRecord> records;
  int iterations = 0;
  Termination termination = Termination::MaxIter;
  double gradient_norm = 0.0;  ///< ||gamma3 v + lambda|| at the final control
  double tolerance = 0.0;      ///< effective residual tolerance
  int rejected_blowups = 0;    ///< trial steps whose forward solve diverged
  std::optional<Evaluation> final_evaluation;
  std::optional<AdjointTrajectory> final_adjoint;
};

/// Decides termination from the cost history (totals) and the current
/// residual.  Stagnation: relative decrease over the last `window`
/// iterations below `rtol`.  Returns nullopt to continue.
std::optional<Termination> check_convergence(std::span<const double> totals, double residual,
                                             double residual_tol, int window = 5,
                                             double rtol = 1e-12);

/// Projected gradient descent with Armijo backtracking:
///
///     v+ = Proj(v - s (gamma3 v + lambda)),
///     accept when J(v+) <= J(v) - c / s ||v+ - v||^2.
///
/// `on_iteration` sees every record as it is produced.
OptimizationResult projected_gradient(const ProblemConfig& cfg, const OptimizerOptions& opts,
                                      std::optional<ControlField> initial = std::nullopt,
                                      const std::function<void(const IterationRecord&)>& on_iteration = {});

}  // namespace lansa
