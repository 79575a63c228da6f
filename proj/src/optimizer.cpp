#include "lansa/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "lansa/errors.hpp"

namespace lansa {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ResidualTol: return "residual_tol";
    case Termination::MaxIter: return "max_iter";
    case Termination::LineSearchFail: return "line_search_fail";
    case Termination::Stagnation: return "stagnation";
  }
  return "unknown";
}

std::string_view to_string(StepRule r) {
  switch (r) {
    case StepRule::Fixed: return "fixed";
    case StepRule::Doubling: return "doubling";
    case StepRule::BarzilaiBorwein: return "bb";
  }
  return "unknown";
}

StepRule parse_step_rule(std::string_view s) {
  if (s == "fixed") return StepRule::Fixed;
  if (s == "doubling") return StepRule::Doubling;
  if (s == "bb") return StepRule::BarzilaiBorwein;
  throw ConfigError("optimizer: unknown step_rule '" + std::string(s) + "' (fixed, doubling, bb)");
}

std::optional<Termination> check_convergence(std::span<const double> totals, double residual,
                                             double residual_tol, int window, double rtol) {
  if (residual <= residual_tol) return Termination::ResidualTol;
  if (window <= 0 || totals.size() <= static_cast<std::size_t>(window)) return std::nullopt;
  const double before = totals[totals.size() - 1 - window];
  const double now = totals.back();
  const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
  if ((before - now) / scale < rtol) return Termination::Stagnation;
  return std::nullopt;
}

OptimizationResult projected_gradient(const ProblemConfig& cfg, const OptimizerOptions& opts,
                                      std::optional<ControlField> initial,
                                      const std::function<void(const IterationRecord&)>& on_iteration) {
  cfg.validate();
  if (!(opts.shrink > 0.0 && opts.shrink < 1.0)) throw ConfigError("optimizer: shrink must be in (0,1)");
  if (!(opts.armijo_c > 0.0 && opts.armijo_c < 1.0)) throw ConfigError("optimizer: armijo_c must be in (0,1)");
  using clock = std::chrono::steady_clock;
  const double gamma3 = cfg.weights.gamma3;
  const double step0 = opts.step0 > 0.0 ? opts.step0 : 1.0 / gamma3;

  ControlField v = initial ? std::move(*initial) : ControlField::zeros(cfg.grid);
  v.require_shape(cfg.grid, "projected_gradient");
  v = project_admissible(v, cfg.bounds);
  v.bounds = cfg.bounds;

  OptimizationResult res;
  Evaluation eval = evaluate(cfg, v);
  AdjointTrajectory adj = adjoint_for(cfg, eval);
  double residual = optimality_residual(v, adj, gamma3, cfg.bounds);
  const double tol = std::max(opts.residual_tol, opts.residual_rtol * residual);

  auto t_start = clock::now();
  auto record = [&](int iter, double step) {
    IterationRecord r{iter, eval.cost, residual, step,
                      std::chrono::duration<double, std::milli>(clock::now() - t_start).count()};
    res.records.push_back(r);
    res.cost_history.push_back(eval.cost);
    res.residual_history.push_back(residual);
    if (on_iteration) on_iteration(r);
  };
  record(0, 0.0);

  std::vector<double> totals{eval.cost.total};
  double last_step = step0;
  ControlField prev_v, prev_grad;
  int iter = 0;
  std::optional<Termination> done = check_convergence(totals, residual, tol, opts.stagnation_window,
                                                      opts.stagnation_rtol);
  while (!done) {
    if (iter >= opts.max_iter) {
      done = Termination::MaxIter;
      break;
    }
    const ControlField grad = reduced_gradient(v, adj, gamma3);
    double s = step0;
    if (opts.step_rule == StepRule::Doubling) {
      s = std::min(step0, 2.0 * last_step);
    } else if (opts.step_rule == StepRule::BarzilaiBorwein && iter > 0) {
      ControlField dv = v, dg = grad;
      dv.axpy(-1.0, prev_v);
      dg.axpy(-1.0, prev_grad);
      const double curv = spacetime_inner(dv, dg);
      if (curv > 0.0) s = std::min(step0, spacetime_inner(dv, dv) / curv);
    }
    bool accepted = false;
    for (int shrinks = 0; shrinks <= opts.max_shrinks; ++shrinks, s *= opts.shrink) {
      ControlField trial = v;
      trial.axpy(-s, grad);
      trial = project_admissible(trial, cfg.bounds);
      ControlField move = trial;
      move.axpy(-1.0, v);
      const double move2 = spacetime_inner(move, move);
      std::optional<Evaluation> cand;
      try {
        cand = evaluate(cfg, trial);
      } catch (const BlowUpError&) {
        ++res.rejected_blowups;  // treated as J = +inf
        continue;
      }
      if (cand->cost.total <= eval.cost.total - opts.armijo_c / s * move2) {
        prev_v = std::move(v);
        prev_grad = grad;
        v = std::move(trial);
        eval = std::move(*cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      done = Termination::LineSearchFail;
      break;
    }
    ++iter;
    last_step = s;
    adj = adjoint_for(cfg, eval);
    residual = optimality_residual(v, adj, gamma3, cfg.bounds);
    record(iter, s);
    totals.push_back(eval.cost.total);
    done = check_convergence(totals, residual, tol, opts.stagnation_window, opts.stagnation_rtol);
  }

  res.iterations = iter;
  res.tolerance = tol;
  res.termination = *done;
  res.gradient_norm = spacetime_norm(reduced_gradient(v, adj, gamma3));
  res.final_control = v;
  res.final_evaluation = std::move(eval);
  res.final_adjoint = std::move(adj);
  return res;
}

}  // namespace lansa
