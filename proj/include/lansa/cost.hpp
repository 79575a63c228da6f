#pragma once

#include <optional>
#include <vector>

#include "lansa/adjoint.hpp"
#include "lansa/control.hpp"
#include "lansa/forward.hpp"

namespace lansa {

struct CostBreakdown {
  double tracking = 0.0;  ///< (gamma1/2) int ||A(u - u_d)||^2, trapezoid in time
  double terminal = 0.0;  ///< (gamma2/2) ||u(T) - u_T||^2
  double control = 0.0;   ///< (gamma3/2) int ||v||^2, left endpoint in time
  double total = 0.0;
};

/// Everything that defines one instance of the control problem.
struct ProblemConfig {
  GridSpec grid;
  double alpha = 0.0;
  double nu = 1.0;
  CostWeights weights;
  SpectralField u0;
  std::vector<SpectralField> u_d;  ///< 1 slice (constant) or n_steps + 1
  SpectralField u_target;
  std::optional<BoxBounds> bounds;

  ModelParams model() const { return {alpha, nu}; }
  const SpectralField& desired_at(int n) const { return u_d.size() == 1 ? u_d[0] : u_d[n]; }

  /// Projects u0 and u_d onto solenoidal fields; returns the largest
  /// removed component relative to the field norm, for warnings.
  double ingest_targets();
  /// Throws ConfigError on any out-of-range parameter.
  void validate() const;
};

CostBreakdown evaluate_cost(const StateTrajectory& state, const ControlField& control,
                            const ProblemConfig& cfg);

/// Per slice: gamma3 v_n + lambda_n in physical space.
ControlField reduced_gradient(const ControlField& control, const AdjointTrajectory& adj, double gamma3);

/// Pointwise componentwise clamp into [v_a, v_b]; identity without bounds.
ControlField project_admissible(const ControlField& v, const std::optional<BoxBounds>& bounds);

/// Space-time norm of v - Proj(-lambda / gamma3).
double optimality_residual(const ControlField& control, const AdjointTrajectory& adj, double gamma3,
                           const std::optional<BoxBounds>& bounds);

/// Discrete Lagrangian J(u, v) - dt sum_n (F_n(u, v), lambda_n), where
/// F_n = Delta_alpha [(1 + nu dt A) u_{n+1} - u_n] / dt + P B(u_n, u_n) - P v_n
/// is the residual of the time-stepping scheme.
double discrete_lagrangian(const StateTrajectory& state, const ControlField& control,
                           const AdjointTrajectory& adj, const ProblemConfig& cfg);

/// State, cost and adjoint for one control.
struct Evaluation {
  ControlField control;
  StateTrajectory state;
  CostBreakdown cost;
};

Evaluation evaluate(const ProblemConfig& cfg, const ControlField& control);
AdjointTrajectory adjoint_for(const ProblemConfig& cfg, const Evaluation& eval,
                              const AdjointOptions& opts = {});

}  // namespace lansa
