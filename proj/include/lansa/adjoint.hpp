#pragma once

#include <span>
#include <vector>

#include "lansa/forward.hpp"

namespace lansa {

/// gamma1: D(A) tracking, gamma2: terminal observation, gamma3: control cost.
struct CostWeights {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma3 = 1.0;
};

/// Adjoint of h -> linearized_Bu(u_hat, h, alpha) in the L2 pairing on
/// solenoidal fields:
///
///     B*(u, l) = P[ -u.grad l + alpha Lap(u.grad l) - alpha Lap(l.grad u)
///                   - (grad l)^T . (I - alpha Lap) u + alpha l.grad(Lap u) ]
///
/// so that (linearized_Bu(u, h), l) = (h, B*(u, l)) for solenoidal h, l.
SpectralField bilinear_B_star(const SpectralField& u_hat, const SpectralField& lambda, double alpha);

/// lambda(T) = (I - alpha Lap)^-1 P [gamma2 (u(T) - u_T)]
SpectralField terminal_condition(const SpectralField& u_final, const SpectralField& u_target,
                                 double gamma2, double alpha);

struct AdjointOptions {
  /// Flips the sign of the transport coupling.  Negative control for the
  /// gradient check only.
  bool corrupt_coupling_sign = false;
};

/// One backward step, the exact transpose of the tangent step that maps
/// w_n to w_{n+1}:
///
///     lambda_{n-1} = D [ lambda_n + S ( P r_n - dt B*(u_n, lambda_n) ) ]
///
/// with D = (1 + nu dt |k|^2)^-1, S = (1 + alpha |k|^2)^-1 and tracking
/// source r_n = weight * A^2 (u_n - u_d,n).  `lambda_next`, `u_hat` and `u_d`
/// all live at node n; the result lives at node n-1.  Pass couple = false at
/// the terminal node, where no forward step starts.
SpectralField step_backward(const SpectralField& lambda_next, const SpectralField& u_hat,
                            const SpectralField& u_d, double tracking_weight,
                            const ModelParams& params, bool couple = true,
                            const AdjointOptions& opts = {});

struct AdjointTrajectory {
  GridSpec grid;
  std::vector<SpectralField> snapshots;  ///< lambda_n, n = 0..n_steps
  CostWeights weights;
  double alpha = 0.0;
  double nu = 1.0;
};

/// Backward sweep with arbitrary data: lambda_N = S P terminal and
/// distributed sources r_1..r_N (`sources` has n_steps + 1 entries, entry 0
/// unused).  Satisfies the discrete duality
///
///     dt sum_{n<N} (g_n, lambda_n) = sum_{n>=1} (w_n, P r_n) + (w_N, P terminal)
///
/// for w = solve_linearized(state, g).
AdjointTrajectory backward_sweep(const StateTrajectory& state, const SpectralField& terminal,
                                 std::span<const SpectralField> sources, const AdjointOptions& opts = {});

/// Adjoint of the tracking functional.  `u_d` holds one slice (constant
/// target) or n_steps + 1 slices; targets are projected on use.
AdjointTrajectory solve_adjoint(const StateTrajectory& state, std::span<const SpectralField> u_d,
                                const SpectralField& u_target, const CostWeights& weights,
                                const AdjointOptions& opts = {});

/// Trapezoid weight of node n on 0..n_steps.
double trapezoid_weight(int n, int n_steps);

}  // namespace lansa
