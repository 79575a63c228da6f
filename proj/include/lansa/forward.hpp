#pragma once

#include <span>
#include <vector>

#include "lansa/control.hpp"
#include "lansa/field.hpp"

namespace lansa {

struct ModelParams {
  double alpha = 0.0;  ///< filter length squared; 0 gives Navier-Stokes
  double nu = 1.0;     ///< kinematic viscosity
  void validate() const;
};

/// Riesz representative (unprojected) of the LANS-alpha nonlinearity
///
///     B(u, v) = (u.grad) m + (grad u)^T . m,   m = (I - alpha Laplacian) v,
///
/// with ((grad u)^T . m)_j = sum_i (d_j u_i) m_i.  Quadratic terms are formed
/// on the dealiasing grid and truncated.
SpectralField bilinear_B(const SpectralField& u, const SpectralField& v, double alpha);

/// B(u_hat, w) + B(w, u_hat): derivative of u -> B(u, u) at u_hat along w.
SpectralField linearized_Bu(const SpectralField& u_hat, const SpectralField& w, double alpha);

struct StateTrajectory {
  GridSpec grid;
  double alpha = 0.0;
  double nu = 1.0;
  std::vector<SpectralField> snapshots;  ///< t_n = n dt, n = 0..n_steps

  const SpectralField& final_state() const { return snapshots.back(); }
};

/// Leray-projected spectral slices of a physical control.
std::vector<SpectralField> inject_control(const ControlField& control);

/// One IMEX Euler step (viscous and filter terms implicit, B explicit):
///
///     u+ = [u + dt (v - P B(u, u)) / (1 + alpha |k|^2)] / (1 + nu dt |k|^2)
///
/// `forcing` must already be projected.  Throws BlowUpError(step) on NaN/Inf.
SpectralField step_forward(const SpectralField& u, const SpectralField& forcing,
                           const ModelParams& params, int step = 0);

StateTrajectory solve_forward(const SpectralField& u0, const ControlField& control,
                              const ModelParams& params);
/// Same scheme driven by projected spectral forcing slices (n_steps of them).
StateTrajectory solve_forward(const SpectralField& u0, std::span<const SpectralField> forcing,
                              const ModelParams& params);

/// Tangent model along `state`: the same IMEX scheme applied to
///
///     Delta_alpha w_t + nu Delta_alpha A w + B_u(u, u) w = g,   w(0) = 0,
///
/// with the coupling term explicit.  `source` holds n_steps slices and is
/// projected on entry.
StateTrajectory solve_linearized(const StateTrajectory& state, std::span<const SpectralField> source,
                                 const ModelParams& params);

/// ||u||^2 + alpha ||grad u||^2
double filtered_energy(const SpectralField& u, double alpha);

/// Discrete counterpart of the integrated energy estimate
///
///     E(t) + nu int (||grad u||^2 + alpha ||A u||^2) <= E(0) + C int ||v||^2
///
/// evaluated at every step, with C = 1 / (nu * k_min^2) from Poincare.
struct EnergyBudget {
  std::vector<double> energy;        ///< E_n
  std::vector<double> dissipation;   ///< nu dt sum_{j=1..n} (||grad u_j||^2 + alpha ||A u_j||^2)
  std::vector<double> forcing;       ///< C dt sum_{j<n} ||v_j||^2
  double constant = 0.0;             ///< C
  /// max_n (E_n + dissipation_n - E_0 - forcing_n), normalised by E_0 + forcing_N.
  double worst_excess() const;
};
EnergyBudget energy_budget(const StateTrajectory& state, const ControlField* control);

}  // namespace lansa
