#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lansa/cost.hpp"
#include "lansa/forward.hpp"

namespace lansa {

struct CheckReport {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  nlohmann::json context = nlohmann::json::object();

  /// Sets passed = measured <= tolerance (NaN fails).
  CheckReport& finish();
};

nlohmann::json to_json(const CheckReport& r);

/// max |(B(u,v), u)| / (||u||_V da_norm(v) ||u||) over random solenoidal u, v.
CheckReport check_skew_symmetry(int n_trials, const GridSpec& grid, double alpha, std::uint64_t seed,
                                double tol = 1e-12);

/// max |(B_u h, l) - (h, B* l)| / max(||B_u h|| ||l||, ||h|| ||B* l||)
/// over random solenoidal triples.
CheckReport check_adjoint_identity(int n_trials, const GridSpec& grid, double alpha, std::uint64_t seed,
                                   double tol = 1e-12);

/// Assembles G = P B_u(u_hat) P and H = P B*(u_hat) P column by column on
/// physical unit vectors and reports max |G^T - H| / max |G|.  Meant for
/// n = 4 (3 n^3 columns).
CheckReport check_dense_transpose(const GridSpec& grid, double alpha, const SpectralField& u_hat,
                                  double tol = 1e-13);

/// Tangent and backward sweeps with random data: relative defect of
/// dt sum (g_n, l_n) = sum (w_n, P r_n) + (w_N, P terminal).
CheckReport check_discrete_duality(const GridSpec& grid, const ModelParams& params, std::uint64_t seed,
                                   double tol = 1e-11);

/// F(u) = nu Delta_alpha A u + P B(u, u).  Reports
/// ||F(u+w) - F(u) - F_u w - P B(w,w)|| / max(||F(u+w)||, ||F(u)||, ||F_u w||).
CheckReport check_frechet_remainder(const GridSpec& grid, const ModelParams& params, std::uint64_t seed,
                                    double tol = 1e-13);

/// |R(2w) / R(w) - 4| with R(w) = F(u+w) - F(u) - F_u w in l2 norm.
CheckReport check_frechet_homogeneity(const GridSpec& grid, const ModelParams& params, std::uint64_t seed,
                                      double tol = 1e-8);

/// Unforced run from u0: measured is the larger of the worst relative
/// one-step energy increase and EnergyBudget::worst_excess().
CheckReport check_energy_decay(const GridSpec& grid, const ModelParams& params, const SpectralField& u0,
                               double tol = 1e-13);

/// Single solenoidal mode with v = 0 decays geometrically; the defect
/// against exp(-nu |k|^2 t) at T is first order in dt.  measured is
/// |defect(dt) / defect(dt/2) - 2|.
CheckReport check_mode_decay(const GridSpec& grid, const ModelParams& params,
                             const std::array<int, 3>& k, double tol = 0.3);

/// max over random fields of (|u|_*^2 - |Delta_alpha u|_*^2) / |Delta_alpha u|_*^2
/// in the D(A)' norm.  Default tolerance: 1e-14 when alpha = 0, otherwise
/// -1e-12 so that the inequality must hold strictly.
CheckReport check_dual_norm_inequality(int n_trials, const GridSpec& grid, double alpha, std::uint64_t seed);

struct GradientSweepRow {
  double epsilon = 0.0;
  double max_rel_error = 0.0;
};

struct GradientCheck {
  CheckReport report;
  std::vector<GradientSweepRow> sweep;
};

/// Central differences of the reduced cost along random directions against
/// the adjoint gradient.  measured is the smallest (over epsilon) of the
/// largest (over directions) relative error.  Directions are spread over
/// `threads` worker threads.
GradientCheck fd_gradient_check(const ProblemConfig& cfg, const ControlField& control, int n_directions,
                                std::span<const double> epsilons, std::uint64_t seed,
                                const AdjointOptions& adjoint_opts = {}, double tol = 1e-6, int threads = 1);

std::vector<double> default_epsilons();

/// At fixed (u_hat, lambda) the discrete Lagrangian is minimised over
/// admissible controls by v_hat.  Samples Proj(v_hat + t d) for random d and
/// t spread over three decades; measured is
/// max (L(v_hat) - L(v)) / max(|L(v_hat)|, |L(v)|).
CheckReport check_minimum_principle(const ProblemConfig& cfg, const Evaluation& at, const AdjointTrajectory& adj,
                                    int n_samples, std::uint64_t seed, double tol = 1e-8);

/// Names accepted by run_battery.
std::vector<std::string> battery_names();

/// Runs the named checks (all when `names` is empty) at n = 8 with fixed
/// parameters.  Throws ConfigError on an unknown name.
std::vector<CheckReport> run_battery(const std::vector<std::string>& names, std::uint64_t seed, int threads = 1);

}  // namespace lansa
