#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "lansa/adjoint.hpp"
#include "lansa/forward.hpp"
#include "lansa/grid.hpp"
#include "lansa/optimizer.hpp"

namespace lansa::cli {

/// Parsed run configuration.  The file is INI style:
///
///   [grid]       n, dt, n_steps (required); domain_length, dealias
///   [physics]    alpha, nu (required)
///   [cost]       gamma1, gamma2, gamma3 (required by optimize / check-gradient)
///   [problem]    preset, amplitude, seed, u0, u_d, u_target, control
///   [bounds]     lower, upper
///   [optimizer]  max_iter, step0, armijo_c, shrink, residual_tol,
///                residual_rtol, step_rule (fixed, doubling, bb)
///   [gradient_check]  directions, epsilons
///   [output]     trajectory (true/false)
struct RunConfig {
  GridSpec grid;
  ModelParams model;
  std::optional<CostWeights> weights;

  std::string preset = "taylor_green";
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  // Field specifiers; empty means "as the preset defines it".
  std::string u0, u_d, u_target, control;
  std::string bounds_lower, bounds_upper;

  OptimizerOptions optimizer;
  int gc_directions = 5;
  std::vector<double> gc_epsilons;
  bool write_trajectory = true;

  /// Every key as read, with command-line overrides applied.
  boost::property_tree::ptree tree;
};

RunConfig parse_config(std::istream& in, const std::string& origin = "<config>");
/// Throws ConfigError when the file is missing or malformed.
RunConfig load_config(const std::filesystem::path& path);
/// Re-parses after overriding problem.seed / problem.preset.
RunConfig with_overrides(const RunConfig& cfg, std::optional<std::uint64_t> seed,
                         std::optional<std::string> preset);

/// Requires [cost] to have been present.
const CostWeights& require_weights(const RunConfig& cfg);

void write_config(const std::filesystem::path& path, const RunConfig& cfg);
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace lansa::cli
