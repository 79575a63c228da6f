#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lansa/cli/config.hpp"
#include "lansa/cost.hpp"

namespace lansa::cli {

/// A fully materialised problem: targets, bounds and the starting control.
struct Scenario {
  ProblemConfig problem;
  ControlField control;
  /// The control that generated the targets (manufactured presets only).
  std::optional<ControlField> reference_control;
  /// Fingerprints of every generated input.
  nlohmann::json inputs = nlohmann::json::object();
};

std::vector<std::string> preset_names();

/// Builds the scenario described by `cfg`.  Weights are taken from [cost]
/// when present; otherwise (solve-forward) they stay at their defaults.
/// Throws ConfigError on unknown presets, bad specifiers or infeasible
/// bounds.
Scenario build_scenario(const RunConfig& cfg);

/// Space-time control that drives the manufactured presets: a smooth
/// solenoidal field with pointwise RMS `amplitude`, modulated in time.
ControlField manufactured_control(const GridSpec& grid, double amplitude, std::uint64_t seed);

}  // namespace lansa::cli
