#include "lansa/cli/presets.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lansa/analytic_fields.hpp"
#include "lansa/errors.hpp"
#include "lansa/field_io.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa::cli {

namespace {

struct PresetFields {
  SpectralField u0;
  std::vector<SpectralField> u_d;
  SpectralField u_target;
  ControlField control;
  std::optional<ControlField> reference;
  std::optional<BoxBounds> bounds;
};

double rms(const SpectralField& f) { return l2_norm(f) / std::sqrt(f.grid().volume()); }

SpectralField rms_scaled(SpectralField f, double amplitude) {
  const double r = rms(f);
  if (r > 0.0) f *= amplitude / r;
  return f;
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double parse_number(const std::string& what, const std::string& s) {
  std::istringstream is(s);
  double v;
  is >> v;
  if (is.fail() || !(is >> std::ws).eof()) throw ConfigError("cannot parse number '" + s + "' in " + what);
  return v;
}

/// zero | taylor_green[:amp] | random[:seed] | file:PATH
SpectralField field_from_spec(const std::string& what, const std::string& spec, const RunConfig& cfg) {
  const auto [kind, arg] = split_spec(spec);
  const GridSpec& g = cfg.grid;
  if (kind == "zero") return SpectralField(g);
  if (kind == "taylor_green") return taylor_green(g, arg.empty() ? cfg.amplitude : parse_number(what, arg));
  if (kind == "random") {
    Rng rng(arg.empty() ? cfg.seed : static_cast<std::uint64_t>(parse_number(what, arg)));
    return rms_scaled(random_solenoidal(g, rng), cfg.amplitude);
  }
  if (kind == "file") {
    if (arg.empty()) throw ConfigError(what + ": file: needs a path");
    SpectralField f = read_spectral(arg, g);
    f.set_divergence_free(is_solenoidal(f));
    return f;
  }
  throw ConfigError(what + ": unknown field specifier '" + spec + "'");
}

/// field specifiers or trajectory:DIR (n_steps + 1 snapshots)
std::vector<SpectralField> trajectory_from_spec(const std::string& spec, const RunConfig& cfg) {
  const auto [kind, arg] = split_spec(spec);
  if (kind != "trajectory") return {field_from_spec("problem.u_d", spec, cfg)};
  auto snaps = read_trajectory(arg);
  if (snaps.size() != static_cast<std::size_t>(cfg.grid.n_steps + 1))
    throw ConfigError("problem.u_d: trajectory " + arg + " has " + std::to_string(snaps.size()) +
                      " snapshots, expected n_steps + 1");
  for (const auto& s : snaps) require_same_space(cfg.grid, s.grid(), "problem.u_d");
  return snaps;
}

/// zero | random[:amp] | dir:DIR
ControlField control_from_spec(const std::string& spec, const RunConfig& cfg) {
  const auto [kind, arg] = split_spec(spec);
  if (kind == "zero") return ControlField::zeros(cfg.grid);
  if (kind == "random") {
    Rng rng(cfg.seed ^ 0x5bd1e995ULL);
    const double amp = arg.empty() ? cfg.amplitude : parse_number("problem.control", arg);
    ControlField v = random_control(cfg.grid, rng, 1.0);
    for (auto& s : v.slices) s *= amp * std::sqrt(cfg.grid.volume()) / std::max(l2_norm(s), 1e-300);
    return v;
  }
  if (kind == "dir") {
    ControlField v = ControlField::zeros(cfg.grid);
    v.slices = read_control(arg, cfg.grid);
    v.require_shape(cfg.grid, "problem.control");
    return v;
  }
  throw ConfigError("problem.control: unknown specifier '" + spec + "'");
}

/// scalar | a,b,c | file:PATH
std::vector<PhysicalField> bound_from_spec(const std::string& what, const std::string& spec, const GridSpec& g) {
  const auto [kind, arg] = split_spec(spec);
  if (kind == "file") return {read_physical(arg, g)};
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    const std::string t = b == std::string::npos ? "" : item.substr(b, e - b + 1);
    if (t == "inf" || t == "+inf") vals.push_back(std::numeric_limits<double>::infinity());
    else if (t == "-inf") vals.push_back(-std::numeric_limits<double>::infinity());
    else vals.push_back(parse_number(what, t));
  }
  if (vals.size() == 1) vals.assign(3, vals[0]);
  if (vals.size() != 3) throw ConfigError(what + ": expected a scalar or three comma-separated values");
  PhysicalField f(g);
  for (int c = 0; c < 3; ++c)
    for (auto& x : f.component(c)) x = vals[c];
  return {f};
}

PresetFields manufactured(const RunConfig& cfg) {
  const GridSpec& g = cfg.grid;
  PresetFields p;
  p.u0 = taylor_green(g, cfg.amplitude);
  ControlField ref = manufactured_control(g, cfg.amplitude, cfg.seed);
  const StateTrajectory traj = solve_forward(p.u0, ref, cfg.model);
  p.u_d = traj.snapshots;
  p.u_target = traj.final_state();
  p.control = ControlField::zeros(g);
  p.reference = std::move(ref);
  return p;
}

PresetFields preset_fields(const RunConfig& cfg) {
  const GridSpec& g = cfg.grid;
  const double a = cfg.amplitude;
  if (cfg.preset == "zero") return {SpectralField(g), {SpectralField(g)}, SpectralField(g), ControlField::zeros(g), {}, {}};
  if (cfg.preset == "taylor_green")
    return {taylor_green(g, a), {SpectralField(g)}, SpectralField(g), ControlField::zeros(g), {}, {}};
  if (cfg.preset == "manufactured") return manufactured(cfg);
  if (cfg.preset == "constrained_demo") {
    PresetFields p = manufactured(cfg);
    // The first component is pushed strictly below zero, which excludes
    // both v = 0 and the unconstrained optimum.
    p.bounds = BoxBounds::constant(g, {-2.0 * a, -0.5 * a, -0.5 * a}, {-0.1 * a, 0.5 * a, 0.5 * a});
    return p;
  }
  throw ConfigError("problem.preset: unknown preset '" + cfg.preset + "'");
}

}  // namespace

std::vector<std::string> preset_names() { return {"zero", "taylor_green", "manufactured", "constrained_demo"}; }

ControlField manufactured_control(const GridSpec& grid, double amplitude, std::uint64_t seed) {
  Rng rng(seed);
  const PhysicalField shape = to_physical(rms_scaled(random_solenoidal(grid, rng), 1.0));
  ControlField v = ControlField::zeros(grid);
  const double T = grid.final_time();
  for (int n = 0; n < grid.n_steps; ++n) {
    const double t = n * grid.dt;
    v.slices[n] = amplitude * (1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * t / T)) * shape;
  }
  return v;
}

Scenario build_scenario(const RunConfig& cfg) {
  PresetFields p = preset_fields(cfg);
  Scenario s;
  ProblemConfig& pc = s.problem;
  pc.grid = cfg.grid;
  pc.alpha = cfg.model.alpha;
  pc.nu = cfg.model.nu;
  if (cfg.weights) pc.weights = *cfg.weights;
  pc.u0 = cfg.u0.empty() ? std::move(p.u0) : field_from_spec("problem.u0", cfg.u0, cfg);
  pc.u_d = cfg.u_d.empty() ? std::move(p.u_d) : trajectory_from_spec(cfg.u_d, cfg);
  pc.u_target = cfg.u_target.empty() ? std::move(p.u_target) : field_from_spec("problem.u_target", cfg.u_target, cfg);
  pc.bounds = std::move(p.bounds);
  if (!cfg.bounds_lower.empty() || !cfg.bounds_upper.empty()) {
    const double inf = std::numeric_limits<double>::infinity();
    BoxBounds b = BoxBounds::constant(cfg.grid, {-inf, -inf, -inf}, {inf, inf, inf});
    if (!cfg.bounds_lower.empty()) b.lower = bound_from_spec("bounds.lower", cfg.bounds_lower, cfg.grid);
    if (!cfg.bounds_upper.empty()) b.upper = bound_from_spec("bounds.upper", cfg.bounds_upper, cfg.grid);
    pc.bounds = std::move(b);
  }
  if (pc.bounds) pc.bounds->validate(cfg.grid);
  const double removed = pc.ingest_targets();
  if (cfg.weights) pc.validate();

  s.control = cfg.control.empty() ? std::move(p.control) : control_from_spec(cfg.control, cfg);
  s.control.bounds = pc.bounds;
  s.reference_control = std::move(p.reference);

  auto fp = [](const SpectralField& f) {
    std::vector<double> re;
    re.reserve(2 * f.coeffs().size());
    for (const auto& c : f.coeffs()) {
      re.push_back(c.real());
      re.push_back(c.imag());
    }
    return hex(fingerprint(re));
  };
  nlohmann::json ud = nlohmann::json::array();
  for (const auto& d : pc.u_d) ud.push_back(fp(d));
  s.inputs = {{"u0", fp(pc.u0)}, {"u_d", ud}, {"u_target", fp(pc.u_target)},
              {"control", hex(fingerprint(s.control.slices))}, {"removed_divergence_fraction", removed}};
  if (s.reference_control) s.inputs["reference_control"] = hex(fingerprint(s.reference_control->slices));
  return s;
}

}  // namespace lansa::cli
