#include "lansa/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "lansa/errors.hpp"

namespace lansa::cli {

namespace pt = boost::property_tree;

namespace {

const pt::ptree* section(const pt::ptree& t, const char* name) {
  auto it = t.find(name);
  return it == t.not_found() ? nullptr : &it->second;
}

std::optional<std::string> get_raw(const pt::ptree& t, const std::string& key) {
  if (auto v = t.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return *v;
  return std::nullopt;
}

template <class T>
T convert(const std::string& key, const std::string& raw) {
  std::istringstream is(raw);
  T v{};
  is >> v;
  if (is.fail() || !(is >> std::ws).eof()) throw ConfigError("config: cannot parse " + key + " = '" + raw + "'");
  return v;
}

template <>
bool convert<bool>(const std::string& key, const std::string& raw) {
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw ConfigError("config: cannot parse " + key + " = '" + raw + "' as boolean");
}

template <class T>
T required(const pt::ptree& t, const std::string& key) {
  auto raw = get_raw(t, key);
  if (!raw) throw ConfigError("config: missing required key " + key);
  return convert<T>(key, *raw);
}

template <class T>
T optional_or(const pt::ptree& t, const std::string& key, T fallback) {
  auto raw = get_raw(t, key);
  return raw ? convert<T>(key, *raw) : fallback;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(convert<double>(key, item));
  return out;
}

void check_known(const pt::ptree& t) {
  static const std::map<std::string, std::vector<std::string>> known = {
      {"grid", {"n", "domain_length", "dealias", "dt", "n_steps"}},
      {"physics", {"alpha", "nu"}},
      {"cost", {"gamma1", "gamma2", "gamma3"}},
      {"problem", {"preset", "amplitude", "seed", "u0", "u_d", "u_target", "control"}},
      {"bounds", {"lower", "upper"}},
      {"optimizer", {"max_iter", "step0", "armijo_c", "shrink", "residual_tol", "residual_rtol", "step_rule"}},
      {"gradient_check", {"directions", "epsilons"}},
      {"output", {"trajectory"}},
  };
  for (const auto& [sec, body] : t) {
    auto it = known.find(sec);
    if (it == known.end()) throw ConfigError("config: unknown section [" + sec + "]");
    for (const auto& [key, value] : body) {
      (void)value;
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        throw ConfigError("config: unknown key " + sec + "." + key);
    }
  }
}

RunConfig from_tree(const pt::ptree& t) {
  check_known(t);
  RunConfig c;
  c.tree = t;
  c.grid.n = required<int>(t, "grid.n");
  c.grid.dt = required<double>(t, "grid.dt");
  c.grid.n_steps = required<int>(t, "grid.n_steps");
  c.grid.domain_length = optional_or<double>(t, "grid.domain_length", c.grid.domain_length);
  if (auto d = get_raw(t, "grid.dealias")) c.grid.dealias = parse_dealiasing(*d);
  c.grid.validate();

  c.model.alpha = required<double>(t, "physics.alpha");
  c.model.nu = required<double>(t, "physics.nu");
  c.model.validate();

  if (section(t, "cost")) {
    CostWeights w;
    w.gamma1 = required<double>(t, "cost.gamma1");
    w.gamma2 = required<double>(t, "cost.gamma2");
    w.gamma3 = required<double>(t, "cost.gamma3");
    c.weights = w;
  }

  c.preset = optional_or<std::string>(t, "problem.preset", c.preset);
  c.amplitude = optional_or<double>(t, "problem.amplitude", c.amplitude);
  c.seed = optional_or<std::uint64_t>(t, "problem.seed", c.seed);
  c.u0 = optional_or<std::string>(t, "problem.u0", "");
  c.u_d = optional_or<std::string>(t, "problem.u_d", "");
  c.u_target = optional_or<std::string>(t, "problem.u_target", "");
  c.control = optional_or<std::string>(t, "problem.control", "");
  c.bounds_lower = optional_or<std::string>(t, "bounds.lower", "");
  c.bounds_upper = optional_or<std::string>(t, "bounds.upper", "");
  if (!std::isfinite(c.amplitude)) throw ConfigError("config: problem.amplitude must be finite");

  auto& o = c.optimizer;
  o.max_iter = optional_or<int>(t, "optimizer.max_iter", o.max_iter);
  o.step0 = optional_or<double>(t, "optimizer.step0", o.step0);
  o.armijo_c = optional_or<double>(t, "optimizer.armijo_c", o.armijo_c);
  o.shrink = optional_or<double>(t, "optimizer.shrink", o.shrink);
  o.residual_tol = optional_or<double>(t, "optimizer.residual_tol", o.residual_tol);
  o.residual_rtol = optional_or<double>(t, "optimizer.residual_rtol", o.residual_rtol);
  if (auto r = t.get_optional<std::string>("optimizer.step_rule")) o.step_rule = parse_step_rule(*r);
  if (o.max_iter < 0) throw ConfigError("config: optimizer.max_iter must be >= 0");

  c.gc_directions = optional_or<int>(t, "gradient_check.directions", c.gc_directions);
  if (auto e = get_raw(t, "gradient_check.epsilons")) c.gc_epsilons = parse_list("gradient_check.epsilons", *e);
  if (c.gc_directions <= 0) throw ConfigError("config: gradient_check.directions must be positive");
  for (double e : c.gc_epsilons)
    if (!(e > 0.0)) throw ConfigError("config: gradient_check.epsilons must be positive");

  c.write_trajectory = optional_or<bool>(t, "output.trajectory", c.write_trajectory);
  return c;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& origin) {
  pt::ptree t;
  try {
    pt::read_ini(in, t);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  try {
    return from_tree(t);
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

RunConfig with_overrides(const RunConfig& cfg, std::optional<std::uint64_t> seed,
                         std::optional<std::string> preset) {
  pt::ptree t = cfg.tree;
  if (seed) t.put(pt::ptree::path_type("problem.seed", '.'), std::to_string(*seed));
  if (preset) t.put(pt::ptree::path_type("problem.preset", '.'), *preset);
  return from_tree(t);
}

const CostWeights& require_weights(const RunConfig& cfg) {
  if (!cfg.weights) throw ConfigError("config: section [cost] with gamma1, gamma2, gamma3 is required");
  return *cfg.weights;
}

void write_config(const std::filesystem::path& path, const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  pt::write_ini(out, cfg.tree);
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [sec, body] : cfg.tree) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [key, value] : body) s[key] = value.data();
    j[sec] = s;
  }
  return j;
}

}  // namespace lansa::cli
