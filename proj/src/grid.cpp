#include "lansa/grid.hpp"

#include <cmath>

#include "lansa/errors.hpp"

namespace lansa {

std::string_view to_string(Dealiasing d) {
  return d == Dealiasing::ThreeHalves ? "three_halves" : "two_thirds";
}

Dealiasing parse_dealiasing(std::string_view s) {
  if (s == "three_halves" || s == "3/2") return Dealiasing::ThreeHalves;
  if (s == "two_thirds" || s == "2/3") return Dealiasing::TwoThirds;
  throw ConfigError("unknown dealiasing rule '" + std::string(s) + "'");
}

void GridSpec::validate() const {
  if (n < 4 || n % 2 != 0)
    throw ConfigError("grid: n_per_axis must be even and >= 4, got " + std::to_string(n));
  if (!(domain_length > 0.0) || !std::isfinite(domain_length))
    throw ConfigError("grid: domain_length must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("grid: dt must be positive");
  if (n_steps < 1) throw ConfigError("grid: n_steps must be >= 1");
}

int GridSpec::product_points_per_axis() const {
  return dealias == Dealiasing::ThreeHalves ? 3 * n / 2 : n;
}

int GridSpec::retained_band() const {
  if (dealias == Dealiasing::ThreeHalves) return n / 2 - 1;
  return (n - 1) / 3;
}

void require_same_space(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!a.same_space(b)) throw ConfigError(std::string(where) + ": grid mismatch");
}

}  // namespace lansa
