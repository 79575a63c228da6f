#include "lansa/control.hpp"

#include <cmath>
#include <string>

#include "lansa/errors.hpp"
#include "lansa/operators.hpp"

namespace lansa {

BoxBounds BoxBounds::constant(const GridSpec& grid, const std::array<double, 3>& lo,
                              const std::array<double, 3>& hi) {
  BoxBounds b;
  PhysicalField l(grid), u(grid);
  for (int c = 0; c < 3; ++c) {
    for (double& v : l.component(c)) v = lo[c];
    for (double& v : u.component(c)) v = hi[c];
  }
  b.lower.push_back(std::move(l));
  b.upper.push_back(std::move(u));
  return b;
}

const PhysicalField& BoxBounds::lower_at(int step) const {
  return lower.size() == 1 ? lower.front() : lower.at(step);
}

const PhysicalField& BoxBounds::upper_at(int step) const {
  return upper.size() == 1 ? upper.front() : upper.at(step);
}

void BoxBounds::validate(const GridSpec& grid) const {
  auto shape_ok = [&](const std::vector<PhysicalField>& side) {
    if (side.size() != 1 && side.size() != static_cast<std::size_t>(grid.n_steps)) return false;
    for (const auto& s : side)
      if (!s.grid().same_space(grid)) return false;
    return true;
  };
  if (!shape_ok(lower) || !shape_ok(upper))
    throw ConfigError("bounds: expected 1 or n_steps slices on the control grid");
  const int slices = static_cast<int>(std::max(lower.size(), upper.size()));
  for (int n = 0; n < slices; ++n) {
    auto lo = lower_at(n).values();
    auto hi = upper_at(n).values();
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (std::isnan(lo[i]) || std::isnan(hi[i]) || lo[i] > hi[i])
        throw ConfigError("bounds: lower bound exceeds upper bound (slice " + std::to_string(n) +
                          ")");
  }
}

ControlField ControlField::zeros(const GridSpec& grid) {
  ControlField v;
  v.grid = grid;
  v.slices.assign(grid.n_steps, PhysicalField(grid));
  return v;
}

void ControlField::require_shape(const GridSpec& g, const char* where) const {
  if (!grid.same_space(g) || steps() != g.n_steps)
    throw ConfigError(std::string(where) + ": control has " + std::to_string(steps()) +
                      " slices, expected " + std::to_string(g.n_steps));
  for (const auto& s : slices)
    if (!s.grid().same_space(g)) throw ConfigError(std::string(where) + ": control grid mismatch");
}

ControlField& ControlField::axpy(double s, const ControlField& o) {
  if (o.steps() != steps()) throw ConfigError("control arithmetic: slice count mismatch");
  for (int n = 0; n < steps(); ++n) slices[n].axpy(s, o.slices[n]);
  return *this;
}

ControlField& ControlField::operator*=(double s) {
  for (auto& sl : slices) sl *= s;
  return *this;
}

double spacetime_inner(const ControlField& a, const ControlField& b) {
  if (a.steps() != b.steps()) throw ConfigError("spacetime_inner: slice count mismatch");
  double sum = 0.0;
  for (int n = 0; n < a.steps(); ++n) sum += l2_inner(a.slices[n], b.slices[n]);
  return a.grid.dt * sum;
}

double spacetime_norm(const ControlField& a) { return std::sqrt(spacetime_inner(a, a)); }

}  // namespace lansa
