#include "lansa/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lansa/errors.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"

namespace lansa {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "LANSA1";

void put_f64(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(bytes, 8);
}

double get_f64(std::istream& is) {
  unsigned char bytes[8];
  is.read(reinterpret_cast<char*>(bytes), 8);
  if (!is) throw ConfigError("snapshot: truncated payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

void write_header(std::ostream& os, const GridSpec& g, Representation r) {
  char length[64];
  std::snprintf(length, sizeof length, "%.17g", g.domain_length);
  os << kMagic << ' ' << g.n << ' ' << length << ' '
     << (r == Representation::Physical ? "phys" : "spec") << '\n';
}

SnapshotHeader parse_header(std::istream& is, const fs::path& path) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("snapshot: empty file " + path.string());
  std::istringstream ls(line);
  std::string magic, rep;
  SnapshotHeader h;
  ls >> magic >> h.n >> h.domain_length >> rep;
  if (!ls || magic != kMagic) throw ConfigError("snapshot: bad header in " + path.string());
  if (rep == "phys")
    h.representation = Representation::Physical;
  else if (rep == "spec")
    h.representation = Representation::Spectral;
  else
    throw ConfigError("snapshot: unknown representation '" + rep + "'");
  if (h.n < 4 || h.n % 2 != 0) throw ConfigError("snapshot: bad grid size");
  return h;
}

void check_grid(const SnapshotHeader& h, const GridSpec& g, const fs::path& path) {
  if (h.n != g.n || std::abs(h.domain_length - g.domain_length) > 1e-12 * g.domain_length)
    throw ConfigError("snapshot " + path.string() + ": dimension mismatch (file n=" +
                      std::to_string(h.n) + ", expected n=" + std::to_string(g.n) + ")");
}

}  // namespace

void write_snapshot(const fs::path& path, const PhysicalField& f) {
  auto os = open_out(path);
  write_header(os, f.grid(), Representation::Physical);
  for (double v : f.values()) put_f64(os, v);
}

void write_snapshot(const fs::path& path, const SpectralField& f) {
  auto os = open_out(path);
  write_header(os, f.grid(), Representation::Spectral);
  for (const Complex& v : f.coeffs()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

SnapshotHeader read_snapshot_header(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path.string());
  return parse_header(is, path);
}

SpectralField read_spectral(const fs::path& path, const GridSpec& grid) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path.string());
  const SnapshotHeader h = parse_header(is, path);
  check_grid(h, grid, path);
  if (h.representation == Representation::Physical) {
    PhysicalField p(grid);
    for (double& v : p.values()) v = get_f64(is);
    return to_spectral(p);
  }
  SpectralField s(grid);
  s.set_divergence_free(false);
  for (Complex& v : s.coeffs()) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = Complex(re, im);
  }
  return s;
}

PhysicalField read_physical(const fs::path& path, const GridSpec& grid) {
  const SnapshotHeader h = read_snapshot_header(path);
  check_grid(h, grid, path);
  if (h.representation == Representation::Spectral) return to_physical(read_spectral(path, grid));
  std::ifstream is(path, std::ios::binary);
  parse_header(is, path);
  PhysicalField p(grid);
  for (double& v : p.values()) v = get_f64(is);
  return p;
}

std::uint64_t fingerprint(std::span<const double> values) {
  std::uint64_t h = 1469598103934665603ull;
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::uint64_t fingerprint(const std::vector<PhysicalField>& slices) {
  std::vector<double> all;
  for (const auto& s : slices) all.insert(all.end(), s.values().begin(), s.values().end());
  return fingerprint(all);
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json grid_to_json(const GridSpec& g) {
  return {{"n", g.n},
          {"domain_length", g.domain_length},
          {"dealias", std::string(to_string(g.dealias))},
          {"dt", g.dt},
          {"n_steps", g.n_steps}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
  GridSpec g;
  g.n = j.at("n").get<int>();
  g.domain_length = j.at("domain_length").get<double>();
  g.dealias = parse_dealiasing(j.at("dealias").get<std::string>());
  g.dt = j.at("dt").get<double>();
  g.n_steps = j.at("n_steps").get<int>();
  g.validate();
  return g;
}

void write_trajectory(const fs::path& dir, std::span<const SpectralField> snapshots,
                      const nlohmann::json& extra) {
  if (snapshots.empty()) throw ConfigError("write_trajectory: no snapshots");
  fs::create_directories(dir);
  nlohmann::json manifest = extra;
  manifest["format"] = kMagic;
  manifest["grid"] = grid_to_json(snapshots.front().grid());
  manifest["snapshots"] = nlohmann::json::array();
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%04zu.lansa", i);
    write_snapshot(dir / name, snapshots[i]);
    manifest["snapshots"].push_back(name);
  }
  std::ofstream os(dir / "manifest.json");
  os << manifest.dump(2) << '\n';
}

std::vector<SpectralField> read_trajectory(const fs::path& dir, nlohmann::json* manifest) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw ConfigError("trajectory checkpoint " + dir.string() + ": missing manifest.json");
  nlohmann::json m;
  try {
    is >> m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("trajectory manifest: " + std::string(e.what()));
  }
  const GridSpec grid = grid_from_json(m.at("grid"));
  std::vector<SpectralField> out;
  for (const auto& name : m.at("snapshots")) {
    SpectralField f = read_spectral(dir / name.get<std::string>(), grid);
    f.set_divergence_free(is_solenoidal(f));
    out.push_back(std::move(f));
  }
  if (manifest) *manifest = std::move(m);
  return out;
}

void write_control(const fs::path& dir, const std::vector<PhysicalField>& slices, const nlohmann::json& extra) {
  if (slices.empty()) throw ConfigError("write_control: no slices");
  fs::create_directories(dir);
  nlohmann::json manifest = extra;
  manifest["format"] = kMagic;
  manifest["grid"] = grid_to_json(slices.front().grid());
  manifest["slices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < slices.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "slice_%04zu.lansa", i);
    write_snapshot(dir / name, slices[i]);
    manifest["slices"].push_back(name);
  }
  manifest["fingerprint"] = hex(fingerprint(slices));
  std::ofstream os(dir / "manifest.json");
  os << manifest.dump(2) << '\n';
}

std::vector<PhysicalField> read_control(const fs::path& dir, const GridSpec& grid) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw ConfigError("control directory " + dir.string() + ": missing manifest.json");
  nlohmann::json m;
  try {
    is >> m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("control manifest: " + std::string(e.what()));
  }
  std::vector<PhysicalField> out;
  for (const auto& name : m.at("slices")) out.push_back(read_physical(dir / name.get<std::string>(), grid));
  return out;
}

}  // namespace lansa
