#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lansa/field.hpp"

namespace lansa {

/// Snapshot files: an ASCII header line
///
///     LANSA1 <n> <domain_length> <phys|spec>
///
/// followed by little-endian float64 data, component-major, x fastest.
/// Spectral payloads interleave (re, im) pairs.
enum class Representation { Physical, Spectral };

struct SnapshotHeader {
  int n = 0;
  double domain_length = 0.0;
  Representation representation = Representation::Physical;
};

void write_snapshot(const std::filesystem::path& path, const PhysicalField& f);
void write_snapshot(const std::filesystem::path& path, const SpectralField& f);

SnapshotHeader read_snapshot_header(const std::filesystem::path& path);
/// Either representation is accepted and converted.  Throws ConfigError if
/// the file's n or domain length differ from `grid`.
PhysicalField read_physical(const std::filesystem::path& path, const GridSpec& grid);
SpectralField read_spectral(const std::filesystem::path& path, const GridSpec& grid);

/// FNV-1a over the raw bytes of the values.
std::uint64_t fingerprint(std::span<const double> values);
std::uint64_t fingerprint(const std::vector<PhysicalField>& slices);
std::string hex(std::uint64_t h);

/// Trajectory checkpoint: `snap_NNNN.lansa` files in spectral representation
/// plus `manifest.json`.  The manifest always records the grid; callers add
/// model parameters and hashes through `extra`.
void write_trajectory(const std::filesystem::path& dir, std::span<const SpectralField> snapshots,
                      const nlohmann::json& extra);
std::vector<SpectralField> read_trajectory(const std::filesystem::path& dir,
                                           nlohmann::json* manifest = nullptr);

/// Physical control slices as slice_NNNN.lansa plus manifest.json.
void write_control(const std::filesystem::path& dir, const std::vector<PhysicalField>& slices,
                   const nlohmann::json& extra);
std::vector<PhysicalField> read_control(const std::filesystem::path& dir, const GridSpec& grid);

nlohmann::json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

}  // namespace lansa
