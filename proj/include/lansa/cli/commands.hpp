#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lansa::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int bad_config = 2;
inline constexpr int blow_up = 3;
inline constexpr int max_iter = 4;
inline constexpr int line_search_fail = 5;
inline constexpr int stagnation = 6;
inline constexpr int internal = 70;
}  // namespace exit_code

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out = "run";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preset;
  int threads = 1;
  bool corrupt_adjoint = false;  ///< check-gradient negative control
  bool quiet = false;
};

/// Writes energy.csv, trajectory/ (unless disabled), config.echo.ini and
/// manifest.json under opts.out.
int cmd_solve_forward(const CommandOptions& opts, std::ostream& log);

/// Writes iterations.csv, final_control/, config.echo.ini and manifest.json.
int cmd_optimize(const CommandOptions& opts, std::ostream& log);

/// One JSON line per check on `out` (and verify.jsonl under opts.out when
/// write_files is set).  Exit 0 iff every check passes, 2 on unknown names.
int cmd_verify(const std::vector<std::string>& checks, std::uint64_t seed, const CommandOptions& opts,
               bool write_files, std::ostream& out, std::ostream& log);

/// Writes gradient_sweep.csv and manifest.json.  Exit 0 iff the plateau
/// error is within 1e-6.
int cmd_check_gradient(const CommandOptions& opts, std::ostream& log);

std::string version_string();

}  // namespace lansa::cli
