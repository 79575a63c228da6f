#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lansa/cli/commands.hpp"
#include "lansa/verification.hpp"

int main(int argc, char** argv) {
  using namespace lansa::cli;
  CLI::App app{"LANS-alpha optimal control: forward solves, optimisation and verification"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  CommandOptions opts;
  std::uint64_t seed = 0;
  std::string preset;
  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opts.config, "INI configuration file");
    if (needs_config) c->required();
    sub->add_option("--out", opts.out, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override problem.seed");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--preset", preset, "override problem.preset");
    sub->add_flag("--quiet", opts.quiet, "suppress progress output");
  };

  auto* fwd = app.add_subcommand("solve-forward", "integrate the state equation");
  common(fwd, true);
  auto* opt = app.add_subcommand("optimize", "projected-gradient solution of the control problem");
  common(opt, true);
  auto* ver = app.add_subcommand("verify", "run the verification battery (JSON lines on stdout)");
  common(ver, false);
  std::vector<std::string> checks;
  ver->add_option("--check", checks, "check names (default: all)");
  bool list = false;
  ver->add_flag("--list", list, "list check names");
  auto* grad = app.add_subcommand("check-gradient", "finite-difference check of the adjoint gradient");
  common(grad, true);
  grad->add_flag("--corrupt-adjoint-sign", opts.corrupt_adjoint, "flip the adjoint coupling sign (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::bad_config;
  }
  auto* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opts.seed = seed;
  if (sub->count("--preset")) opts.preset = preset;

  if (sub == fwd) return cmd_solve_forward(opts, std::cerr);
  if (sub == opt) return cmd_optimize(opts, std::cerr);
  if (sub == grad) return cmd_check_gradient(opts, std::cerr);
  if (list) {
    for (const auto& n : lansa::battery_names()) std::cout << n << '\n';
    return exit_code::ok;
  }
  return cmd_verify(checks, opts.seed.value_or(1), opts, sub->count("--out") > 0, std::cout, std::cerr);
}
