#include "lansa/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "lansa/cli/config.hpp"
#include "lansa/cli/presets.hpp"
#include "lansa/errors.hpp"
#include "lansa/field_io.hpp"
#include "lansa/operators.hpp"
#include "lansa/verification.hpp"

#ifndef LANSA_VERSION
#define LANSA_VERSION "0.0.0"
#endif

namespace lansa::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Collects the manifest for one command and writes it on every exit path.
class Run {
 public:
  Run(std::string command, const CommandOptions& opts) : opts_(opts) {
    m_["command"] = std::move(command);
    m_["version"] = version_string();
    m_["started_utc"] = utc_now();
    m_["threads"] = opts.threads;
    m_["outputs"] = json::object();
    m_["cli"] = {{"config", opts.config.string()}, {"out", opts.out.string()}};
    if (opts.seed) m_["cli"]["seed"] = *opts.seed;
    if (opts.preset) m_["cli"]["preset"] = *opts.preset;
  }

  json& manifest() { return m_; }

  void output(const std::string& key, const fs::path& p) { m_["outputs"][key] = p.lexically_relative(opts_.out).string(); }

  int finish(int code, const std::string& termination) {
    m_["finished_utc"] = utc_now();
    m_["exit_code"] = code;
    m_["termination"] = termination;
    std::error_code ec;
    fs::create_directories(opts_.out, ec);
    std::ofstream os(opts_.out / "manifest.json");
    if (os) os << m_.dump(2) << '\n';
    return code;
  }

 private:
  const CommandOptions& opts_;
  json m_;
};

RunConfig load(const CommandOptions& opts, Run& run) {
  RunConfig cfg = with_overrides(load_config(opts.config), opts.seed, opts.preset);
  fs::create_directories(opts.out);
  write_config(opts.out / "config.echo.ini", cfg);
  run.output("config_echo", opts.out / "config.echo.ini");
  run.manifest()["config"] = config_to_json(cfg);
  run.manifest()["seeds"] = {{"problem", cfg.seed}};
  return cfg;
}

json weights_json(const CostWeights& w) { return {{"gamma1", w.gamma1}, {"gamma2", w.gamma2}, {"gamma3", w.gamma3}}; }

json cost_json(const CostBreakdown& c) {
  return {{"tracking", c.tracking}, {"terminal", c.terminal}, {"control", c.control}, {"total", c.total}};
}

template <class Body>
int guarded(Run& run, std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    run.manifest()["error"] = e.what();
    return run.finish(exit_code::bad_config, "bad_config");
  } catch (const BlowUpError& e) {
    log << "error: " << e.what() << '\n';
    run.manifest()["error"] = e.what();
    run.manifest()["blow_up_step"] = e.step();
    return run.finish(exit_code::blow_up, "blow_up");
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << '\n';
    run.manifest()["error"] = e.what();
    return run.finish(exit_code::internal, "internal_error");
  }
}

}  // namespace

std::string version_string() { return LANSA_VERSION; }

int cmd_solve_forward(const CommandOptions& opts, std::ostream& log) {
  Run run("solve-forward", opts);
  return guarded(run, log, [&] {
    const RunConfig cfg = load(opts, run);
    const Scenario sc = build_scenario(cfg);
    run.manifest()["inputs"] = sc.inputs;
    const StateTrajectory traj = solve_forward(sc.problem.u0, sc.control, cfg.model);

    const fs::path csv = opts.out / "energy.csv";
    std::ofstream os(csv);
    os << "t,l2_sq,alpha_grad_sq,grad_sq,stokes_sq\n" << std::setprecision(17);
    for (std::size_t n = 0; n < traj.snapshots.size(); ++n) {
      const SpectralField& u = traj.snapshots[n];
      const double l2 = l2_norm(u), grad = v_inner(u, u), a = da_norm(u);
      os << n * cfg.grid.dt << ',' << l2 * l2 << ',' << cfg.model.alpha * grad << ',' << grad << ',' << a * a << '\n';
    }
    run.output("energy_csv", csv);
    if (cfg.write_trajectory) {
      write_trajectory(opts.out / "trajectory", traj.snapshots,
                       {{"alpha", cfg.model.alpha}, {"nu", cfg.model.nu}, {"kind", "state"}});
      run.output("trajectory", opts.out / "trajectory");
    }
    const double e0 = filtered_energy(traj.snapshots.front(), cfg.model.alpha);
    const double eT = filtered_energy(traj.final_state(), cfg.model.alpha);
    run.manifest()["summary"] = {{"initial_energy", e0}, {"final_energy", eT}};
    if (!opts.quiet) log << "solve-forward: " << cfg.grid.n_steps << " steps, energy " << e0 << " -> " << eT << '\n';
    return run.finish(exit_code::ok, "completed");
  });
}

int cmd_optimize(const CommandOptions& opts, std::ostream& log) {
  Run run("optimize", opts);
  return guarded(run, log, [&] {
    const RunConfig cfg = load(opts, run);
    require_weights(cfg);
    const Scenario sc = build_scenario(cfg);
    run.manifest()["inputs"] = sc.inputs;
    run.manifest()["weights"] = weights_json(sc.problem.weights);

    const fs::path csv = opts.out / "iterations.csv";
    std::ofstream os(csv);
    os << "iter,tracking,terminal,control,total,residual,step_size,wall_ms\n" << std::setprecision(17);
    auto on_iter = [&](const IterationRecord& r) {
      os << r.iter << ',' << r.cost.tracking << ',' << r.cost.terminal << ',' << r.cost.control << ','
         << r.cost.total << ',' << r.residual << ',' << r.step_size << ',' << r.wall_ms << '\n';
      os.flush();
      if (!opts.quiet && (r.iter % 50 == 0))
        log << "iter " << r.iter << "  J = " << r.cost.total << "  residual = " << r.residual << '\n';
    };
    const OptimizationResult res = projected_gradient(sc.problem, cfg.optimizer, sc.control, on_iter);
    run.output("iterations_csv", csv);

    write_control(opts.out / "final_control", res.final_control.slices, {{"kind", "control"}});
    run.output("final_control", opts.out / "final_control");
    if (cfg.write_trajectory && res.final_evaluation) {
      write_trajectory(opts.out / "final_state", res.final_evaluation->state.snapshots,
                       {{"alpha", cfg.model.alpha}, {"nu", cfg.model.nu}, {"kind", "state"}});
      run.output("final_state", opts.out / "final_state");
    }

    const std::string term(to_string(res.termination));
    run.manifest()["summary"] = {
        {"iterations", res.iterations},
        {"initial_cost", cost_json(res.cost_history.front())},
        {"final_cost", cost_json(res.cost_history.back())},
        {"initial_residual", res.residual_history.front()},
        {"final_residual", res.residual_history.back()},
        {"residual_tolerance", res.tolerance},
        {"gradient_norm", res.gradient_norm},
        {"final_control_fingerprint", hex(fingerprint(res.final_control.slices))},
    };
    if (!opts.quiet)
      log << "optimize: " << term << " after " << res.iterations << " iterations, J "
          << res.cost_history.front().total << " -> " << res.cost_history.back().total << ", residual "
          << res.residual_history.back() << '\n';
    switch (res.termination) {
      case Termination::ResidualTol: return run.finish(exit_code::ok, term);
      case Termination::MaxIter: return run.finish(exit_code::max_iter, term);
      case Termination::LineSearchFail: return run.finish(exit_code::line_search_fail, term);
      case Termination::Stagnation: return run.finish(exit_code::stagnation, term);
    }
    return run.finish(exit_code::internal, term);
  });
}

int cmd_verify(const std::vector<std::string>& checks, std::uint64_t seed, const CommandOptions& opts,
               bool write_files, std::ostream& out, std::ostream& log) {
  const auto known = battery_names();
  for (const auto& c : checks)
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      log << "error: unknown check '" << c << "'\n";
      return exit_code::bad_config;
    }
  Run run("verify", opts);
  return guarded(run, log, [&] {
    run.manifest()["seeds"] = {{"verify", seed}};
    run.manifest()["checks"] = checks;
    const auto reports = run_battery(checks, seed);
    std::ofstream file;
    if (write_files) {
      fs::create_directories(opts.out);
      file.open(opts.out / "verify.jsonl");
      run.output("records", opts.out / "verify.jsonl");
    }
    bool all = true;
    json summary = json::array();
    for (const auto& r : reports) {
      const std::string line = to_json(r).dump();
      out << line << '\n';
      if (file) file << line << '\n';
      all = all && r.passed;
      summary.push_back({{"name", r.name}, {"passed", r.passed}});
    }
    run.manifest()["summary"] = summary;
    if (!write_files) return all ? exit_code::ok : exit_code::check_failed;
    return run.finish(all ? exit_code::ok : exit_code::check_failed, all ? "all_passed" : "failed");
  });
}

int cmd_check_gradient(const CommandOptions& opts, std::ostream& log) {
  Run run("check-gradient", opts);
  return guarded(run, log, [&] {
    const RunConfig cfg = load(opts, run);
    require_weights(cfg);
    const Scenario sc = build_scenario(cfg);
    run.manifest()["inputs"] = sc.inputs;
    run.manifest()["weights"] = weights_json(sc.problem.weights);
    const std::vector<double> eps = cfg.gc_epsilons.empty() ? default_epsilons() : cfg.gc_epsilons;
    AdjointOptions aopts;
    aopts.corrupt_coupling_sign = opts.corrupt_adjoint;
    const GradientCheck gc = fd_gradient_check(sc.problem, sc.control, cfg.gc_directions, eps,
                                               cfg.seed + 1, aopts, 1e-6, opts.threads);
    const fs::path csv = opts.out / "gradient_sweep.csv";
    std::ofstream os(csv);
    os << "epsilon,max_rel_error\n" << std::setprecision(17);
    for (const auto& row : gc.sweep) os << row.epsilon << ',' << row.max_rel_error << '\n';
    run.output("sweep_csv", csv);
    run.manifest()["report"] = to_json(gc.report);
    if (!opts.quiet)
      log << "check-gradient: plateau relative error " << gc.report.measured << " (tolerance "
          << gc.report.tolerance << ")" << (gc.report.passed ? "  PASS" : "  FAIL") << '\n';
    return run.finish(gc.report.passed ? exit_code::ok : exit_code::check_failed,
                      gc.report.passed ? "passed" : "failed");
  });
}

}  // namespace lansa::cli
