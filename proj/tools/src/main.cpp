#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "presets.hpp"
#include "qtrack/errors.hpp"
#include "qtrack/lissajous.hpp"
#include "qtrack/sim_loop.hpp"
#include "run_artifacts.hpp"

#ifndef QTRACK_VERSION
#define QTRACK_VERSION "0.0.0"
#endif

namespace qtrack::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::optional<double> dt_override;
  std::optional<double> t_end_override;
};

ExperimentConfig load_run_config(const RunOptions& options) {
  if (options.config_path.empty() == options.preset.empty())
    throw Error("config: exactly one of --config or --preset is required");
  ExperimentConfig config = options.preset.empty()
                                ? load_config_file(options.config_path)
                                : parse_config(preset_document(options.preset));
  if (options.dt_override) {
    if (!(*options.dt_override > 0.0)) throw Error("config: --dt must be positive");
    config.dt = *options.dt_override;
  }
  if (options.t_end_override) {
    if (!(*options.t_end_override > 0.0))
      throw Error("config: --t-end must be positive");
    config.t_end = *options.t_end_override;
  }
  return config;
}

json scan_plan_json(const FrequencyPlan& plan, const LissajousSpec& trajectory) {
  return {{"omega_x", plan.omega_x},
          {"omega_y", plan.omega_y},
          {"ratio", std::to_string(plan.ratio_num) + ":" +
                        std::to_string(plan.ratio_den)},
          {"resolution_um", scan_resolution(trajectory)},
          {"frame_period_s", plan.frame_period},
          {"closure_period_s", plan.closure_period}};
}

void write_manifest(const fs::path& file, const json& manifest) {
  std::ofstream stream(file);
  if (!stream) throw Error("cannot open '" + file.string() + "' for writing");
  stream << manifest.dump(2) << '\n';
  if (!stream) throw Error("write failed for '" + file.string() + "'");
}

int cmd_simulate(const RunOptions& options, const std::string& out_dir) {
  const ExperimentConfig config = load_run_config(options);
  const ExperimentBuild build = build_experiment(config);

  std::vector<AxisCheck> checks;
  for (const AxisBuild& axis : build.axes) {
    checks.push_back(run_axis_checks(axis));
    std::cout << format_axis_check(checks.back());
    if (!checks.back().enforced_ok())
      std::cerr << "warning: axis " << axis.name
                << " failed design checks; simulating anyway\n";
  }

  const auto started = std::chrono::steady_clock::now();
  std::optional<DualAxisTrace> dual;
  std::optional<SimTrace> single;
  if (build.axes.size() == 2)
    dual = simulate_dual(build.axes[0].loop, build.axes[1].loop);
  else
    single = simulate_axis(build.axes[0].loop);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  const auto emit = [&](const std::string& name, const auto& writer) {
    writer(dir / name);
    outputs.push_back(name);
  };

  json quiet_times = json::object();
  if (dual) {
    emit("x_trace.csv",
         [&](const fs::path& p) { write_trace_csv(p, dual->x); });
    emit("y_trace.csv",
         [&](const fs::path& p) { write_trace_csv(p, dual->y); });
    emit("error_summary.csv",
         [&](const fs::path& p) { write_summary_csv(p, *dual); });
    emit("x_panels.svg",
         [&](const fs::path& p) { write_axis_panels_svg(p, 'x', dual->x); });
    emit("y_panels.svg",
         [&](const fs::path& p) { write_axis_panels_svg(p, 'y', dual->y); });
    emit("trajectory.svg",
         [&](const fs::path& p) { write_trajectory_svg(p, *dual); });
    emit("error_norm.svg",
         [&](const fs::path& p) { write_error_norm_svg(p, *dual); });
    quiet_times["x"] = dual->x.e_tilde_last_nonzero;
    quiet_times["y"] = dual->y.e_tilde_last_nonzero;
  } else {
    const char axis = build.axes[0].name;
    const std::string prefix(1, axis);
    emit(prefix + "_trace.csv",
         [&](const fs::path& p) { write_trace_csv(p, *single); });
    emit(prefix + "_panels.svg",
         [&](const fs::path& p) { write_axis_panels_svg(p, axis, *single); });
    quiet_times[prefix] = single->e_tilde_last_nonzero;
  }

  json manifest = {{"toolkit_version", QTRACK_VERSION},
                   {"command", "simulate"},
                   {"preset", options.preset.empty() ? json() : json(options.preset)},
                   {"config", normalized_json(config)},
                   {"scan_plan", scan_plan_json(build.plan, config.trajectory)},
                   {"runtime_seconds", runtime},
                   {"outputs", outputs},
                   {"e_tilde_last_nonzero", quiet_times}};
  json check_list = json::array();
  for (const AxisCheck& check : checks) check_list.push_back(axis_check_json(check));
  manifest["design_checks"] = check_list;
  if (dual) manifest["final_error_norm_um"] = dual->e_norm.back();
  outputs.push_back("manifest.json");
  manifest["outputs"] = outputs;
  write_manifest(dir / "manifest.json", manifest);

  char buf[160];
  std::snprintf(buf, sizeof buf, "simulated %zu axis(es) in %.2f s\n",
                build.axes.size(), runtime);
  std::cout << buf;
  for (const auto& [axis, t_quiet] : quiet_times.items()) {
    const double value = t_quiet.get<double>();
    if (value < 0)
      std::snprintf(buf, sizeof buf, "axis %s: loop input never left zero\n",
                    axis.c_str());
    else
      std::snprintf(buf, sizeof buf, "axis %s: loop input quiet after t = %.4g s\n",
                    axis.c_str(), value);
    std::cout << buf;
  }
  if (dual) {
    std::snprintf(buf, sizeof buf, "final euclidean error: %.6g um\n",
                  dual->e_norm.back());
    std::cout << buf;
  }
  for (const std::string& name : outputs)
    std::cout << "wrote " << (dir / name).string() << "\n";
  return 0;
}

int cmd_check(const RunOptions& options) {
  const ExperimentConfig config = load_run_config(options);
  const ExperimentBuild build = build_experiment(config);
  bool all_ok = true;
  for (const AxisBuild& axis : build.axes) {
    const AxisCheck check = run_axis_checks(axis);
    std::cout << format_axis_check(check);
    all_ok = all_ok && check.enforced_ok();
  }
  std::cout << (all_ok ? "all design checks passed\n" : "design checks FAILED\n");
  return all_ok ? 0 : 3;
}

int cmd_plan(double ax, double ay, double f, std::optional<int> N,
             std::optional<double> h_target, const std::string& write_path) {
  if (N && h_target) throw Error("config: give either --cycles or --resolution");
  if (!N && !h_target) throw Error("config: one of --cycles or --resolution is required");
  if (h_target && !(*h_target > 0.0))
    throw Error("config: --resolution must be positive");

  LissajousSpec spec{.x0 = 0.0, .y0 = 0.0, .ax = ax, .ay = ay,
                     .N = N ? *N : required_N(ax, ay, *h_target), .f = f};
  spec.validate();
  const FrequencyPlan plan = plan_frequencies(spec);
  const double h = scan_resolution(spec);

  char buf[160];
  std::cout << "scan plan:\n";
  std::snprintf(buf, sizeof buf, "  cycles N: %d\n", spec.N);
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "  omega_x: %.17g rad/s\n", plan.omega_x);
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "  omega_y: %.17g rad/s\n", plan.omega_y);
  std::cout << buf;
  std::cout << "  frequency ratio: " << plan.ratio_num << ":" << plan.ratio_den
            << "\n";
  std::snprintf(buf, sizeof buf, "  resolution h: %.17g um\n", h);
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "  frame period: %.17g s\n", plan.frame_period);
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "  closure period: %.17g s\n", plan.closure_period);
  std::cout << buf;

  if (!write_path.empty()) {
    // Ready-to-run document around the planned trajectory: second-order stage,
    // micrometre quantization and the standard additive loop design.
    ExperimentConfig config;
    config.plant_a = 10.0;
    config.plant_b = 1.7e7;
    config.delta = 1.0;
    config.dt = 1e-5;
    config.t_end = 4.0;
    config.record_stride = 10;
    config.design = DesignParams{.k0 = 10.0, .resonant_k = 10.0,
                                 .first_order_k = 10.0,
                                 .causality_pole_factor = 100.0};
    config.trajectory = spec;
    std::ofstream stream(write_path);
    if (!stream) throw Error("cannot open '" + write_path + "' for writing");
    stream << normalized_json(config).dump(2) << '\n';
    if (!stream) throw Error("write failed for '" + write_path + "'");
    std::cout << "wrote " << write_path << "\n";
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Simulation and design-verification toolkit for quantized "
               "tracking loops"};
  app.set_version_flag("--version", QTRACK_VERSION);
  app.require_subcommand(0, 1);

  RunOptions options;
  std::string out_dir = "qtrack_out";
  double dt_value = 0.0, t_end_value = 0.0;

  const auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path,
                    "Path to an experiment config (JSON)");
    cmd->add_option("--preset", options.preset,
                    "Built-in experiment name; see --list");
    cmd->add_option("--dt", dt_value, "Override the integration step [s]");
    cmd->add_option("--t-end", t_end_value, "Override the simulated horizon [s]");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the quantized tracking loop and write traces and plots");
  add_run_options(simulate);
  simulate->add_option("--out", out_dir, "Output directory (created if absent)");

  CLI::App* check = app.add_subcommand(
      "check", "Verify the loop design and reference recoverability");
  add_run_options(check);

  CLI::App* plan =
      app.add_subcommand("plan", "Size a scan: frequencies, ratio and resolution");
  double ax = 1.0, ay = 1.0, f = 1.0;
  int N_value = 0;
  double h_value = 0.0;
  std::string write_path;
  plan->add_option("--ax", ax, "Scan half-width in x [um]");
  plan->add_option("--ay", ay, "Scan half-height in y [um]");
  plan->add_option("--f", f, "Frame rate [Hz]");
  CLI::Option* N_opt = plan->add_option("--cycles", N_value, "Scan cycles N");
  CLI::Option* h_opt =
      plan->add_option("--resolution", h_value, "Target resolution h [um]");
  plan->add_option("--write-config", write_path,
                   "Also write a ready-to-run config to this path");

  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "Print preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list_presets) {
    for (const std::string& name : preset_names()) std::cout << name << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  if (simulate->count("--dt") || check->count("--dt"))
    options.dt_override = dt_value;
  if (simulate->count("--t-end") || check->count("--t-end"))
    options.t_end_override = t_end_value;

  if (simulate->parsed()) return cmd_simulate(options, out_dir);
  if (check->parsed()) return cmd_check(options);
  return cmd_plan(ax, ay, f,
                  N_opt->count() ? std::optional<int>(N_value) : std::nullopt,
                  h_opt->count() ? std::optional<double>(h_value) : std::nullopt,
                  write_path);
}

}  // namespace
}  // namespace qtrack::cli

int main(int argc, char** argv) {
  try {
    return qtrack::cli::run(argc, argv);
  } catch (const qtrack::NumericalDivergence& e) {
    std::cerr << "error: simulation diverged: " << e.what() << " (|y| = " << e.value()
              << " at t = " << e.time() << " s)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
