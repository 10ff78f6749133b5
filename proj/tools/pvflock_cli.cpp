// pvflock: run PV-following fleet scenarios, summarise traces, emit profiles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pvflock/error.hpp"
#include "pvflock/profile.hpp"
#include "pvflock/scenario.hpp"
#include "pvflock/simulation.hpp"
#include "pvflock/text.hpp"

namespace {

using namespace pvflock;

struct RunArgs {
  std::string config;
  std::string config_flag;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct MetricsArgs {
  std::string trace;
  std::string config;
  double transient = 6.0;
};

struct ProfileArgs {
  std::string kind;
  std::string out;
  std::string config;
  std::optional<double> peak;
  double horizon = 72.0;
  double dt = 1.0 / 6.0;
};

ScenarioConfig config_or_default(const std::string& path) {
  return path.empty() ? ScenarioConfig{} : load_config(path);
}

// --seed, then the config's own seed key, then PVFLOCK_SEED
std::uint64_t resolve_seed(const RunArgs& args, const ScenarioConfig& cfg) {
  if (args.seed) return *args.seed;
  if (std::ranges::find(cfg.explicit_keys, "seed") != cfg.explicit_keys.end()) return cfg.seed;
  if (const char* env = std::getenv("PVFLOCK_SEED")) {
    const auto v = parse_u64(trim(env));
    if (!v) throw ConfigError("PVFLOCK_SEED is not a non-negative integer");
    return *v;
  }
  return cfg.seed;
}

int cmd_run(const RunArgs& args) {
  const std::string path = args.config.empty() ? args.config_flag : args.config;
  ScenarioConfig cfg = config_or_default(path);
  cfg.seed = resolve_seed(args, cfg);
  const SimulationTrace trace = run_simulation(cfg);
  const std::filesystem::path out =
      args.out.empty() ? cfg.output_trace : std::filesystem::path(args.out);
  write_trace(trace, out);
  if (!args.quiet) {
    std::cout << "trace=" << out.string() << "\n"
              << "seed=" << cfg.seed << "\n"
              << format_metrics(compute_metrics(trace, cfg));
  }
  return 0;
}

int cmd_metrics(const MetricsArgs& args) {
  const ScenarioConfig cfg = config_or_default(args.config);
  const SimulationTrace trace = read_trace(args.trace);
  std::cout << format_metrics(compute_metrics(trace, cfg, args.transient));
  return 0;
}

int cmd_gen_profile(const ProfileArgs& args) {
  const ScenarioConfig cfg = config_or_default(args.config);
  if (!(args.dt > 0.0) || !(args.horizon >= 0.0)) {
    throw ConfigError("gen-profile needs --dt > 0 and --horizon >= 0");
  }
  Profile prof;
  prof.t0 = 0.0;
  prof.dt = args.dt;
  const auto n = static_cast<std::size_t>(std::llround(args.horizon / args.dt)) + 1;
  const double peak = args.peak.value_or(cfg.pv_peak);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * args.dt;
    const DisturbanceSample w = synth_disturbances(t, cfg.disturbance);
    if (args.kind == "pv") {
      prof.values.push_back(synth_pv(t, peak));
    } else if (args.kind == "outdoor") {
      prof.values.push_back(w.d1);
    } else if (args.kind == "solar") {
      prof.values.push_back(w.d2);
    } else if (args.kind == "internal") {
      prof.values.push_back(w.d3);
    } else {
      throw ConfigError("unknown profile kind '" + args.kind +
                        "' (pv, outdoor, solar, internal)");
    }
  }
  write_profile_csv(prof, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pvflock: model-free HVAC fleet control following a PV profile"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "simulate a scenario and write its trace");
  run_cmd->add_option("scenario", run.config, "scenario config file");
  run_cmd->add_option("--config", run.config_flag, "scenario config file");
  run_cmd->add_option("--out", run.out, "trace CSV path (overrides output.trace)");
  run_cmd->add_option("--seed", run.seed, "seed for initial temperatures");
  run_cmd->add_flag("--quiet", run.quiet, "do not print metrics");

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "summarise a trace CSV");
  metrics_cmd->add_option("trace", metrics.trace, "trace CSV")->required();
  metrics_cmd->add_option("--config", metrics.config, "config providing comfort band and epsilon");
  metrics_cmd->add_option("--transient", metrics.transient, "hours excluded from comfort counts");

  ProfileArgs prof;
  auto* prof_cmd = app.add_subcommand("gen-profile", "write a synthetic t_hours,value profile");
  prof_cmd->add_option("kind", prof.kind, "pv | outdoor | solar | internal")->required();
  prof_cmd->add_option("out", prof.out, "output CSV")->required();
  prof_cmd->add_option("--config", prof.config, "config providing disturbance shapes");
  prof_cmd->add_option("--peak", prof.peak, "PV peak in kW");
  prof_cmd->add_option("--horizon", prof.horizon, "hours");
  prof_cmd->add_option("--dt", prof.dt, "sample spacing in hours");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run);
    if (metrics_cmd->parsed()) return cmd_metrics(metrics);
    if (prof_cmd->parsed()) return cmd_gen_profile(prof);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
