#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pvflock/coordinator.hpp"
#include "pvflock/scenario.hpp"

namespace pvflock {

/// Every coordinator step of one run, in time order.
struct SimulationTrace {
  std::size_t n_buildings = 0;
  double dt = 1.0 / 6.0;
  std::vector<StepRecord> steps;
};

/// Builds the fleet from the config and seed and iterates the coordinator
/// over the horizon. Deterministic for a given config.
SimulationTrace run_simulation(const ScenarioConfig& cfg);

/// Comfort and PV-tracking summary of a trace.
struct MetricsReport {
  bool empty = true;
  std::size_t steps = 0;
  std::size_t n_buildings = 0;
  /// building-steps outside [comfort_low, comfort_high] after the transient
  std::size_t comfort_violation_steps = 0;
  double comfort_max_depth = 0.0;  // degC
  std::size_t pv_active_steps = 0;
  /// Not applicable (empty) when no step had PV.
  std::optional<double> tracking_rms;             // kW
  std::optional<double> tracking_within_eps_pct;  // %
  double peak_sum_p = 0.0;                        // kW
  std::size_t infeasible_steps = 0;
};

MetricsReport compute_metrics(const SimulationTrace& trace, const ScenarioConfig& cfg,
                              double transient_hours = 6.0);

/// Stable `key=value` lines, one per metric.
std::string format_metrics(const MetricsReport& report);

/// CSV with header `t_hours,pv_kw,sum_p_kw,band_lo_kw,band_hi_kw,infeasible`
/// followed by `T1_i,T2_i,T3_i,u_i_kw,p_i_kw,clamped_i` per building (1-based),
/// values at 6 significant digits.
void write_trace(const SimulationTrace& trace, const std::filesystem::path& path);
std::string format_trace(const SimulationTrace& trace);

/// Reads a file produced by write_trace. Per-building bounds are not stored
/// and come back default-initialised.
SimulationTrace read_trace(const std::filesystem::path& path);
SimulationTrace parse_trace(const std::string& text);

}  // namespace pvflock
