#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "pvflock/simulation.hpp"

namespace pvflock {

namespace {

// |sum_p - pv| <= eps is judged with this slack for 6-digit reloaded traces
constexpr double kWithinSlack = 1e-9;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

MetricsReport compute_metrics(const SimulationTrace& trace, const ScenarioConfig& cfg,
                              double transient_hours) {
  MetricsReport r;
  r.n_buildings = trace.n_buildings;
  r.steps = trace.steps.size();
  if (trace.steps.empty()) return r;
  r.empty = false;

  const double t_start = trace.steps.front().t;
  double sq_sum = 0.0;
  std::size_t within = 0;
  for (const StepRecord& s : trace.steps) {
    if (s.t - t_start >= transient_hours - 1e-9) {
      for (const BuildingRecord& b : s.buildings) {
        const double t1 = b.state.t1;
        double depth = 0.0;
        if (t1 < cfg.comfort_low) depth = cfg.comfort_low - t1;
        if (t1 > cfg.comfort_high) depth = t1 - cfg.comfort_high;
        if (depth > 0.0) {
          ++r.comfort_violation_steps;
          r.comfort_max_depth = std::max(r.comfort_max_depth, depth);
        }
      }
    }
    if (s.pv > 0.0) {
      ++r.pv_active_steps;
      const double err = s.sum_p - s.pv;
      sq_sum += err * err;
      if (std::abs(err) <= cfg.fleet.epsilon + kWithinSlack) ++within;
    }
    r.peak_sum_p = std::max(r.peak_sum_p, s.sum_p);
    if (s.bounds.infeasible) ++r.infeasible_steps;
  }
  if (r.pv_active_steps > 0) {
    const auto n = static_cast<double>(r.pv_active_steps);
    r.tracking_rms = std::sqrt(sq_sum / n);
    r.tracking_within_eps_pct = 100.0 * static_cast<double>(within) / n;
  }
  return r;
}

std::string format_metrics(const MetricsReport& r) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    out += key + "=" + value + "\n";
  };
  line("empty", r.empty ? "1" : "0");
  line("steps", std::to_string(r.steps));
  line("buildings", std::to_string(r.n_buildings));
  line("comfort_violation_steps", std::to_string(r.comfort_violation_steps));
  line("comfort_max_depth_c", fmt(r.comfort_max_depth));
  line("pv_active_steps", std::to_string(r.pv_active_steps));
  line("tracking_rms_kw", r.tracking_rms ? fmt(*r.tracking_rms) : "n/a");
  line("tracking_within_eps_pct",
       r.tracking_within_eps_pct ? fmt(*r.tracking_within_eps_pct) : "n/a");
  line("peak_sum_p_kw", fmt(r.peak_sum_p));
  line("infeasible_steps", std::to_string(r.infeasible_steps));
  return out;
}

}  // namespace pvflock
