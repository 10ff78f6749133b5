#include "pvflock/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pvflock/error.hpp"

namespace pvflock {

namespace {

double hour_of_day(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InputError("synthetic profiles need t >= 0, got " + std::to_string(t));
  }
  return std::fmod(t, 24.0);
}

// sin^2 bell over 06:00-20:00, peaking at 13:00
double daylight_shape(double h) {
  if (h < 6.0 || h > 20.0) return 0.0;
  const double s = std::max(0.0, std::sin(std::numbers::pi * (h - 6.0) / 14.0));
  return s * s;
}

double unit_interval(std::mt19937_64& rng) {
  // 53 high bits; fixed across standard libraries unlike uniform_real_distribution
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DisturbanceSample synth_disturbances(double t, const DisturbanceParams& params) {
  const double h = hour_of_day(t);
  DisturbanceSample w;
  w.d1 = params.d1_mean + params.d1_amp * std::sin(2.0 * std::numbers::pi * (h - 9.0) / 24.0);
  w.d2 = params.d2_peak * daylight_shape(h);
  w.d3 = (h >= 8.0 && h <= 18.0) ? params.d3_day : params.d3_night;
  return w;
}

double synth_pv(double t, double peak) { return peak * daylight_shape(hour_of_day(t)); }

void ScenarioConfig::validate() const {
  fleet.validate();
  controller_config().validate();
  building.validate();

  if (!(comfort_low < setpoint && setpoint < comfort_high)) {
    throw ConfigError("need comfort_low < setpoint < comfort_high");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw ConfigError("horizon must be >= 0");
  }
  const double ratio = horizon / fleet.sample_dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("horizon must be a multiple of fleet.sample_dt");
  }
  if (!(initial_t1_low <= initial_t1_high) || initial_t1_low < kMinPlausibleTemp ||
      initial_t1_high + 1.0 > kMaxPlausibleTemp) {
    throw ConfigError("initial_t1_low/initial_t1_high must be an ordered plausible range");
  }
  if (substeps < 1) {
    throw ConfigError("substeps must be >= 1");
  }
  if (!(pv_peak >= 0.0) || !std::isfinite(pv_peak)) {
    throw ConfigError("pv.peak must be >= 0");
  }
  if (pv_source == PvSourceKind::Csv && pv_csv.empty()) {
    throw ConfigError("pv.source = csv requires pv.csv");
  }
  if (!(disturbance.d2_peak >= 0.0) || !(disturbance.d3_day >= 0.0) ||
      !(disturbance.d3_night >= 0.0)) {
    throw ConfigError("disturbance gains d2_peak, d3_day, d3_night must be >= 0");
  }
  if (!std::isfinite(disturbance.d1_mean) || !std::isfinite(disturbance.d1_amp)) {
    throw ConfigError("disturbance.d1_mean and d1_amp must be finite");
  }
}

ControllerConfig ScenarioConfig::controller_config() const {
  ControllerConfig c;
  c.alpha = controller.alpha;
  c.kp = controller.kp;
  c.setpoint = setpoint;
  c.estimator = controller.estimator;
  c.window_capacity = controller.window_capacity;
  c.sample_dt = fleet.sample_dt;
  c.ramp_hours = controller.ramp_hours;
  return c;
}

std::size_t ScenarioConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(horizon / fleet.sample_dt));
}

std::vector<BuildingState> initial_states(const ScenarioConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<BuildingState> out;
  out.reserve(cfg.fleet.n_buildings);
  for (std::size_t i = 0; i < cfg.fleet.n_buildings; ++i) {
    const double t1 =
        cfg.initial_t1_low + (cfg.initial_t1_high - cfg.initial_t1_low) * unit_interval(rng);
    out.push_back({t1, t1, t1 + 1.0});
  }
  return out;
}

ScenarioInputs::ScenarioInputs(const ScenarioConfig& cfg)
    : params_(cfg.disturbance), pv_peak_(cfg.pv_peak) {
  if (cfg.pv_source == PvSourceKind::Csv) {
    pv_profile_ = load_profile_csv(cfg.pv_csv, /*non_negative=*/true);
  }
  if (!cfg.d1_csv.empty()) d1_ = load_profile_csv(cfg.d1_csv);
  if (!cfg.d2_csv.empty()) d2_ = load_profile_csv(cfg.d2_csv, true);
  if (!cfg.d3_csv.empty()) d3_ = load_profile_csv(cfg.d3_csv, true);
}

double ScenarioInputs::pv(double t) const {
  if (pv_profile_) return pv_profile_->at(t);
  return synth_pv(t, pv_peak_);
}

DisturbanceSample ScenarioInputs::disturbance(double t) const {
  DisturbanceSample w = synth_disturbances(t, params_);
  if (d1_) w.d1 = d1_->at(t);
  if (d2_) w.d2 = d2_->at(t);
  if (d3_) w.d3 = d3_->at(t);
  return w;
}

}  // namespace pvflock
