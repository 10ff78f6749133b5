#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pvflock/building.hpp"
#include "pvflock/coordinator.hpp"
#include "pvflock/mfc.hpp"
#include "pvflock/profile.hpp"

namespace pvflock {

/// Shape parameters of the synthetic summer-day weather.
struct DisturbanceParams {
  double d1_mean = 28.0;  // degC
  double d1_amp = 6.0;    // degC, peak near 15:00
  double d2_peak = 0.4;   // kW, solar noon at 13:00
  double d3_day = 1.0;    // kW, 08:00-18:00
  double d3_night = 0.2;  // kW
};

/// Outside temperature, solar gain and internal gains at t hours (t >= 0).
DisturbanceSample synth_disturbances(double t, const DisturbanceParams& params);

/// Clear-sky PV output: peak * sin^2 over 06:00-20:00, zero at night.
double synth_pv(double t, double peak);

enum class PvSourceKind { Synthetic, Csv };

struct ControllerSettings {
  double alpha = 5.0;
  double kp = 2.0;
  std::size_t window_capacity = 5;
  Estimator estimator = Estimator::Algebraic;
  double ramp_hours = 0.0;
};

struct ScenarioConfig {
  FleetConfig fleet;
  ControllerSettings controller;
  DisturbanceParams disturbance;
  BuildingParams building;

  double horizon = 72.0;  // h
  double setpoint = 23.0;
  double comfort_low = 22.0;
  double comfort_high = 24.0;
  double initial_t1_low = 22.5;
  double initial_t1_high = 26.5;
  std::uint64_t seed = 42;
  int substeps = 10;

  PvSourceKind pv_source = PvSourceKind::Synthetic;
  double pv_peak = 12.0;  // kW
  std::filesystem::path pv_csv;
  /// Optional measured weather channels replacing the synthetic ones.
  std::filesystem::path d1_csv;
  std::filesystem::path d2_csv;
  std::filesystem::path d3_csv;

  std::filesystem::path output_trace = "trace.csv";

  /// Keys set explicitly by the parsed file, in file order.
  std::vector<std::string> explicit_keys;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  [[nodiscard]] ControllerConfig controller_config() const;
  [[nodiscard]] std::size_t step_count() const;
};

/// Per-building initial states: T1 uniform in [initial_t1_low, initial_t1_high]
/// from a seeded 64-bit Mersenne Twister, T2 = T1, T3 = T1 + 1.
std::vector<BuildingState> initial_states(const ScenarioConfig& cfg);

/// PV and weather inputs of a scenario, CSV profiles loaded once.
class ScenarioInputs {
 public:
  explicit ScenarioInputs(const ScenarioConfig& cfg);

  [[nodiscard]] double pv(double t) const;
  [[nodiscard]] DisturbanceSample disturbance(double t) const;

 private:
  DisturbanceParams params_;
  double pv_peak_;
  std::optional<Profile> pv_profile_;
  std::optional<Profile> d1_;
  std::optional<Profile> d2_;
  std::optional<Profile> d3_;
};

/// Parses flat `section.key = value` text. Omitted keys keep their defaults;
/// unknown or repeated keys, malformed values and constraint violations
/// throw ConfigError. Relative CSV paths are resolved against `base_dir`.
ScenarioConfig parse_config(const std::string& text,
                            const std::filesystem::path& base_dir = {});

ScenarioConfig load_config(const std::filesystem::path& path);

/// The key names accepted by parse_config, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace pvflock
