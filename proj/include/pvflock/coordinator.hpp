#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pvflock/building.hpp"
#include "pvflock/mfc.hpp"

namespace pvflock {

/// Admissible aggregate consumption around the PV output.
struct PowerBand {
  double lower = 0.0;  // kW
  double upper = 0.0;  // kW
  bool pv_active = false;
};

/// Admissible electrical draw of one building.
struct BuildingBounds {
  double lower = 0.0;  // kW
  double upper = 0.0;  // kW
  bool infeasible = false;
};

struct FleetConfig {
  std::size_t n_buildings = 13;
  double epsilon = 1.0;           // band half-width, kW
  double hvac_max = 3.0;          // per-unit electrical limit, kW
  double sample_dt = 1.0 / 6.0;   // h
  /// When false the PV band is ignored and every building is only saturated.
  bool track_pv = true;

  void validate() const;
};

/// pv == 0 gives an inert band; otherwise [max(0, pv - eps), pv + eps].
/// Throws InputError on negative pv or non-positive epsilon.
PowerBand power_band(double pv, double epsilon);

/// Equal share of the band per building, intersected with [0, hvac_max].
/// An empty intersection is clamped to the nearest limit and flagged.
BuildingBounds per_building_bounds(const PowerBand& band, const FleetConfig& cfg);

struct ClampResult {
  double u_applied;  // thermal, kW (<= 0)
  double p;          // electrical, kW (>= 0)
  bool clamped;
};

/// Converts the thermal command to electrical draw p = -u_raw (COP 1) and
/// clamps p into the bounds.
ClampResult clamp_to_bounds(double u_raw, const BuildingBounds& b);

/// One controlled building of the fleet.
struct Building {
  IpController controller;
  BuildingState state;
};

/// What happened to one building during a coordinator step.
/// Temperatures are measured at the start of the interval.
struct BuildingRecord {
  BuildingState state;
  double u_applied = 0.0;
  double p = 0.0;
  bool clamped = false;
};

struct StepRecord {
  double t = 0.0;
  double pv = 0.0;
  PowerBand band;
  BuildingBounds bounds;
  double sum_p = 0.0;
  std::vector<BuildingRecord> buildings;
};

/// Runs estimate -> control -> clamp -> actuate -> record for every building
/// over one sampling interval starting at t, updating the fleet in place.
/// DivergenceError messages name the building index (0-based) and time.
StepRecord coordinator_step(std::span<Building> fleet, double pv, const DisturbanceSample& w,
                            const FleetConfig& cfg, const BuildingParams& params, double t,
                            int substeps = 10);

}  // namespace pvflock
