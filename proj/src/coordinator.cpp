#include "pvflock/coordinator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pvflock/error.hpp"

namespace pvflock {

void FleetConfig::validate() const {
  if (n_buildings < 1) {
    throw ConfigError("fleet.n_buildings must be >= 1");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("fleet.epsilon must be positive");
  }
  if (!(hvac_max > 0.0) || !std::isfinite(hvac_max)) {
    throw ConfigError("fleet.hvac_max must be positive");
  }
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) {
    throw ConfigError("fleet.sample_dt must be positive");
  }
}

PowerBand power_band(double pv, double epsilon) {
  if (!(pv >= 0.0) || !std::isfinite(pv)) {
    throw InputError("power_band: pv must be finite and >= 0, got " + std::to_string(pv));
  }
  if (!(epsilon > 0.0)) {
    throw InputError("power_band: epsilon must be positive");
  }
  if (pv == 0.0) {
    return {0.0, 0.0, false};
  }
  return {std::max(0.0, pv - epsilon), pv + epsilon, true};
}

BuildingBounds per_building_bounds(const PowerBand& band, const FleetConfig& cfg) {
  if (!band.pv_active || !cfg.track_pv) {
    return {0.0, cfg.hvac_max, false};
  }
  const double n = static_cast<double>(cfg.n_buildings);
  // A floored lower edge (pv < eps) gives the same share as the raw negative
  // one once intersected with [0, hvac_max].
  const double raw_lo = band.lower / n;
  const double raw_hi = band.upper / n;
  if (raw_lo > cfg.hvac_max) {
    return {cfg.hvac_max, cfg.hvac_max, true};
  }
  return {raw_lo, std::min(cfg.hvac_max, raw_hi), false};
}

ClampResult clamp_to_bounds(double u_raw, const BuildingBounds& b) {
  const double demand = -u_raw;
  const double p = std::min(std::max(demand, b.lower), b.upper);
  return {0.0 - p, p, p != demand};  // 0.0 - p avoids a signed zero
}

StepRecord coordinator_step(std::span<Building> fleet, double pv, const DisturbanceSample& w,
                            const FleetConfig& cfg, const BuildingParams& params, double t,
                            int substeps) {
  StepRecord rec;
  rec.t = t;
  rec.pv = pv;
  rec.band = power_band(pv, cfg.epsilon);
  rec.bounds = per_building_bounds(rec.band, cfg);
  rec.buildings.reserve(fleet.size());

  for (std::size_t i = 0; i < fleet.size(); ++i) {
    Building& b = fleet[i];
    const double u_raw = b.controller.step(b.state.t1, t);
    const ClampResult c = clamp_to_bounds(u_raw, rec.bounds);
    rec.buildings.push_back({b.state, c.u_applied, c.p, c.clamped});
    try {
      b.state = plant_step(b.state, c.u_applied, w, params, cfg.sample_dt, substeps);
    } catch (const DivergenceError& err) {
      throw DivergenceError("building " + std::to_string(i) + " diverged at t=" +
                            std::to_string(t) + " h: " + err.what());
    }
    b.controller.commit(c.u_applied);
    rec.sum_p += c.p;
  }
  return rec;
}

}  // namespace pvflock
