#include "pvflock/simulation.hpp"

#include <vector>

namespace pvflock {

SimulationTrace run_simulation(const ScenarioConfig& cfg) {
  cfg.validate();
  const ScenarioInputs inputs(cfg);

  std::vector<Building> fleet;
  fleet.reserve(cfg.fleet.n_buildings);
  for (const BuildingState& x0 : initial_states(cfg)) {
    fleet.push_back(Building{IpController(cfg.controller_config()), x0});
  }

  SimulationTrace trace;
  trace.n_buildings = cfg.fleet.n_buildings;
  trace.dt = cfg.fleet.sample_dt;
  const std::size_t n = cfg.step_count();
  trace.steps.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * cfg.fleet.sample_dt;
    trace.steps.push_back(coordinator_step(fleet, inputs.pv(t), inputs.disturbance(t),
                                           cfg.fleet, cfg.building, t, cfg.substeps));
  }
  return trace;
}

}  // namespace pvflock
