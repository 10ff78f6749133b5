#pragma once

#include <Eigen/Dense>

namespace pvflock {

/// Lumped RC constants of one building. Capacitances in kJ/degC,
/// conductances in kW/degC.
struct BuildingParams {
  double c1 = 9.356e5;  // room air
  double c2 = 2.970e6;  // interior wall surface
  double c3 = 6.695e5;  // exterior wall core
  double k1 = 16.48;
  double k2 = 108.5;
  double k3 = 5.0;  // listed with the model constants, enters no equation
  double k4 = 30.5;
  double k5 = 23.04;

  void validate() const;
};

/// Temperatures in degC.
struct BuildingState {
  double t1 = 0.0;  // room air
  double t2 = 0.0;  // interior wall surface
  double t3 = 0.0;  // exterior wall core

  friend bool operator==(const BuildingState&, const BuildingState&) = default;
};

/// Time derivative of a BuildingState, degC/h.
struct StateRate {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

/// Exogenous inputs held over one sampling interval.
struct DisturbanceSample {
  double d1 = 0.0;  // outside air temperature, degC
  double d2 = 0.0;  // solar gain, kW (effective, aperture folded in)
  double d3 = 0.0;  // internal gains, kW
};

/// Sanity range for every plant temperature.
inline constexpr double kMinPlausibleTemp = -20.0;
inline constexpr double kMaxPlausibleTemp = 60.0;

/// Right-hand side of the three-node model in degC/h. u_c is thermal power
/// (kW, negative for cooling).
StateRate plant_derivative(const BuildingState& x, double u_c, const DisturbanceSample& w,
                           const BuildingParams& p);

/// Advances the state by dt hours with classical RK4, `substeps` equal
/// internal steps, u_c and w held constant. Throws InputError on u_c > 0 or
/// bad step settings, DivergenceError when the state leaves the sanity range.
BuildingState plant_step(const BuildingState& x, double u_c, const DisturbanceSample& w,
                         const BuildingParams& p, double dt, int substeps = 10);

/// x' = A x + B u + C w, all in per-hour units.
struct StateSpace {
  Eigen::Matrix3d a;
  Eigen::Vector3d b;
  Eigen::Matrix3d c;
};

StateSpace build_matrices(const BuildingParams& p);

}  // namespace pvflock
