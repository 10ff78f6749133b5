#include "pvflock/building.hpp"

#include <cmath>
#include <string>

#include "pvflock/error.hpp"

namespace pvflock {

namespace {

constexpr double kSecondsPerHour = 3600.0;

BuildingState axpy(const BuildingState& x, double h, const StateRate& k) {
  return {x.t1 + h * k.t1, x.t2 + h * k.t2, x.t3 + h * k.t3};
}

bool plausible(double v) {
  return std::isfinite(v) && v >= kMinPlausibleTemp && v <= kMaxPlausibleTemp;
}

void check_state(const BuildingState& x) {
  if (!plausible(x.t1) || !plausible(x.t2) || !plausible(x.t3)) {
    throw DivergenceError("building state left the plausible range: T1=" +
                          std::to_string(x.t1) + " T2=" + std::to_string(x.t2) +
                          " T3=" + std::to_string(x.t3));
  }
}

}  // namespace

void BuildingParams::validate() const {
  if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0)) {
    throw ConfigError("building capacitances must be positive");
  }
  if (!(k1 > 0.0 && k2 > 0.0 && k4 > 0.0 && k5 > 0.0)) {
    throw ConfigError("building conductances k1, k2, k4, k5 must be positive");
  }
}

StateRate plant_derivative(const BuildingState& x, double u_c, const DisturbanceSample& w,
                           const BuildingParams& p) {
  const double k12 = p.k1 + p.k2;
  // per-second rates from kJ/degC and kW, reported per hour
  const double q1 = k12 * (x.t2 - x.t1) + p.k5 * (x.t3 - x.t1) + u_c + w.d2 + w.d3;
  const double q2 = k12 * (x.t1 - x.t2) + w.d2;
  const double q3 = p.k5 * (x.t1 - x.t3) + p.k4 * (w.d1 - x.t3);
  return {kSecondsPerHour * q1 / p.c1, kSecondsPerHour * q2 / p.c2,
          kSecondsPerHour * q3 / p.c3};
}

BuildingState plant_step(const BuildingState& x, double u_c, const DisturbanceSample& w,
                         const BuildingParams& p, double dt, int substeps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InputError("plant_step: dt must be positive");
  }
  if (substeps < 1) {
    throw InputError("plant_step: substeps must be >= 1");
  }
  if (u_c > 0.0) {
    throw InputError("plant_step: heating (u_c > 0) is not supported");
  }
  if (!std::isfinite(u_c) || !std::isfinite(w.d1) || !std::isfinite(w.d2) ||
      !std::isfinite(w.d3)) {
    throw InputError("plant_step: non-finite input");
  }

  const double h = dt / substeps;
  BuildingState s = x;
  for (int i = 0; i < substeps; ++i) {
    const StateRate k1 = plant_derivative(s, u_c, w, p);
    const StateRate k2 = plant_derivative(axpy(s, 0.5 * h, k1), u_c, w, p);
    const StateRate k3 = plant_derivative(axpy(s, 0.5 * h, k2), u_c, w, p);
    const StateRate k4 = plant_derivative(axpy(s, h, k3), u_c, w, p);
    s.t1 += h / 6.0 * (k1.t1 + 2.0 * k2.t1 + 2.0 * k3.t1 + k4.t1);
    s.t2 += h / 6.0 * (k1.t2 + 2.0 * k2.t2 + 2.0 * k3.t2 + k4.t2);
    s.t3 += h / 6.0 * (k1.t3 + 2.0 * k2.t3 + 2.0 * k3.t3 + k4.t3);
    check_state(s);
  }
  return s;
}

StateSpace build_matrices(const BuildingParams& p) {
  const double k12 = p.k1 + p.k2;
  const double s1 = kSecondsPerHour / p.c1;
  const double s2 = kSecondsPerHour / p.c2;
  const double s3 = kSecondsPerHour / p.c3;

  StateSpace ss;
  ss.a << -(k12 + p.k5) * s1, k12 * s1, p.k5 * s1,  //
      k12 * s2, -k12 * s2, 0.0,                      //
      p.k5 * s3, 0.0, -(p.k5 + p.k4) * s3;
  ss.b << s1, 0.0, 0.0;
  ss.c << 0.0, s1, s1,  //
      0.0, s2, 0.0,     //
      p.k4 * s3, 0.0, 0.0;
  return ss;
}

}  // namespace pvflock
