// Acceptance checks, one pass/fail line per criterion.
//   acceptance                 run all
//   acceptance --criterion N   run one (exit status reflects it)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pvflock/building.hpp"
#include "pvflock/coordinator.hpp"
#include "pvflock/mfc.hpp"
#include "pvflock/simulation.hpp"
#include "scalar_loop.hpp"

using namespace pvflock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ScenarioConfig scenario(std::size_t n_buildings, double pv_peak) {
  ScenarioConfig cfg;
  cfg.fleet.n_buildings = n_buildings;
  cfg.pv_peak = pv_peak;
  cfg.validate();
  return cfg;
}

bool tracking_ok(const MetricsReport& m) {
  return m.tracking_within_eps_pct && *m.tracking_within_eps_pct >= 95.0 && m.tracking_rms &&
         *m.tracking_rms <= 1.0;
}

Outcome regulation_only() {
  const ScenarioConfig cfg = scenario(13, 0.0);
  const auto start = std::chrono::steady_clock::now();
  const SimulationTrace tr = run_simulation(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const MetricsReport m = compute_metrics(tr, cfg);
  bool p_ok = true;
  for (const StepRecord& r : tr.steps)
    for (const BuildingRecord& b : r.buildings) p_ok = p_ok && b.p >= 0.0 && b.p <= 3.0;
  const bool pass = m.comfort_violation_steps == 0 && p_ok && secs < 1.0;
  return {pass, fmt("violations=%zu (need 0) max_depth=%.3f C p_in_[0,3]=%s runtime=%.3f s",
                    m.comfort_violation_steps, m.comfort_max_depth, p_ok ? "yes" : "no", secs)};
}

Outcome pv_tracking() {
  const ScenarioConfig cfg = scenario(13, 12.0);
  const MetricsReport m = compute_metrics(run_simulation(cfg), cfg);
  const bool pass = tracking_ok(m) && m.comfort_max_depth <= 0.5;
  return {pass, fmt("within_eps=%.1f%% (>=95) rms=%.3f kW (<=1) comfort_max_depth=%.3f C (<=0.5) "
                    "violations=%zu",
                    m.tracking_within_eps_pct.value_or(0.0), m.tracking_rms.value_or(INFINITY),
                    m.comfort_max_depth, m.comfort_violation_steps)};
}

Outcome fleet_size() {
  const ScenarioConfig c13 = scenario(13, 12.0);
  const ScenarioConfig c14 = scenario(14, 12.0);
  const MetricsReport m13 = compute_metrics(run_simulation(c13), c13);
  const MetricsReport m14 = compute_metrics(run_simulation(c14), c14);
  const bool pass = m14.comfort_violation_steps < m13.comfort_violation_steps && tracking_ok(m14);
  return {pass, fmt("violations N=13: %zu, N=14: %zu (need strictly fewer); N=14 within_eps=%.1f%% "
                    "rms=%.3f kW",
                    m13.comfort_violation_steps, m14.comfort_violation_steps,
                    m14.tracking_within_eps_pct.value_or(0.0), m14.tracking_rms.value_or(INFINITY))};
}

Outcome estimator_oracle() {
  const ControllerConfig base{};
  const double limit = 3.0 * static_cast<double>(base.window_capacity - 1) * base.sample_dt;
  bool settle_ok = true;
  double worst = 0.0;
  std::string worst_case;
  for (Estimator est : {Estimator::Algebraic, Estimator::ClosedLoop}) {
    for (double f0 : {-2.0, 0.0, 3.0}) {
      for (double y0 : {22.0, 23.0, 24.0}) {
        ControllerConfig cfg = base;
        cfg.estimator = est;
        const auto run = testing::run_scalar_loop(cfg, f0, y0, 400);
        const double t = testing::settle_time(run, f0, 1e-3).value_or(INFINITY);
        if (t > worst) {
          worst = t;
          worst_case = fmt("%s F0=%g y0=%g", std::string(to_string(est)).c_str(), f0, y0);
        }
        settle_ok = settle_ok && t <= limit + 1e-9;
      }
    }
  }

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double max_err = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t cap = 3 + 2 * (rng() % 8);
    const double dt = 0.02 + std::abs(d(rng)) / 20.0;
    const double a = 23.0 + d(rng), b = d(rng), u = d(rng) / 4.0, alpha = 5.0;
    SampleWindow w(cap, dt);
    for (std::size_t k = 0; k < cap; ++k) {
      const double s = dt * static_cast<double>(k);
      w.push(Sample{s, a + b * s, u, 0.0, 0.0});
    }
    max_err = std::max(max_err, std::abs(*estimate_f_algebraic(w, alpha) - (b - alpha * u)));
  }
  const bool exact_ok = max_err <= 1e-9;
  return {settle_ok && exact_ok,
          fmt("worst settle %.3f h (%s) vs limit %.3f h = 3 spans; affine max error %.2e (<=1e-9)",
              worst, worst_case.c_str(), limit, max_err)};
}

Outcome contraction() {
  const ControllerConfig cfg{};
  const auto run = testing::run_scalar_loop(cfg, 3.0, 25.0, 11, /*inject_true_f=*/true);
  const double expect = 1.0 - cfg.kp * cfg.sample_dt;
  double dev = 0.0;
  for (std::size_t k = 1; k < run.size(); ++k) {
    dev = std::max(dev, std::abs(run[k].e / run[k - 1].e - expect));
  }
  return {dev <= 1e-6, fmt("max |ratio - %.6f| = %.2e over 10 steps (<=1e-6)", expect, dev)};
}

Outcome plant_fidelity() {
  const BuildingParams p{};
  const BuildingState x0{24, 23, 26};
  const DisturbanceSample w{30, 0.1, 1};
  const double u = -2.0, dt = 1.0 / 6.0;
  BuildingState x = x0;
  for (int k = 0; k < 144; ++k) x = plant_step(x, u, w, p, dt);
  const auto ref = oracle::dormand_prince<3>(
      [&](const oracle::Vec<3>& s) { return oracle::building_rhs(s, u, {w.d1, w.d2, w.d3}); },
      {x0.t1, x0.t2, x0.t3}, 0.0, 24.0, 1e-12, 1e-13);
  const double err = std::max(
      {std::abs(x.t1 - ref[0]), std::abs(x.t2 - ref[1]), std::abs(x.t3 - ref[2])});
  BuildingState eq{27.5, 27.5, 27.5};
  for (int k = 0; k < 144; ++k) eq = plant_step(eq, 0.0, {27.5, 0.0, 0.0}, p, dt);
  const bool eq_ok = eq == BuildingState{27.5, 27.5, 27.5};
  return {err <= 1e-6 && eq_ok, fmt("24 h max error %.2e C (<=1e-6); equilibrium exact=%s", err,
                                    eq_ok ? "yes" : "no")};
}

Outcome allocation() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pv(0.0, 60.0), eps(0.05, 4.0), unit(0.0, 1.0);
  std::size_t feasible = 0, violations = 0;
  for (int i = 0; i < 10000; ++i) {
    FleetConfig cfg;
    cfg.n_buildings = 1 + rng() % 30;
    cfg.epsilon = eps(rng);
    const double p_now = rng() % 20 == 0 ? 0.0 : pv(rng);
    const PowerBand band = power_band(p_now, cfg.epsilon);
    const BuildingBounds b = per_building_bounds(band, cfg);
    if (b.infeasible || !band.pv_active) continue;
    ++feasible;
    double sum = 0.0;
    for (std::size_t k = 0; k < cfg.n_buildings; ++k) {
      const double pick = unit(rng);
      // endpoints are drawn on purpose
      const double pk = pick < 0.1   ? b.lower
                        : pick > 0.9 ? b.upper
                                     : b.lower + unit(rng) * (b.upper - b.lower);
      sum += clamp_to_bounds(-pk, b).p;
    }
    const double slack = 1e-9 * std::max(1.0, band.upper);
    if (sum < band.lower - slack || sum > band.upper + slack) ++violations;
  }
  return {violations == 0 && feasible > 0,
          fmt("10000 cases, %zu feasible and active, %zu outside the band", feasible, violations)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "regulation only", regulation_only},
      {2, "PV tracking", pv_tracking},
      {3, "fleet size effect", fleet_size},
      {4, "estimator oracle", estimator_oracle},
      {5, "closed-loop contraction", contraction},
      {6, "plant fidelity", plant_fidelity},
      {7, "allocation soundness", allocation},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
