#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pvflock/error.hpp"
#include "pvflock/simulation.hpp"

using namespace pvflock;
namespace fs = std::filesystem;

namespace {

/// Trace with every T1 at the setpoint and sum_p equal to pv.
SimulationTrace flat_trace(std::size_t n, std::size_t steps, double pv) {
  SimulationTrace tr;
  tr.n_buildings = n;
  for (std::size_t k = 0; k < steps; ++k) {
    StepRecord r;
    r.t = static_cast<double>(k) / 6.0;
    r.pv = pv;
    r.band = power_band(pv, 1.0);
    r.sum_p = pv;
    for (std::size_t i = 0; i < n; ++i) {
      r.buildings.push_back(BuildingRecord{{23.0, 23.0, 24.0}, -pv / n, pv / n, false});
    }
    tr.steps.push_back(r);
  }
  return tr;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

/// Largest rounding error of a value printed with 6 significant digits.
double half_ulp6(double v) {
  if (v == 0.0) return 0.0;
  return 0.5 * std::pow(10.0, std::floor(std::log10(std::abs(v))) - 5.0);
}

ScenarioConfig short_config(double horizon) {
  ScenarioConfig cfg;
  cfg.horizon = horizon;
  return cfg;
}

}  // namespace

TEST_SUITE("run_simulation") {
  TEST_CASE("zero horizon gives an empty trace") {
    const SimulationTrace tr = run_simulation(short_config(0.0));
    CHECK(tr.steps.empty());
    CHECK(tr.n_buildings == 13);
    CHECK(compute_metrics(tr, short_config(0.0)).empty);
  }

  TEST_CASE("zero PV runs regulation only") {
    ScenarioConfig cfg = short_config(72.0);
    cfg.pv_peak = 0.0;
    const SimulationTrace tr = run_simulation(cfg);
    REQUIRE(tr.steps.size() == 432);
    for (const StepRecord& r : tr.steps) {
      CHECK_FALSE(r.band.pv_active);
      CHECK_FALSE(r.bounds.infeasible);
      for (const BuildingRecord& b : r.buildings) {
        CHECK(b.p >= 0.0);
        CHECK(b.p <= 3.0);
      }
    }
  }

  TEST_CASE("same config and seed give byte-identical traces") {
    const ScenarioConfig cfg = short_config(24.0);
    CHECK(format_trace(run_simulation(cfg)) == format_trace(run_simulation(cfg)));
    ScenarioConfig other = cfg;
    other.seed = 1234;
    CHECK(format_trace(run_simulation(other)) != format_trace(run_simulation(cfg)));
  }

  TEST_CASE("rows are uniform in time and sum_p adds up") {
    const SimulationTrace tr = run_simulation(short_config(12.0));
    for (std::size_t k = 0; k < tr.steps.size(); ++k) {
      CHECK(tr.steps[k].t == doctest::Approx(k / 6.0).epsilon(1e-12));
      double sum = 0.0;
      for (const BuildingRecord& b : tr.steps[k].buildings) sum += b.p;
      CHECK(std::abs(tr.steps[k].sum_p - sum) <= 1e-9);
    }
  }

  TEST_CASE("divergence aborts with building index and time") {
    ScenarioConfig cfg = short_config(24.0);
    cfg.disturbance.d1_mean = 200.0;
    cfg.disturbance.d1_amp = 0.0;
    try {
      run_simulation(cfg);
      FAIL("expected divergence");
    } catch (const DivergenceError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("building") != std::string::npos);
      CHECK(msg.find("t=") != std::string::npos);
    }
  }
}

TEST_SUITE("compute_metrics") {
  const ScenarioConfig kCfg{};

  TEST_CASE("perfect run") {
    const MetricsReport m = compute_metrics(flat_trace(3, 60, 6.0), kCfg);
    CHECK_FALSE(m.empty);
    CHECK(m.comfort_violation_steps == 0);
    REQUIRE(m.tracking_rms);
    CHECK(*m.tracking_rms == 0.0);
    CHECK(*m.tracking_within_eps_pct == 100.0);
    CHECK(m.peak_sum_p == 6.0);
  }

  TEST_CASE("single cold building-step after the transient") {
    SimulationTrace tr = flat_trace(2, 60, 6.0);
    tr.steps[50].buildings[1].state.t1 = 21.5;
    tr.steps[10].buildings[0].state.t1 = 30.0;  // inside the transient window
    const MetricsReport m = compute_metrics(tr, kCfg);
    CHECK(m.comfort_violation_steps == 1);
    CHECK(m.comfort_max_depth == doctest::Approx(0.5));
  }

  TEST_CASE("no PV means tracking is not applicable") {
    const MetricsReport m = compute_metrics(flat_trace(2, 60, 0.0), kCfg);
    CHECK(m.pv_active_steps == 0);
    CHECK_FALSE(m.tracking_rms.has_value());
    CHECK_FALSE(m.tracking_within_eps_pct.has_value());
    const std::string text = format_metrics(m);
    CHECK(text.find("tracking_rms_kw=n/a\n") != std::string::npos);
    CHECK(text.find("tracking_within_eps_pct=n/a\n") != std::string::npos);
  }

  TEST_CASE("tracking error statistics") {
    SimulationTrace tr = flat_trace(1, 4, 6.0);
    tr.steps[0].sum_p = 8.0;  // off by 2, outside epsilon
    tr.steps[1].sum_p = 5.0;  // off by 1, on the edge
    const MetricsReport m = compute_metrics(tr, kCfg);
    CHECK(*m.tracking_rms == doctest::Approx(std::sqrt(5.0 / 4.0)));
    CHECK(*m.tracking_within_eps_pct == doctest::Approx(75.0));
    CHECK(m.peak_sum_p == 8.0);
  }

  TEST_CASE("report lines are stable") {
    const std::string text = format_metrics(compute_metrics(flat_trace(1, 6, 1.0), kCfg));
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> keys;
    while (std::getline(in, line)) keys.push_back(line.substr(0, line.find('=')));
    CHECK(keys == std::vector<std::string>{"empty", "steps", "buildings",
                                           "comfort_violation_steps", "comfort_max_depth_c",
                                           "pv_active_steps", "tracking_rms_kw",
                                           "tracking_within_eps_pct", "peak_sum_p_kw",
                                           "infeasible_steps"});
  }
}

TEST_SUITE("trace csv") {
  TEST_CASE("empty trace is the header alone") {
    SimulationTrace tr;
    tr.n_buildings = 2;
    const std::string text = format_trace(tr);
    CHECK(text ==
          "t_hours,pv_kw,sum_p_kw,band_lo_kw,band_hi_kw,infeasible,"
          "T1_1,T2_1,T3_1,u_1_kw,p_1_kw,clamped_1,"
          "T1_2,T2_2,T3_2,u_2_kw,p_2_kw,clamped_2\n");
  }

  TEST_CASE("one building and one step give two lines") {
    const std::string text = format_trace(flat_trace(1, 1, 2.0));
    CHECK(count_lines(text) == 2);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.substr(text.find('\n') + 1) == "0,2,2,1,3,0,23,23,24,-2,2,0\n");
  }

  TEST_CASE("reload reproduces sum_p within the 6-digit rounding") {
    const fs::path dir = fs::temp_directory_path() / "pvflock_test_trace";
    fs::create_directories(dir);
    const SimulationTrace tr = run_simulation(short_config(24.0));
    write_trace(tr, dir / "trace.csv");
    const SimulationTrace back = read_trace(dir / "trace.csv");
    REQUIRE(back.steps.size() == tr.steps.size());
    CHECK(back.n_buildings == 13);
    CHECK(back.dt == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
    for (const StepRecord& r : back.steps) {
      double sum = 0.0;
      double bound = half_ulp6(r.sum_p);
      for (const BuildingRecord& b : r.buildings) {
        sum += b.p;
        bound += half_ulp6(b.p);
      }
      CHECK(std::abs(r.sum_p - sum) <= 1e-5 * std::max(1.0, r.sum_p));
      CHECK(std::abs(r.sum_p - sum) <= bound * (1.0 + 1e-9));
    }
    const ScenarioConfig cfg = short_config(24.0);
    CHECK(*compute_metrics(back, cfg).tracking_rms ==
          doctest::Approx(*compute_metrics(tr, cfg).tracking_rms).epsilon(1e-4));
    fs::remove_all(dir);
  }

  TEST_CASE("malformed traces are rejected") {
    CHECK_THROWS_AS(parse_trace("t,pv\n"), InputError);
    CHECK_THROWS_AS(parse_trace(""), InputError);
    const std::string header =
        "t_hours,pv_kw,sum_p_kw,band_lo_kw,band_hi_kw,infeasible,"
        "T1_1,T2_1,T3_1,u_1_kw,p_1_kw,clamped_1\n";
    CHECK_THROWS_AS(parse_trace(header + "0,1,1\n"), InputError);
    CHECK_NOTHROW(parse_trace(header));
  }

  TEST_CASE("unwritable path is an I/O error") {
    CHECK_THROWS_AS(write_trace(flat_trace(1, 1, 0.0), "/nonexistent/dir/trace.csv"), IoError);
  }
}
