#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "pvflock/error.hpp"
#include "pvflock/scenario.hpp"
#include "pvflock/text.hpp"

namespace pvflock {

namespace {

struct Context {
  ScenarioConfig& cfg;
  const std::filesystem::path& base_dir;
};

using Setter = std::function<void(Context&, std::string_view)>;

[[noreturn]] void bad_value(std::string_view expected, std::string_view value) {
  throw ConfigError("expected " + std::string(expected) + ", got '" + std::string(value) + "'");
}

double as_double(std::string_view v) {
  const auto d = parse_double(v);
  if (!d || !std::isfinite(*d)) bad_value("a number", v);
  return *d;
}

std::uint64_t as_u64(std::string_view v) {
  const auto n = parse_u64(v);
  if (!n) bad_value("a non-negative integer", v);
  return *n;
}

bool as_bool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value("true or false", v);
}

std::filesystem::path as_path(const Context& ctx, std::string_view v) {
  std::filesystem::path p{std::string(v)};
  if (p.is_relative() && !ctx.base_dir.empty()) p = ctx.base_dir / p;
  return p;
}

Setter number(double ScenarioConfig::*field) {
  return [field](Context& c, std::string_view v) { c.cfg.*field = as_double(v); };
}

template <typename Section>
Setter number(Section ScenarioConfig::*section, double Section::*field) {
  return [section, field](Context& c, std::string_view v) {
    (c.cfg.*section).*field = as_double(v);
  };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
  using S = ScenarioConfig;
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"horizon", number(&S::horizon)},
      {"setpoint", number(&S::setpoint)},
      {"comfort_low", number(&S::comfort_low)},
      {"comfort_high", number(&S::comfort_high)},
      {"initial_t1_low", number(&S::initial_t1_low)},
      {"initial_t1_high", number(&S::initial_t1_high)},
      {"seed", [](Context& c, std::string_view v) { c.cfg.seed = as_u64(v); }},
      {"substeps",
       [](Context& c, std::string_view v) {
         const auto n = as_u64(v);
         if (n > 1'000'000) bad_value("a substep count <= 1000000", v);
         c.cfg.substeps = static_cast<int>(n);
       }},

      {"fleet.n_buildings",
       [](Context& c, std::string_view v) { c.cfg.fleet.n_buildings = as_u64(v); }},
      {"fleet.epsilon", number(&S::fleet, &FleetConfig::epsilon)},
      {"fleet.hvac_max", number(&S::fleet, &FleetConfig::hvac_max)},
      {"fleet.sample_dt", number(&S::fleet, &FleetConfig::sample_dt)},
      {"fleet.track_pv",
       [](Context& c, std::string_view v) { c.cfg.fleet.track_pv = as_bool(v); }},

      {"controller.alpha", number(&S::controller, &ControllerSettings::alpha)},
      {"controller.kp", number(&S::controller, &ControllerSettings::kp)},
      {"controller.window_capacity",
       [](Context& c, std::string_view v) { c.cfg.controller.window_capacity = as_u64(v); }},
      {"controller.estimator",
       [](Context& c, std::string_view v) {
         const auto e = parse_estimator(v);
         if (!e) bad_value("algebraic or closed_loop", v);
         c.cfg.controller.estimator = *e;
       }},
      {"controller.ramp_hours", number(&S::controller, &ControllerSettings::ramp_hours)},

      {"disturbance.d1_mean", number(&S::disturbance, &DisturbanceParams::d1_mean)},
      {"disturbance.d1_amp", number(&S::disturbance, &DisturbanceParams::d1_amp)},
      {"disturbance.d2_peak", number(&S::disturbance, &DisturbanceParams::d2_peak)},
      {"disturbance.d3_day", number(&S::disturbance, &DisturbanceParams::d3_day)},
      {"disturbance.d3_night", number(&S::disturbance, &DisturbanceParams::d3_night)},
      {"disturbance.d1_csv",
       [](Context& c, std::string_view v) { c.cfg.d1_csv = as_path(c, v); }},
      {"disturbance.d2_csv",
       [](Context& c, std::string_view v) { c.cfg.d2_csv = as_path(c, v); }},
      {"disturbance.d3_csv",
       [](Context& c, std::string_view v) { c.cfg.d3_csv = as_path(c, v); }},

      {"building.c1", number(&S::building, &BuildingParams::c1)},
      {"building.c2", number(&S::building, &BuildingParams::c2)},
      {"building.c3", number(&S::building, &BuildingParams::c3)},
      {"building.k1", number(&S::building, &BuildingParams::k1)},
      {"building.k2", number(&S::building, &BuildingParams::k2)},
      {"building.k3", number(&S::building, &BuildingParams::k3)},
      {"building.k4", number(&S::building, &BuildingParams::k4)},
      {"building.k5", number(&S::building, &BuildingParams::k5)},

      {"pv.source",
       [](Context& c, std::string_view v) {
         if (v == "synthetic") {
           c.cfg.pv_source = PvSourceKind::Synthetic;
         } else if (v == "csv") {
           c.cfg.pv_source = PvSourceKind::Csv;
         } else {
           bad_value("synthetic or csv", v);
         }
       }},
      {"pv.peak", number(&S::pv_peak)},
      {"pv.csv", [](Context& c, std::string_view v) { c.cfg.pv_csv = as_path(c, v); }},

      {"output.trace",
       [](Context& c, std::string_view v) { c.cfg.output_trace = std::string(v); }},
  };
  return table;
}

std::string_view unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  static const std::map<std::string, Setter, std::less<>> lookup(setters().begin(),
                                                                 setters().end());
  ScenarioConfig cfg;
  Context ctx{cfg, base_dir};
  std::set<std::string, std::less<>> seen;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = unquote(trim(line.substr(eq + 1)));
    const auto it = lookup.find(key);
    if (it == lookup.end()) {
      throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    }
    cfg.explicit_keys.emplace_back(key);
    try {
      it->second(ctx, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + std::string(key) + ": " + e.what());
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace pvflock
