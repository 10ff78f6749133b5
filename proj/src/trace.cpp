#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "pvflock/error.hpp"
#include "pvflock/simulation.hpp"
#include "pvflock/text.hpp"

namespace pvflock {

namespace {

constexpr const char* kSharedHeader = "t_hours,pv_kw,sum_p_kw,band_lo_kw,band_hi_kw,infeasible";
constexpr std::size_t kSharedColumns = 6;
constexpr std::size_t kPerBuildingColumns = 6;

void append(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, ",%.6g", v);
  out += buf;
}

std::string header(std::size_t n_buildings) {
  std::string h = kSharedHeader;
  for (std::size_t i = 1; i <= n_buildings; ++i) {
    const auto k = std::to_string(i);
    h += ",T1_" + k + ",T2_" + k + ",T3_" + k + ",u_" + k + "_kw,p_" + k + "_kw,clamped_" + k;
  }
  return h;
}

}  // namespace

std::string format_trace(const SimulationTrace& trace) {
  std::string out = header(trace.n_buildings);
  out += '\n';
  for (const StepRecord& s : trace.steps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", s.t);
    out += buf;
    append(out, s.pv);
    append(out, s.sum_p);
    append(out, s.band.lower);
    append(out, s.band.upper);
    out += s.bounds.infeasible ? ",1" : ",0";
    for (const BuildingRecord& b : s.buildings) {
      append(out, b.state.t1);
      append(out, b.state.t2);
      append(out, b.state.t3);
      append(out, b.u_applied);
      append(out, b.p);
      out += b.clamped ? ",1" : ",0";
    }
    out += '\n';
  }
  return out;
}

void write_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open trace for writing: " + path.string());
  }
  out << format_trace(trace);
  out.flush();
  if (!out) {
    throw IoError("failed writing trace: " + path.string());
  }
}

SimulationTrace parse_trace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError("trace is empty, expected a header");
  }
  const auto cols = split(trim(line), ',');
  if (cols.size() < kSharedColumns || (cols.size() - kSharedColumns) % kPerBuildingColumns != 0) {
    throw InputError("trace header has an unexpected column count");
  }
  SimulationTrace trace;
  trace.n_buildings = (cols.size() - kSharedColumns) / kPerBuildingColumns;
  if (trim(line) != header(trace.n_buildings)) {
    throw InputError("trace header does not match the expected layout");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    if (fields.size() != cols.size()) {
      throw InputError("trace line " + std::to_string(line_no) + ": wrong field count");
    }
    std::vector<double> v(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto d = parse_double(fields[i]);
      if (!d) {
        throw InputError("trace line " + std::to_string(line_no) + ": bad number '" +
                         std::string(fields[i]) + "'");
      }
      v[i] = *d;
    }
    StepRecord s;
    s.t = v[0];
    s.pv = v[1];
    s.sum_p = v[2];
    s.band = {v[3], v[4], v[1] > 0.0};
    s.bounds.infeasible = v[5] != 0.0;
    for (std::size_t b = 0; b < trace.n_buildings; ++b) {
      const std::size_t o = kSharedColumns + b * kPerBuildingColumns;
      s.buildings.push_back({{v[o], v[o + 1], v[o + 2]}, v[o + 3], v[o + 4], v[o + 5] != 0.0});
    }
    trace.steps.push_back(std::move(s));
  }
  if (trace.steps.size() >= 2) {
    trace.dt = trace.steps[1].t - trace.steps[0].t;
  }
  return trace;
}

SimulationTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trace " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

}  // namespace pvflock
