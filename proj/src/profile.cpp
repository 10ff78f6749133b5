#include "pvflock/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "pvflock/text.hpp"

namespace pvflock {

namespace {

constexpr double kUniformTolerance = 1e-9;

}  // namespace

double Profile::t_end() const {
  if (values.empty()) return t0;
  return t0 + dt * static_cast<double>(values.size() - 1);
}

double Profile::at(double t) const {
  const double end = t_end();
  const double slack = kUniformTolerance * dt;
  if (values.empty() || !(t >= t0 - slack) || !(t <= end + slack)) {
    throw ProfileError(ProfileError::Kind::OutOfSpan,
                       "profile query at t=" + std::to_string(t) + " h outside [" +
                           std::to_string(t0) + ", " + std::to_string(end) + "]");
  }
  if (values.size() == 1) return values.front();
  const double pos = std::clamp((t - t0) / dt, 0.0, static_cast<double>(values.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(pos), values.size() - 2);
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

Profile parse_profile_csv(const std::string& text, bool non_negative, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  auto malformed = [&](const std::string& why) {
    return ProfileError(ProfileError::Kind::MalformedRow,
                        origin + ":" + std::to_string(line_no) + ": " + why);
  };

  if (!std::getline(in, line)) {
    line_no = 1;
    throw malformed("empty file, expected header t_hours,value");
  }
  ++line_no;
  if (trim(line) != "t_hours,value") {
    throw malformed("expected header t_hours,value");
  }

  std::vector<double> times;
  Profile prof;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw malformed("expected two comma-separated fields");
    }
    const auto t = parse_double(trim(row.substr(0, comma)));
    const auto v = parse_double(trim(row.substr(comma + 1)));
    if (!t || !v || !std::isfinite(*t) || !std::isfinite(*v)) {
      throw malformed("fields are not finite numbers");
    }
    if (non_negative && *v < 0.0) {
      throw ProfileError(ProfileError::Kind::NegativeValue,
                         origin + ":" + std::to_string(line_no) + ": negative value " +
                             std::string(row.substr(comma + 1)));
    }
    times.push_back(*t);
    prof.values.push_back(*v);
  }

  if (times.size() < 2) {
    throw malformed("need at least two data rows");
  }
  prof.t0 = times.front();
  prof.dt = times[1] - times[0];
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (!(step > 0.0) || std::abs(step - prof.dt) > kUniformTolerance * std::abs(prof.dt)) {
      throw ProfileError(ProfileError::Kind::NonUniform,
                         origin + ": time column not strictly increasing with uniform "
                                  "spacing at row " + std::to_string(i + 1));
    }
  }
  return prof;
}

Profile load_profile_csv(const std::filesystem::path& path, bool non_negative) {
  std::ifstream in(path);
  if (!in) {
    throw ProfileError(ProfileError::Kind::MissingFile,
                       "cannot open profile " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_csv(buf.str(), non_negative, path.string());
}

void write_profile_csv(const Profile& profile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write profile " + path.string());
  }
  out << "t_hours,value\n";
  char buf[64];
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    const double t = profile.t0 + profile.dt * static_cast<double>(i);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, profile.values[i]);
    out << buf;
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

}  // namespace pvflock
