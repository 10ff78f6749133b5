#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pvflock/error.hpp"

namespace pvflock {

/// Uniformly sampled time series (PV output or a weather channel).
struct Profile {
  double t0 = 0.0;  // h
  double dt = 1.0;  // h
  std::vector<double> values;

  [[nodiscard]] double t_end() const;
  /// Linear interpolation; throws ProfileError(OutOfSpan) outside [t0, t_end].
  [[nodiscard]] double at(double t) const;
};

class ProfileError : public Error {
 public:
  enum class Kind { MissingFile, MalformedRow, NonUniform, NegativeValue, OutOfSpan };

  ProfileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Reads a `t_hours,value` CSV with a header row. Times must be strictly
/// increasing and uniform; `non_negative` rejects negative values (PV).
Profile load_profile_csv(const std::filesystem::path& path, bool non_negative = false);

/// Parses CSV text; `origin` only labels diagnostics.
Profile parse_profile_csv(const std::string& text, bool non_negative = false,
                          const std::string& origin = "<text>");

/// Writes full double precision so a reload reproduces the values.
void write_profile_csv(const Profile& profile, const std::filesystem::path& path);

}  // namespace pvflock
