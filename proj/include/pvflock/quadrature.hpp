#pragma once

#include <cstddef>
#include <span>

#include "pvflock/error.hpp"

namespace pvflock {

/// Composite Simpson rule over uniformly spaced samples.
/// Requires an odd number of samples (even number of intervals), at least 3.
inline double simpson(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) {
    throw InputError("simpson: need an odd sample count >= 3");
  }
  double acc = values.front() + values.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  }
  return acc * h / 3.0;
}

}  // namespace pvflock
