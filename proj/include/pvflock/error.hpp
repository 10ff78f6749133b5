#pragma once

#include <stdexcept>
#include <string>

namespace pvflock {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid gains, parameters or scenario settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A value handed to an operation violates its precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Sample rejected by a SampleWindow (non-monotone or non-uniform time).
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Plant state left the sanity range or became non-finite.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pvflock
