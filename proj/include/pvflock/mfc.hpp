#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "pvflock/sample_window.hpp"

namespace pvflock {

/// Which real-time estimate of the lumped term F the controller uses.
enum class Estimator {
  Algebraic,   ///< windowed algebraic identification from y and u
  ClosedLoop,  ///< average of the closed-loop residual over the window
};

std::string_view to_string(Estimator e);
std::optional<Estimator> parse_estimator(std::string_view name);

/// Intelligent proportional law u = -(F_hat - y_star_dot + kp * e) / alpha.
/// No saturation is applied here. Throws ConfigError when alpha == 0.
double ip_control(double f_hat, double y_star_dot, double e, double alpha, double kp);

/// Algebraic estimate
///   F_hat = -(6 / tau^3) * int_0^tau [(tau - 2s) y(s) + alpha s (tau - s) u(s)] ds
/// with s measured from the oldest sample. Empty optional until the window is full.
std::optional<double> estimate_f_algebraic(const SampleWindow& window, double alpha);

/// Closed-loop estimate
///   F_hat = (1 / tau) * [ int (y_star_dot - alpha u - kp e) ds
///                         + (e(t) - e(t - tau)) + kp * int e ds ]
/// The bracketed correction is the integral of de/dt + kp e, which is zero
/// whenever the loop follows its design dynamics; without it the integrand
/// reproduces the F_hat values that generated u and carries no information.
/// Empty optional until the window is full.
std::optional<double> estimate_f_closed_loop(const SampleWindow& window, double alpha, double kp);

struct ControllerConfig {
  double alpha = 5.0;     // degC/h per kW
  double kp = 2.0;        // 1/h
  double setpoint = 23.0;  // degC
  Estimator estimator = Estimator::Algebraic;
  std::size_t window_capacity = 5;
  double sample_dt = 1.0 / 6.0;  // h
  /// Linear reference ramp from the first measurement to the setpoint; 0 disables it.
  double ramp_hours = 0.0;

  /// Throws ConfigError on alpha == 0, kp <= 0, bad window or ramp.
  void validate() const;
};

/// Reference value y*(t) and its derivative.
struct Reference {
  double value;
  double rate;
};

/// One iP loop with its estimation window.
///
/// Usage per sampling instant: `u_raw = step(y, t)`, saturate, then
/// `commit(u_applied)` so the estimator sees the control that was really held.
class IpController {
 public:
  explicit IpController(ControllerConfig cfg);

  /// Measures y at t, refreshes F_hat when the window is full and returns the
  /// unsaturated command. t must advance by exactly sample_dt between calls.
  double step(double y, double t);

  /// Same as step() but with F_hat supplied by the caller (oracle injection).
  double step_with_estimate(double y, double t, double f_hat);

  /// Records the control actually applied after the last step().
  void commit(double u_applied);

  [[nodiscard]] Reference reference(double t) const;
  [[nodiscard]] double f_hat() const { return f_hat_; }
  [[nodiscard]] double last_error() const { return last_error_; }
  [[nodiscard]] double last_applied() const { return last_applied_; }
  [[nodiscard]] const SampleWindow& window() const { return window_; }
  [[nodiscard]] const ControllerConfig& config() const { return cfg_; }

 private:
  double measure(double y, double t);
  std::optional<double> estimate() const;

  ControllerConfig cfg_;
  SampleWindow window_;
  double f_hat_ = 0.0;
  double last_error_ = 0.0;
  double last_applied_ = 0.0;
  bool started_ = false;
  double ramp_t0_ = 0.0;
  double ramp_y0_ = 0.0;
};

}  // namespace pvflock
