#include "pvflock/mfc.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pvflock/error.hpp"
#include "pvflock/quadrature.hpp"

namespace pvflock {

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::Algebraic:
      return "algebraic";
    case Estimator::ClosedLoop:
      return "closed_loop";
  }
  return "unknown";
}

std::optional<Estimator> parse_estimator(std::string_view name) {
  if (name == "algebraic") return Estimator::Algebraic;
  if (name == "closed_loop") return Estimator::ClosedLoop;
  return std::nullopt;
}

double ip_control(double f_hat, double y_star_dot, double e, double alpha, double kp) {
  if (alpha == 0.0) {
    throw ConfigError("ip_control: alpha must be non-zero");
  }
  if (!std::isfinite(f_hat) || !std::isfinite(y_star_dot) || !std::isfinite(e) ||
      !std::isfinite(alpha) || !std::isfinite(kp)) {
    throw InputError("ip_control: non-finite input");
  }
  return -(f_hat - y_star_dot + kp * e) / alpha;
}

std::optional<double> estimate_f_algebraic(const SampleWindow& window, double alpha) {
  if (!window.full()) return std::nullopt;
  const double tau = window.span();
  std::vector<double> integrand(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Sample& s = window[i];
    // nominal sigma keeps the kernel exactly antisymmetric about tau / 2
    const double sigma = static_cast<double>(i) * window.dt();
    integrand[i] = (tau - 2.0 * sigma) * s.y + alpha * sigma * (tau - sigma) * s.u;
  }
  return -6.0 / (tau * tau * tau) * simpson(integrand, window.dt());
}

std::optional<double> estimate_f_closed_loop(const SampleWindow& window, double alpha,
                                             double kp) {
  if (!window.full()) return std::nullopt;
  const double tau = window.span();
  std::vector<double> design(window.size());
  std::vector<double> error(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Sample& s = window[i];
    design[i] = s.y_star_dot - alpha * s.u - kp * s.e;
    error[i] = s.e;
  }
  const double residual =
      (window.back().e - window.front().e) + kp * simpson(error, window.dt());
  return (simpson(design, window.dt()) + residual) / tau;
}

void ControllerConfig::validate() const {
  if (alpha == 0.0 || !std::isfinite(alpha)) {
    throw ConfigError("controller alpha must be finite and non-zero");
  }
  if (!(kp > 0.0) || !std::isfinite(kp)) {
    throw ConfigError("controller kp must be positive");
  }
  if (!std::isfinite(setpoint)) {
    throw ConfigError("controller setpoint must be finite");
  }
  if (window_capacity < 3 || window_capacity % 2 == 0) {
    throw ConfigError("controller window_capacity must be odd and >= 3");
  }
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) {
    throw ConfigError("controller sample_dt must be positive");
  }
  if (!(ramp_hours >= 0.0) || !std::isfinite(ramp_hours)) {
    throw ConfigError("controller ramp_hours must be >= 0");
  }
}

IpController::IpController(ControllerConfig cfg)
    : cfg_((cfg.validate(), cfg)), window_(cfg_.window_capacity, cfg_.sample_dt) {}

Reference IpController::reference(double t) const {
  if (cfg_.ramp_hours > 0.0 && started_) {
    const double elapsed = t - ramp_t0_;
    if (elapsed < cfg_.ramp_hours) {
      const double rate = (cfg_.setpoint - ramp_y0_) / cfg_.ramp_hours;
      return {ramp_y0_ + rate * elapsed, rate};
    }
  }
  return {cfg_.setpoint, 0.0};
}

double IpController::measure(double y, double t) {
  if (!started_) {
    started_ = true;
    ramp_t0_ = t;
    ramp_y0_ = y;
  }
  const Reference ref = reference(t);
  const double e = y - ref.value;
  // The newest sample carries the control still held at measurement time
  // until commit() replaces it with the control applied from t onwards.
  window_.push(Sample{t, y, last_applied_, e, ref.rate});
  last_error_ = e;
  return ref.rate;
}

std::optional<double> IpController::estimate() const {
  switch (cfg_.estimator) {
    case Estimator::Algebraic:
      return estimate_f_algebraic(window_, cfg_.alpha);
    case Estimator::ClosedLoop:
      return estimate_f_closed_loop(window_, cfg_.alpha, cfg_.kp);
  }
  return std::nullopt;
}

double IpController::step(double y, double t) {
  const double y_star_dot = measure(y, t);
  if (auto f = estimate()) {
    f_hat_ = *f;
  }
  return ip_control(f_hat_, y_star_dot, last_error_, cfg_.alpha, cfg_.kp);
}

double IpController::step_with_estimate(double y, double t, double f_hat) {
  const double y_star_dot = measure(y, t);
  f_hat_ = f_hat;
  return ip_control(f_hat_, y_star_dot, last_error_, cfg_.alpha, cfg_.kp);
}

void IpController::commit(double u_applied) {
  window_.set_last_u(u_applied);
  last_applied_ = u_applied;
}

}  // namespace pvflock
