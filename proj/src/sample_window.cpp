#include "pvflock/sample_window.hpp"

#include <cmath>
#include <string>

#include "pvflock/error.hpp"

namespace pvflock {

namespace {

bool finite_sample(const Sample& s) {
  return std::isfinite(s.t) && std::isfinite(s.y) && std::isfinite(s.u) &&
         std::isfinite(s.e) && std::isfinite(s.y_star_dot);
}

}  // namespace

SampleWindow::SampleWindow(std::size_t capacity, double dt) : buf_(capacity), dt_(dt) {
  if (capacity < 3 || capacity % 2 == 0) {
    throw ConfigError("sample window capacity must be odd and >= 3, got " +
                      std::to_string(capacity));
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("sample window spacing must be positive");
  }
}

void SampleWindow::push(const Sample& s) {
  if (!finite_sample(s)) {
    throw WindowError("sample contains a non-finite field");
  }
  if (size_ > 0) {
    const double step = s.t - back().t;
    if (!(step > 0.0)) {
      throw WindowError("sample time " + std::to_string(s.t) +
                        " does not advance past " + std::to_string(back().t));
    }
    if (std::abs(step - dt_) > kSpacingTolerance * dt_) {
      throw WindowError("sample spacing " + std::to_string(step) +
                        " h differs from window dt " + std::to_string(dt_) + " h");
    }
  }
  if (full()) {
    buf_[head_] = s;
    head_ = (head_ + 1) % buf_.size();
  } else {
    buf_[(head_ + size_) % buf_.size()] = s;
    ++size_;
  }
}

void SampleWindow::clear() {
  head_ = 0;
  size_ = 0;
}

void SampleWindow::set_last_u(double u) {
  if (size_ == 0) {
    throw WindowError("set_last_u on an empty window");
  }
  if (!std::isfinite(u)) {
    throw WindowError("applied control is not finite");
  }
  buf_[(head_ + size_ - 1) % buf_.size()].u = u;
}

const Sample& SampleWindow::operator[](std::size_t i) const {
  return buf_[(head_ + i) % buf_.size()];
}

}  // namespace pvflock
