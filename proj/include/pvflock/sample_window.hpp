#pragma once

#include <cstddef>
#include <vector>

namespace pvflock {

/// One measurement of the loop, stamped in hours.
/// `u` is the control held from `t` until the next sample (thermal sign, kW).
struct Sample {
  double t = 0.0;
  double y = 0.0;
  double u = 0.0;
  double e = 0.0;
  double y_star_dot = 0.0;
};

/// Fixed-capacity ring of uniformly spaced samples, oldest first.
///
/// Capacity is odd so that a full window spans an even number of intervals
/// and can be integrated with composite Simpson. Pushing onto a full window
/// evicts the oldest sample.
class SampleWindow {
 public:
  static constexpr double kSpacingTolerance = 1e-9;

  SampleWindow(std::size_t capacity, double dt);

  /// Throws WindowError when t does not advance by exactly dt.
  void push(const Sample& s);
  void clear();

  /// Overwrites the control of the newest sample.
  void set_last_u(double u);

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t capacity() const { return buf_.size(); }
  [[nodiscard]] bool empty() const { return size_ == 0; }
  [[nodiscard]] bool full() const { return size_ == buf_.size(); }
  [[nodiscard]] double dt() const { return dt_; }
  /// Span tau of a full window, (capacity - 1) * dt.
  [[nodiscard]] double span() const { return static_cast<double>(buf_.size() - 1) * dt_; }

  /// Logical indexing, 0 = oldest.
  [[nodiscard]] const Sample& operator[](std::size_t i) const;
  [[nodiscard]] const Sample& front() const { return (*this)[0]; }
  [[nodiscard]] const Sample& back() const { return (*this)[size_ - 1]; }

 private:
  std::vector<Sample> buf_;
  std::size_t head_ = 0;  // physical index of the oldest sample
  std::size_t size_ = 0;
  double dt_;
};

}  // namespace pvflock
