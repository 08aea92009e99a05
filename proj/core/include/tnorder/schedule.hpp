#pragma once

#include <vector>

namespace tnorder {

struct Segment {
  double start;
  double end;
  double omega;
};

/// Piecewise-constant oscillator frequency covering the real line.
class FrequencySchedule {
 public:
  /// Throws ConfigError unless the segments are contiguous, ordered, the
  /// first starts at -inf, the last ends at +inf and all frequencies are
  /// finite and positive.
  explicit FrequencySchedule(std::vector<Segment> segments);

  /// omega0 on the whole line.
  static FrequencySchedule constant(double omega0);
  /// omega0 / 2 on (0, 4 pi / omega0), omega0 elsewhere.
  static FrequencySchedule half_frequency_switch(double omega0);

  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<double> breakpoints() const;
  double omega_at(double t) const;

  /// Copy with the frequency set to omega for all t > at.
  FrequencySchedule switched_after(double at, double omega) const;

 private:
  std::vector<Segment> segments_;
};

/// Earliest time after which the two schedules differ; +inf if identical.
double first_difference(const FrequencySchedule& a, const FrequencySchedule& b);

}  // namespace tnorder
