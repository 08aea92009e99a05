#include "tnorder/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tnorder/errors.hpp"
#include "tnorder/piecewise_harmonic.hpp"

namespace tnorder {

FrequencySchedule::FrequencySchedule(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw ConfigError("schedule: no segments");
  if (segments_.front().start != -kInf) throw ConfigError("schedule: first segment must start at -inf");
  if (segments_.back().end != kInf) throw ConfigError("schedule: last segment must end at +inf");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.omega > 0.0) || !std::isfinite(s.omega)) {
      throw ConfigError("schedule: frequencies must be finite and positive");
    }
    if (!(s.start < s.end)) throw ConfigError("schedule: segment start must precede its end");
    if (i > 0 && segments_[i - 1].end != s.start) {
      throw ConfigError("schedule: segments must be contiguous and non-overlapping");
    }
  }
}

FrequencySchedule FrequencySchedule::constant(double omega0) {
  return FrequencySchedule({{-kInf, kInf, omega0}});
}

FrequencySchedule FrequencySchedule::half_frequency_switch(double omega0) {
  const double two_periods = 4.0 * std::numbers::pi / omega0;
  return FrequencySchedule(
      {{-kInf, 0.0, omega0}, {0.0, two_periods, omega0 / 2.0}, {two_periods, kInf, omega0}});
}

std::vector<double> FrequencySchedule::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments_.size(); ++i) out.push_back(segments_[i].start);
  return out;
}

double FrequencySchedule::omega_at(double t) const {
  for (const auto& s : segments_) {
    if (t < s.end) return s.omega;
  }
  return segments_.back().omega;
}

FrequencySchedule FrequencySchedule::switched_after(double at, double omega) const {
  if (!std::isfinite(at)) throw ConfigError("schedule: switch time must be finite");
  std::vector<Segment> out;
  for (const auto& s : segments_) {
    if (s.end <= at) {
      out.push_back(s);
    } else if (s.start < at) {
      out.push_back({s.start, at, s.omega});
      break;
    } else {
      break;
    }
  }
  out.push_back({at, kInf, omega});
  return FrequencySchedule(std::move(out));
}

double first_difference(const FrequencySchedule& a, const FrequencySchedule& b) {
  // Scan the merged breakpoints; the frequency is constant between them.
  std::vector<double> pts = a.breakpoints();
  const auto pb = b.breakpoints();
  pts.insert(pts.end(), pb.begin(), pb.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto probe = [](double lo, double hi) {
    if (lo == -kInf) return hi - 1.0;
    if (hi == kInf) return lo + 1.0;
    return 0.5 * (lo + hi);
  };
  double lo = -kInf;
  for (std::size_t i = 0; i <= pts.size(); ++i) {
    const double hi = i < pts.size() ? pts[i] : kInf;
    if (lo == -kInf && hi == kInf) {
      return a.omega_at(0.0) == b.omega_at(0.0) ? kInf : -kInf;
    }
    const double t = probe(lo, hi);
    if (a.omega_at(t) != b.omega_at(t)) return lo;
    lo = hi;
  }
  return kInf;
}

}  // namespace tnorder
