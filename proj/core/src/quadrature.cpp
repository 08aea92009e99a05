#include "tnorder/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tnorder/errors.hpp"

namespace tnorder {

using boost::math::quadrature::gauss_kronrod;

void QuadratureControls::validate() const {
  if (!(window_multiplier >= 1.0)) throw ConfigError("quadrature: window multiplier must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("quadrature: tolerance must be > 0");
  if (max_subdivisions < 1 || max_subdivisions > 40) {
    throw ConfigError("quadrature: max subdivisions must lie in [1, 40]");
  }
}

namespace detail {

double smooth_cutoff(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return b / (a + b);
}

}  // namespace detail

namespace {

constexpr double kPanelTol = 1e-12;
constexpr double kAbsFloor = 1e-15;

struct Accumulator {
  cplx value = 0.0;
  double error = 0.0;
};

class PvWindow {
 public:
  PvWindow(const PiecewiseHarmonic& f, double t, double lower, double upper, double half_width,
           unsigned depth)
      : f_(f), t_(t), lower_(lower), upper_(upper), T0_(half_width), depth_(depth) {}

  Accumulator run();

 private:
  double weight(double tp) const {
    double w = 1.0;
    if (left_tapered_ && tp < left_b_) w *= detail::smooth_cutoff((left_b_ - tp) / T0_);
    if (right_tapered_ && tp > right_a_) w *= detail::smooth_cutoff((tp - right_a_) / T0_);
    return w;
  }

  template <class F>
  void integrate(F&& g, double a, double b, Accumulator& acc) const {
    if (!(b > a)) return;
    double err = 0.0, l1 = 0.0;
    auto v = gauss_kronrod<double, 15>::integrate(g, a, b, 0, kPanelTol, &err, &l1);
    // Bisect only if one panel misses both the relative and absolute floor.
    if (err > std::max(kPanelTol * l1, kAbsFloor * (b - a)))
      v = gauss_kronrod<double, 15>::integrate(g, a, b, depth_, kPanelTol, &err);
    acc.value += v;
    acc.error += err;
  }

  void regular_interval(double a, double b, Accumulator& acc) const;

  const PiecewiseHarmonic& f_;
  double t_, lower_, upper_, T0_;
  unsigned depth_;
  bool left_tapered_ = false, right_tapered_ = false;
  double left_a_ = 0, left_b_ = 0, right_a_ = 0, right_b_ = 0;
};

void PvWindow::regular_interval(double a, double b, Accumulator& acc) const {
  const double fmax = f_.max_frequency();
  const double chunk = fmax > 0.0 ? std::numbers::pi / fmax : 4.0;
  auto g = [this](double tp) { return weight(tp) * f_(tp) / (t_ - tp); };

  std::vector<double> cuts{a};
  // Geometric grading toward the end nearest to t when t is close.
  const double dist_a = std::abs(t_ - a), dist_b = std::abs(t_ - b);
  const double near = std::min(dist_a, dist_b);
  if (near < (b - a)) {
    const bool from_a = dist_a <= dist_b;
    const double step0 = std::max(near, 1e-14 * std::max(1.0, std::abs(t_)));
    std::vector<double> graded;
    for (double s = step0; s < (b - a); s *= 2.0) graded.push_back(s);
    for (double s : graded) cuts.push_back(from_a ? a + s : b - s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / chunk)));
    const double len = (hi - lo) / n;
    for (int k = 0; k < n; ++k) {
      integrate(g, lo + k * len, k + 1 == n ? hi : lo + (k + 1) * len, acc);
    }
  }
}

Accumulator PvWindow::run() {
  Accumulator acc;
  const double scale = std::max(1.0, std::abs(t_));
  const double eps = 1e-12 * scale;

  std::vector<double> bps;
  for (double b : f_.breakpoints()) {
    if (b > lower_ && b < upper_) bps.push_back(b);
  }

  double L = lower_, R = upper_;
  if (lower_ == -kInf) {
    double anchor = t_;
    if (!bps.empty()) anchor = std::min(anchor, bps.front());
    if (std::isfinite(upper_)) anchor = std::min(anchor, upper_);
    left_tapered_ = true;
    left_b_ = anchor - T0_;
    left_a_ = anchor - 2.0 * T0_;
    L = left_a_;
  }
  if (upper_ == kInf) {
    double anchor = t_;
    if (!bps.empty()) anchor = std::max(anchor, bps.back());
    if (std::isfinite(lower_)) anchor = std::max(anchor, lower_);
    right_tapered_ = true;
    right_a_ = anchor + T0_;
    right_b_ = anchor + 2.0 * T0_;
    R = right_b_;
  }

  // Distance from t to the nearest breakpoint not coincident with it.
  double nearest = kInf;
  for (double b : bps) {
    if (std::abs(b - t_) <= eps) {
      const cplx j = f_.jump(b);
      if (std::abs(j) > 1e-10 * (1.0 + std::abs(f_(b)))) {
        throw SingularPointError("cauchy_pv: evaluation point sits on a jump of the input", t_);
      }
    } else {
      nearest = std::min(nearest, std::abs(b - t_));
    }
  }

  const bool at_upper = std::isfinite(upper_) && std::abs(t_ - upper_) <= eps;
  const bool at_lower = std::isfinite(lower_) && std::abs(t_ - lower_) <= eps;
  const bool inside = !at_upper && !at_lower && t_ > lower_ && t_ < upper_;

  double excl_lo = kInf, excl_hi = -kInf;
  if (inside) {
    const double h = std::min({1.0, 0.5 * nearest, t_ - L, R - t_});
    auto sym = [this](double u) { return (f_(t_ - u) - f_(t_ + u)) / u; };
    integrate(sym, 0.0, h, acc);
    excl_lo = t_ - h;
    excl_hi = t_ + h;
  } else if (at_upper) {
    const double tu = upper_;
    const double h = std::min({1.0, 0.5 * nearest, tu - L});
    const cplx f0 = f_.left_limit(tu);
    auto one = [this, f0, tu](double u) { return (f_(tu - u) - f0) / u; };
    integrate(one, 0.0, h, acc);
    acc.value += f0 * std::log(h);
    excl_lo = tu - h;
    excl_hi = tu;
  } else if (at_lower) {
    const double tl = lower_;
    const double h = std::min({1.0, 0.5 * nearest, R - tl});
    const cplx f0 = f_.right_limit(tl);
    auto one = [this, f0, tl](double u) { return (f_(tl + u) - f0) / u; };
    Accumulator part;
    integrate(one, 0.0, h, part);
    acc.value -= part.value + f0 * std::log(h);
    acc.error += part.error;
    excl_lo = tl;
    excl_hi = tl + h;
  }

  std::vector<double> pts{L, R};
  for (double b : bps) pts.push_back(b);
  if (left_tapered_) pts.push_back(left_b_);
  if (right_tapered_) pts.push_back(right_a_);
  if (excl_lo <= excl_hi) {
    pts.push_back(excl_lo);
    pts.push_back(excl_hi);
  }
  std::erase_if(pts, [&](double p) { return p < L || p > R || (p > excl_lo && p < excl_hi); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (a >= excl_lo && b <= excl_hi) continue;
    regular_interval(a, b, acc);
  }

  // Finite part of zero-frequency tails beyond the taper.
  if (left_tapered_) {
    const cplx c = f_.constant_at_minus_infinity();
    if (c != cplx(0.0)) {
      auto w = [this](double tp) { return weight(tp) / (t_ - tp); };
      const double tapered =
          gauss_kronrod<double, 15>::integrate(w, left_a_, left_b_, depth_, kPanelTol);
      acc.value += c * (-std::log(t_ - left_b_) - tapered);
    }
  }
  if (right_tapered_) {
    const cplx c = f_.constant_at_plus_infinity();
    if (c != cplx(0.0)) {
      auto w = [this](double tp) { return weight(tp) / (t_ - tp); };
      const double tapered =
          gauss_kronrod<double, 15>::integrate(w, right_a_, right_b_, depth_, kPanelTol);
      acc.value += c * (std::log(right_a_ - t_) - tapered);
    }
  }
  return acc;
}

}  // namespace

QuadratureResult cauchy_pv(const PiecewiseHarmonic& f, double t, double lower, double upper,
                           const QuadratureControls& controls) {
  controls.validate();
  if (!(lower < upper)) return {0.0, 0.0};
  const double w_tail = f.min_nonzero_tail_frequency();
  const double period = w_tail > 0.0 ? 2.0 * std::numbers::pi / w_tail : 2.0 * std::numbers::pi;
  const double T0 = controls.window_multiplier * period;

  const bool has_tail = lower == -kInf || upper == kInf;
  const Accumulator near = PvWindow(f, t, lower, upper, T0, controls.max_subdivisions).run();
  if (!has_tail) return {near.value, near.error};
  const Accumulator far = PvWindow(f, t, lower, upper, 1.5 * T0, controls.max_subdivisions).run();
  const double spread = std::abs(far.value - near.value);
  if (spread > controls.tolerance) {
    throw NonConvergenceError("cauchy_pv: cutoff-window spread exceeds tolerance", spread);
  }
  return {far.value, spread + far.error};
}

}  // namespace tnorder
