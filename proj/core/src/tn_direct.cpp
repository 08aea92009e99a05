#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "tnorder/errors.hpp"
#include "tnorder/tn.hpp"

namespace tnorder {

namespace {

using boost::math::quadrature::gauss;

struct Rule {
  std::vector<double> x, w;
};

template <unsigned N>
Rule make_rule() {
  Rule r;
  const auto& ab = gauss<double, N>::abscissa();
  const auto& wt = gauss<double, N>::weights();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    r.x.push_back(ab[i]);
    r.w.push_back(wt[i]);
    if (ab[i] != 0.0) {
      r.x.push_back(-ab[i]);
      r.w.push_back(wt[i]);
    }
  }
  return r;
}

const Rule& outer_rule() {
  static const Rule r = make_rule<16>();
  return r;
}
const Rule& inner_rule() {
  static const Rule r = make_rule<8>();
  return r;
}

// Cut points inside (a, b) at distances base * 2^k from a focus outside it.
void grade_toward(double focus, double a, double b, std::vector<double>& cuts) {
  if (focus > a && focus < b) return;
  const double d = focus <= a ? a - focus : focus - b;
  const double floor = 1e-11 * std::max(1.0, std::abs(focus));
  const double base = d > 0.0 ? d : std::max((b - a) * std::ldexp(1.0, -45), floor);
  for (double s = base; ; s *= 2.0) {
    const double p = focus <= a ? focus + s : focus - s;
    if (p <= a || p >= b) {
      if (focus <= a ? p >= b : p <= a) break;
      continue;
    }
    cuts.push_back(p);
  }
}

struct Node {
  double x;
  double w;
};

// The pieces of the theta-weighted commutator term that are independent
// of the projector signs.
struct ThetaPieces {
  cplx corner;   // 1/4 theta(t2 - t1) C(t1, t2)
  cplx line_y;   // PV int_{t1}^{inf} C(t1, y) / (t2 - y) dy
  cplx line_x;   // PV int_{-inf}^{t2} C(x, t2) / (t1 - x) dx
  cplx area;     // PV int dx / (t1 - x) PV int_x^inf dy C(x, y) / (t2 - y)
  double error;
};

class NestedArea {
 public:
  NestedArea(const std::vector<PiecewiseHarmonic>& outer_coeffs,
             const std::vector<PiecewiseHarmonic>& inner_fns, double t1, double t2)
      : u_(outer_coeffs), d_(inner_fns), t1_(t1), t2_(t2) {
    for (const auto& f : u_) wmax_ = std::max(wmax_, f.max_frequency());
    for (const auto& f : d_) wmax_ = std::max(wmax_, f.max_frequency());
    for (const auto& f : u_)
      for (double b : f.breakpoints()) specials_.push_back(b);
    for (const auto& f : d_) {
      for (double b : f.breakpoints()) {
        specials_.push_back(b);
        if (std::abs(f.jump(b)) > 1e-12 * (1.0 + std::abs(f(b))) && b == t2_) {
          throw SingularPointError("direct path: commutator jumps at the second time", t2_);
        }
      }
    }
    double nearest = 1.0;
    for (double b : specials_)
      if (b != t2_) nearest = std::min(nearest, 0.5 * std::abs(b - t2_));
    if (t1_ != t2_) nearest = std::min(nearest, 0.5 * std::abs(t1_ - t2_));
    hin_ = nearest;
    for (const auto& f : d_) d_at_t2_.push_back(f(t2_));

    specials_.push_back(t2_);
    specials_.push_back(t2_ - hin_);
    specials_.push_back(t2_ + hin_);
    std::sort(specials_.begin(), specials_.end());
    specials_.erase(std::unique(specials_.begin(), specials_.end()), specials_.end());

    double near1 = 1.0;
    for (double s : specials_)
      if (s != t1_) near1 = std::min(near1, 0.5 * std::abs(s - t1_));
    hout_ = near1;
  }

  double max_frequency() const { return wmax_; }

  /// Outer integral with both tails tapered over windows of width R.
  cplx run(double R) const;

 private:
  double panel_length() const { return wmax_ > 0.0 ? std::min(1.0, 1.0 / wmax_) : 1.0; }

  const std::vector<PiecewiseHarmonic>& u_;
  const std::vector<PiecewiseHarmonic>& d_;
  double t1_, t2_;
  double wmax_ = 0.0;
  double hin_ = 1.0, hout_ = 1.0;
  std::vector<double> specials_;
  std::vector<cplx> d_at_t2_;
};

cplx NestedArea::run(double R) const {
  const double lo_anchor = std::min({specials_.front(), t1_, t2_});
  const double hi_anchor = std::max({specials_.back(), t1_, t2_});
  const double xl_a = lo_anchor - 2.0 * R, xl_b = lo_anchor - R;
  const double xr_a = hi_anchor + R, xr_b = hi_anchor + 2.0 * R;
  const double yr_a = hi_anchor + 3.0 * R, yr_b = hi_anchor + 4.0 * R;
  auto w_out = [&](double x) {
    if (x < xl_b) return detail::smooth_cutoff((xl_b - x) / R);
    if (x > xr_a) return detail::smooth_cutoff((x - xr_a) / R);
    return 1.0;
  };
  auto w_in = [&](double y) { return y > yr_a ? detail::smooth_cutoff((y - yr_a) / R) : 1.0; };

  const Rule& rule = outer_rule();
  const double len = panel_length();

  // Outer nodes outside the principal-value core around t1.
  std::vector<Node> outer;
  std::vector<double> cuts{xl_a, xl_b, xr_a, xr_b, t1_ - hout_, t1_ + hout_};
  for (double s : specials_) cuts.push_back(s);
  std::erase_if(cuts, [&](double p) { return p > t1_ - hout_ && p < t1_ + hout_; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (a >= t1_ - hout_ && b <= t1_ + hout_) continue;
    std::vector<double> sub{a, b};
    grade_toward(t1_, a, b, sub);
    grade_toward(t2_, a, b, sub);
    std::sort(sub.begin(), sub.end());
    for (std::size_t j = 0; j + 1 < sub.size(); ++j) {
      const double sa = sub[j], sb = sub[j + 1];
      const int n = std::max(1, static_cast<int>(std::ceil((sb - sa) / len)));
      const double step = (sb - sa) / n;
      for (int q = 0; q < n; ++q) {
        const double pa = sa + q * step, pb = q + 1 == n ? sb : sa + (q + 1) * step;
        const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (std::size_t r = 0; r < rule.x.size(); ++r)
          outer.push_back({mid + half * rule.x[r], half * rule.w[r]});
      }
    }
  }

  // Core nodes u in (0, hout), geometric toward 0.
  std::vector<Node> core;
  const double u_floor = 1e-11 * std::max(1.0, std::abs(t1_));
  for (int level = 0; hout_ * std::ldexp(1.0, -level) > u_floor; ++level) {
    const double pb = hout_ * std::ldexp(1.0, -level), pa = 0.5 * pb;
    const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
    for (std::size_t r = 0; r < rule.x.size(); ++r)
      core.push_back({mid + half * rule.x[r], half * rule.w[r]});
  }

  // Every point at which the inner integral is needed, plus inner cuts.
  std::vector<double> pts;
  pts.reserve(outer.size() + 2 * core.size() + 64);
  for (const auto& n : outer) pts.push_back(n.x);
  for (const auto& n : core) {
    pts.push_back(t1_ - n.x);
    pts.push_back(t1_ + n.x);
  }
  for (double s : specials_) pts.push_back(s);
  pts.push_back(yr_a);
  pts.push_back(yr_b);
  for (double y = xr_b; y < yr_b; y += len) pts.push_back(y);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const std::size_t n_fn = d_.size();
  auto chi = [&](double y) { return std::abs(y - t2_) < hin_ ? 1.0 : 0.0; };
  // Regular part of the inner integral, accumulated from the right.
  std::vector<cplx> cum(pts.size() * n_fn, 0.0);
  const Rule& irule = inner_rule();
  for (std::size_t k = pts.size() - 1; k-- > 0;) {
    const double a = pts[k], b = pts[k + 1];
    for (std::size_t i = 0; i < n_fn; ++i) cum[k * n_fn + i] = cum[(k + 1) * n_fn + i];
    if (a >= yr_b) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double c = chi(mid);
    for (std::size_t r = 0; r < irule.x.size(); ++r) {
      const double y = mid + half * irule.x[r];
      if (y == t2_) continue;
      const double wy = half * irule.w[r] * w_in(y) / (t2_ - y);
      for (std::size_t i = 0; i < n_fn; ++i)
        cum[k * n_fn + i] += wy * (d_[i](y) - c * d_at_t2_[i]);
    }
  }

  auto F = [&](double x) {
    const auto it = std::lower_bound(pts.begin(), pts.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - pts.begin());
    const double lam = std::abs(x - t2_) < hin_ ? std::log(std::abs(t2_ - x) / hin_) : 0.0;
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n_fn; ++i)
      sum += u_[i](x) * (cum[k * n_fn + i] + d_at_t2_[i] * lam);
    return sum;
  };

  cplx total = 0.0;
  for (const auto& n : outer) total += n.w * w_out(n.x) * F(n.x) / (t1_ - n.x);
  for (const auto& n : core) total += n.w * (F(t1_ - n.x) - F(t1_ + n.x)) / n.x;
  return total;
}

PiecewiseHarmonic combine(const std::vector<PiecewiseHarmonic>& fns, std::span<const cplx> w) {
  PiecewiseHarmonic out;
  for (std::size_t i = 0; i < fns.size(); ++i)
    if (w[i] != cplx(0.0)) out += w[i] * fns[i];
  return out;
}

ThetaPieces theta_pieces(const LinearOperator& a, const LinearOperator& b, double t1, double t2,
                         const QuadratureControls& controls) {
  const std::size_t n = a.coeffs.size();
  const auto& basis = a.basis;
  // D_i(y) = sum_j <[e_i, e_j]> cb_j(y), so C(x, y) = sum_i ca_i(x) D_i(y).
  std::vector<PiecewiseHarmonic> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<cplx> k(n);
    for (std::size_t j = 0; j < n; ++j) k[j] = basis.moment(i, j) - basis.moment(j, i);
    d[i] = combine(b.coeffs, k);
  }
  for (const auto& f : d) {
    if (f.constant_at_minus_infinity() != cplx(0.0) || f.constant_at_plus_infinity() != cplx(0.0))
      throw ConfigError("direct path: commutator must have no constant tail");
  }

  ThetaPieces out{};
  const cplx c12 = commutator(a, b, t1, t2);
  const double step = t2 > t1 ? 1.0 : (t2 == t1 ? 0.5 : 0.0);
  out.corner = 0.25 * step * c12;

  const auto ca_t1 = a.coefficients_at(t1);
  std::vector<cplx> d_t2(n);
  for (std::size_t i = 0; i < n; ++i) d_t2[i] = d[i](t2);
  const auto row = combine(d, ca_t1);
  const auto col = combine(a.coeffs, d_t2);
  const auto ry = cauchy_pv(row, t2, t1, kInf, controls);
  const auto cx = cauchy_pv(col, t1, -kInf, t2, controls);
  out.line_y = ry.value;
  out.line_x = cx.value;

  NestedArea area(a.coeffs, d, t1, t2);
  double w_tail = kInf;
  for (const auto& f : a.coeffs) {
    const double w = f.min_nonzero_tail_frequency();
    if (w > 0.0) w_tail = std::min(w_tail, w);
  }
  if (!std::isfinite(w_tail)) w_tail = 1.0;
  const double R = controls.window_multiplier * 2.0 * std::numbers::pi / w_tail;
  // The tails leave a non-oscillating remainder with an expansion in 1/R;
  // two Richardson steps remove its first two orders.
  const cplx d1 = area.run(R), d2 = area.run(2.0 * R), d4 = area.run(4.0 * R);
  out.area = (8.0 * d4 - 6.0 * d2 + d1) / 3.0;
  const cplx once = 2.0 * d4 - d2;
  const double k = 1.0 / (2.0 * std::numbers::pi);
  out.error = 0.5 * k * (ry.error + cx.error) + k * k * std::abs(out.area - once);
  return out;
}

struct Projected {
  std::vector<cplx> value;
  double error = 0.0;
};

Projected project_all(const LinearOperator& op, ProjectorSign s, double t,
                      const QuadratureControls& controls) {
  Projected out;
  for (const auto& c : op.coeffs) {
    auto r = pv_project(c, s, t, controls);
    out.value.push_back(r.value);
    out.error += r.error;
  }
  return out;
}

}  // namespace

TnResult tn_pair_exact_direct(const LinearOperator& a, const LinearOperator& b, double t1,
                              double t2, const QuadratureControls& controls) {
  if (!(a.basis == b.basis)) throw std::invalid_argument("operators act on different bases");
  controls.validate();
  const auto& basis = a.basis;
  const std::size_t n = a.coeffs.size();

  std::array<Projected, 2> pa{project_all(a, ProjectorSign::positive, t1, controls),
                              project_all(a, ProjectorSign::negative, t1, controls)};
  std::array<Projected, 2> pb{project_all(b, ProjectorSign::positive, t2, controls),
                              project_all(b, ProjectorSign::negative, t2, controls)};

  // Separable G and C parts for each sign pair; index 0 is +, 1 is -.
  cplx sep_g[2][2], sep_c[2][2];
  double sep_err = 0.0;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      cplx g = 0.0, c = 0.0;
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const cplx uv = pa[s1].value[i] * pb[s2].value[j];
          g += uv * basis.moment(i, j);
          c += uv * (basis.moment(i, j) - basis.moment(j, i));
          mag = std::max(mag, std::abs(basis.moment(i, j)));
        }
      }
      sep_g[s1][s2] = g;
      sep_c[s1][s2] = c;
      double amax = 0.0, bmax = 0.0;
      for (auto v : pa[s1].value) amax = std::max(amax, std::abs(v));
      for (auto v : pb[s2].value) bmax = std::max(bmax, std::abs(v));
      sep_err += 2.0 * mag * (pa[s1].error * bmax + amax * pb[s2].error);
    }
  }

  const ThetaPieces th = theta_pieces(a, b, t1, t2, controls);
  const cplx i2pi = cplx(0.0, 2.0 * std::numbers::pi);
  auto theta = [&](double s1, double s2) {
    const cplx k1 = s1 / i2pi, k2 = s2 / i2pi;
    return th.corner + 0.5 * k2 * th.line_y + 0.5 * k1 * th.line_x + k1 * k2 * th.area;
  };

  const cplx tpp = sep_g[0][0] - theta(1.0, 1.0);
  const cplx tmm = sep_g[1][1] - sep_c[1][1] + theta(-1.0, -1.0);
  const cplx tmp = sep_g[1][0];
  const cplx tpm = sep_g[0][1] - sep_c[0][1];
  return {tpp + tmm + tmp + tpm, TnMethod::exact, TnPath::direct, sep_err + th.error};
}

}  // namespace tnorder
