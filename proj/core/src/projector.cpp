#include "tnorder/projector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tnorder/errors.hpp"
#include "tnorder/expint.hpp"

namespace tnorder {

namespace {

using std::numbers::pi;
constexpr double kE1RelError = 1e-13;
constexpr double kRoundoff = 1e-15;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

std::vector<double> SemiAnalyticFunction::singular_points() const {
  std::vector<double> pts;
  for (const auto& term : terms_) {
    switch (term.kind) {
      case Kind::half_delta:
      case Kind::jump:
        if (std::isfinite(term.lo)) pts.push_back(term.lo);
        if (std::isfinite(term.hi)) pts.push_back(term.hi);
        break;
      case Kind::exp_integral:
      case Kind::log:
        pts.push_back(term.anchor);
        break;
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

cplx SemiAnalyticFunction::operator()(double t) const { return eval(t, false).value; }

ValueWithError SemiAnalyticFunction::evaluate(double t) const { return eval(t, false); }

ValueWithError SemiAnalyticFunction::finite_part(double t) const { return eval(t, true); }

ValueWithError SemiAnalyticFunction::eval(double t, bool finite_part_mode) const {
  cplx sum = 0.0;
  double err = 0.0;
  auto singular = [t] {
    throw SingularPointError("semi-analytic function evaluated at a breakpoint", t);
  };
  for (const auto& term : terms_) {
    const cplx phase = std::polar(1.0, -term.omega * t);
    cplx v = 0.0;
    switch (term.kind) {
      case Kind::half_delta:
      case Kind::jump: {
        if (t > term.lo && t < term.hi) {
          v = term.coeff * phase;
        } else if (t == term.lo || t == term.hi) {
          if (!finite_part_mode) singular();
          if (term.kind == Kind::half_delta) v = 0.5 * term.coeff * phase;
        }
        err += kRoundoff * std::abs(v);
        break;
      }
      case Kind::exp_integral: {
        const double x = t - term.anchor;
        cplx e1;
        if (x == 0.0) {
          if (!finite_part_mode) singular();
          e1 = cplx(-std::numbers::egamma - std::log(std::abs(term.omega)),
                    0.5 * pi * sgn(term.omega * term.side));
        } else {
          e1 = exp_integral(cplx(0.0, -term.omega * x));
        }
        v = term.coeff * phase * e1;
        err += kE1RelError * std::abs(v);
        break;
      }
      case Kind::log: {
        const double x = std::abs(t - term.anchor);
        if (x == 0.0) {
          if (!finite_part_mode) singular();
        } else {
          v = term.coeff * std::log(x);
        }
        err += kRoundoff * std::abs(v);
        break;
      }
    }
    sum += v;
  }
  return {sum, err};
}

SemiAnalyticFunction SemiAnalyticFunction::conj() const {
  // conj(E1(-i w x)) = E1(i w x): flipping w maps each term onto its conjugate.
  std::vector<Term> out = terms_;
  for (auto& term : out) {
    term.coeff = std::conj(term.coeff);
    term.omega = -term.omega;
  }
  return SemiAnalyticFunction(std::move(out));
}

SemiAnalyticFunction freq_part(const PiecewiseHarmonic& f, ProjectorSign s) {
  using Kind = SemiAnalyticFunction::Kind;
  const double sv = sign_value(s);
  const cplx kernel = sv / cplx(0.0, 2.0 * pi);  // s / (2 pi i)
  std::vector<SemiAnalyticFunction::Term> terms;
  for (std::size_t k = 0; k < f.piece_count(); ++k) {
    const double a = f.piece_lower(k);
    const double b = f.piece_upper(k);
    for (const auto& [c, w] : f.terms(k)) {
      terms.push_back({Kind::half_delta, 0.5 * c, w, a, b});
      if (w != 0.0) {
        // i pi sign(w) from the PV through the interior of the piece.
        terms.push_back({Kind::jump, 0.5 * sv * sgn(w) * c, w, a, b});
        if (std::isfinite(b)) {
          terms.push_back({Kind::exp_integral, kernel * c, w, 0.0, 0.0, b, +1});
        }
        if (std::isfinite(a)) {
          terms.push_back({Kind::exp_integral, -kernel * c, w, 0.0, 0.0, a, -1});
        }
      } else {
        if (std::isfinite(b)) terms.push_back({Kind::log, -kernel * c, 0.0, 0.0, 0.0, b, +1});
        if (std::isfinite(a)) terms.push_back({Kind::log, kernel * c, 0.0, 0.0, 0.0, a, -1});
      }
    }
  }
  return SemiAnalyticFunction(std::move(terms));
}

ValueWithError truncated_freq_part(const PiecewiseHarmonic& f, ProjectorSign s, double t,
                                   double upper) {
  const SemiAnalyticFunction image = freq_part(f.truncated_above(upper), s);
  if (t == upper) return image.finite_part(t);
  return image.evaluate(t);
}

QuadratureResult pv_project(const PiecewiseHarmonic& f, ProjectorSign s, double t,
                            const QuadratureControls& controls) {
  const QuadratureResult pv = cauchy_pv(f, t, -kInf, kInf, controls);
  const cplx kernel = sign_value(s) / cplx(0.0, 2.0 * pi);
  return {0.5 * f(t) + kernel * pv.value, std::abs(kernel) * pv.error};
}

QuadratureResult pv_project_truncated(const PiecewiseHarmonic& f, ProjectorSign s, double t,
                                      double upper, const QuadratureControls& controls) {
  const QuadratureResult pv = cauchy_pv(f, t, -kInf, upper, controls);
  const cplx kernel = sign_value(s) / cplx(0.0, 2.0 * pi);
  cplx local = 0.0;
  if (t < upper) {
    local = 0.5 * f(t);
  } else if (t == upper) {
    local = 0.25 * f.left_limit(t);
  }
  return {local + kernel * pv.value, std::abs(kernel) * pv.error};
}

}  // namespace tnorder
