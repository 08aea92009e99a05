#pragma once

#include <vector>

#include "tnorder/piecewise_harmonic.hpp"
#include "tnorder/quadrature.hpp"

namespace tnorder {

/// Selects the frequency-positive (+) or frequency-negative (-) kernel
/// delta^(+-)(t) = 1/2 delta(t) +- PV 1/(2 pi i t).
enum class ProjectorSign { positive = 1, negative = -1 };

inline double sign_value(ProjectorSign s) { return s == ProjectorSign::positive ? 1.0 : -1.0; }
inline ProjectorSign opposite(ProjectorSign s) {
  return s == ProjectorSign::positive ? ProjectorSign::negative : ProjectorSign::positive;
}

struct ValueWithError {
  cplx value;
  double error;
};

/// Image of a piecewise harmonic under a frequency projector: a finite sum
/// of exponential, exponential-integral and logarithmic terms.
///
/// Evaluation is defined away from the endpoints the terms are anchored at;
/// finite_part() additionally assigns endpoint values by dropping the
/// logarithmic divergence at unit scale and weighting the half-delta by 1/2.
class SemiAnalyticFunction {
 public:
  enum class Kind {
    half_delta,    // coeff e^{-i w t} on (lo, hi); weight 1/2 at the ends
    jump,          // coeff e^{-i w t} on (lo, hi); zero at the ends
    exp_integral,  // coeff e^{-i w t} E1(-i w (t - anchor))
    log,           // coeff ln|t - anchor|
  };

  struct Term {
    Kind kind;
    cplx coeff;
    double omega;
    double lo = 0.0;
    double hi = 0.0;
    double anchor = 0.0;
    int side = 0;  // +1: anchor approached with t' below it, -1: above
  };

  SemiAnalyticFunction() = default;
  explicit SemiAnalyticFunction(std::vector<Term> terms) : terms_(std::move(terms)) {}

  const std::vector<Term>& terms() const { return terms_; }
  /// Sorted, de-duplicated anchors and support ends.
  std::vector<double> singular_points() const;

  /// Throws SingularPointError at a singular point.
  cplx operator()(double t) const;
  ValueWithError evaluate(double t) const;
  /// Defined everywhere, including at singular points.
  ValueWithError finite_part(double t) const;

  SemiAnalyticFunction conj() const;

 private:
  ValueWithError eval(double t, bool finite_part_mode) const;
  std::vector<Term> terms_;
};

/// f^(s)(t) = int delta^(s)(t - t') f(t') dt' in closed form.
SemiAnalyticFunction freq_part(const PiecewiseHarmonic& f, ProjectorSign s);

/// int_{-inf}^{upper} delta^(s)(t - t') f(t') dt'. For t == upper the
/// half-delta enters with weight 1/4 and the one-sided divergence is
/// dropped at unit scale. Throws SingularPointError at other breakpoints.
ValueWithError truncated_freq_part(const PiecewiseHarmonic& f, ProjectorSign s, double t,
                                   double upper);

/// Principal-value quadrature oracle for freq_part, independent of the
/// closed forms.
QuadratureResult pv_project(const PiecewiseHarmonic& f, ProjectorSign s, double t,
                            const QuadratureControls& controls = {});

/// Quadrature counterpart of truncated_freq_part, same conventions.
QuadratureResult pv_project_truncated(const PiecewiseHarmonic& f, ProjectorSign s, double t,
                                      double upper, const QuadratureControls& controls = {});

}  // namespace tnorder
