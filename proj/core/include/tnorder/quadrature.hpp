#pragma once

#include "tnorder/piecewise_harmonic.hpp"

namespace tnorder {

/// Controls for principal-value quadrature. Passed by value everywhere.
struct QuadratureControls {
  /// Cutoff window, in multiples of the longest tail period.
  double window_multiplier = 40.0;
  /// Largest tolerated spread between the two cutoff windows.
  double tolerance = 1e-7;
  /// Maximum bisection depth of the adaptive Gauss-Kronrod rule per panel.
  unsigned max_subdivisions = 15;

  void validate() const;
};

struct QuadratureResult {
  cplx value;
  double error;
};

/// Numerical PV integral of f(t') / (t - t') over (lower, upper).
///
/// Conventions shared with the closed-form engine:
///  - infinite tails of oscillating terms are summed by a smooth average
///    over a sequence of cutoffs (a C-infinity taper of the window);
///  - zero-frequency terms on unbounded pieces contribute their finite part
///    (the log of the cutoff is dropped);
///  - when t coincides with lower or upper the one-sided logarithmic
///    divergence is dropped at unit scale (finite part).
/// Two windows, at window_multiplier and 1.5x that, are evaluated; their
/// spread plus the panel error estimates is reported as the error.
/// Throws NonConvergenceError if the spread exceeds controls.tolerance and
/// SingularPointError if t sits on a jump of f inside the range.
QuadratureResult cauchy_pv(const PiecewiseHarmonic& f, double t, double lower, double upper,
                           const QuadratureControls& controls);

namespace detail {

/// 1 on (-inf, 0], 0 on [1, inf), C-infinity in between.
double smooth_cutoff(double x);

}  // namespace detail

}  // namespace tnorder
