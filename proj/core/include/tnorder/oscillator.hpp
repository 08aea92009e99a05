#pragma once

#include "tnorder/linear_operator.hpp"
#include "tnorder/piecewise_harmonic.hpp"
#include "tnorder/schedule.hpp"
#include "tnorder/units.hpp"

namespace tnorder {

/// Heisenberg operator of the parametric oscillator, linear in the
/// canonical pair at t = 0: O(t) = coeff_p(t) p + coeff_x(t) x.
/// Both coefficient functions are real-valued.
struct QuadratureOperator {
  PiecewiseHarmonic coeff_p;
  PiecewiseHarmonic coeff_x;
  Units units;

  /// The same operator over the (p, x) basis with omega0-vacuum moments.
  LinearOperator as_linear() const;
};

/// Basis (p, x) with the omega0-vacuum moment matrix.
GaussianBasis canonical_basis(const Units& units);

/// p(t) under the schedule, built by composing per-segment symplectic
/// transfer matrices. The first segment evolves freely with phase fixed at
/// t = 0, so p(0) = p whenever 0 lies in the first segment. Throws
/// ConfigError if the first segment's frequency differs from units.omega0.
QuadratureOperator heisenberg_momentum(const FrequencySchedule& schedule, const Units& units = {});
/// x(t), propagated alongside p(t).
QuadratureOperator heisenberg_position(const FrequencySchedule& schedule, const Units& units = {});

/// <[A(t1), B(t2)]> from the coefficients and [x, p] = i hbar.
cplx commutator(const QuadratureOperator& a, const QuadratureOperator& b, double t1, double t2);
/// <[O(t), O(t')]>
cplx symplectic_check(const QuadratureOperator& op, double t, double t_prime);
/// <0| A(t1) B(t2) |0>
cplx vacuum_two_point(const QuadratureOperator& a, const QuadratureOperator& b, double t1,
                      double t2);
/// <0| O(t)^2 |0>
double momentum_variance(const QuadratureOperator& op, double t);

}  // namespace tnorder
