#pragma once

#include <complex>

namespace tnorder {

using cplx = std::complex<double>;

/// Physical scales of the oscillator. Normalized units are the default.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;
  double omega0 = 1.0;

  /// Throws ConfigError unless every scale is strictly positive.
  void validate() const;

  /// hbar * mass * omega0, the unit TN momentum averages are reported in.
  double momentum_scale() const { return hbar * mass * omega0; }
};

/// Second moments of the canonical pair in the omega0 vacuum.
struct VacuumMoments {
  double xx;  // <x^2>
  double pp;  // <p^2>
  cplx xp;    // <x p>
  cplx px;    // <p x>

  static VacuumMoments of(const Units& u) {
    return {u.hbar / (2.0 * u.mass * u.omega0), u.hbar * u.mass * u.omega0 / 2.0,
            cplx(0.0, u.hbar / 2.0), cplx(0.0, -u.hbar / 2.0)};
  }
};

}  // namespace tnorder
