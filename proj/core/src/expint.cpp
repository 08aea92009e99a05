#include "tnorder/expint.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tnorder {

namespace {

using lcplx = std::complex<long double>;

// E1(z) = -gamma - ln z - sum_{n>=1} (-z)^n / (n n!)
cplx series(cplx z) {
  const lcplx zl(z.real(), z.imag());
  lcplx term = 1.0L;
  lcplx sum = 0.0L;
  for (int n = 1; n < 400; ++n) {
    term *= -zl / static_cast<long double>(n);
    const lcplx add = term / static_cast<long double>(n);
    sum += add;
    if (std::abs(add) < 1e-21L * std::abs(sum)) break;
  }
  const lcplx result = -std::numbers::egamma_v<long double> - std::log(zl) - sum;
  return {static_cast<double>(result.real()), static_cast<double>(result.imag())};
}

// Modified Lentz on e^{-z} / (z+1 - 1/(z+3 - 4/(z+5 - ...))).
bool continued_fraction(cplx z, cplx& out) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 5000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      out = h * std::exp(-z);
      return true;
    }
  }
  return false;
}

}  // namespace

cplx exp_integral(cplx z) {
  if (z == cplx(0.0, 0.0)) {
    throw std::domain_error("exp_integral: E1 is singular at z = 0");
  }
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw std::domain_error("exp_integral: z on the branch cut; pass a BranchSide");
  }
  if (std::abs(z) <= 2.0) return series(z);
  cplx cf;
  if (continued_fraction(z, cf)) return cf;
  return series(z);
}

cplx exp_integral(double negative_x, BranchSide side) {
  if (!(negative_x < 0.0)) {
    throw std::domain_error("exp_integral: side overload expects a negative real argument");
  }
  // -ln(z) picks up -+ i*pi on the upper/lower lip; the series part is real.
  const cplx lip = series(cplx(negative_x, 0.0));  // ln of negative real -> +i*pi
  return side == BranchSide::upper ? lip : std::conj(lip);
}

}  // namespace tnorder
