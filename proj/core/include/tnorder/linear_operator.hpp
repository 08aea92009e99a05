#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tnorder/piecewise_harmonic.hpp"

namespace tnorder {

/// Vacuum second moments <e_i e_j> of a finite operator basis. The state
/// is Gaussian with zero mean, so these moments determine every average.
class GaussianBasis {
 public:
  GaussianBasis(std::size_t dim, std::vector<cplx> moments);
  std::size_t dim() const { return dim_; }
  cplx moment(std::size_t i, std::size_t j) const { return moments_[i * dim_ + j]; }
  /// sum_ij u_i <e_i e_j> v_j
  cplx bilinear(std::span<const cplx> u, std::span<const cplx> v) const;
  bool operator==(const GaussianBasis&) const = default;

 private:
  std::size_t dim_;
  std::vector<cplx> moments_;
};

/// Heisenberg operator O(t) = sum_i c_i(t) e_i, linear in the basis.
struct LinearOperator {
  GaussianBasis basis;
  std::vector<PiecewiseHarmonic> coeffs;

  std::vector<cplx> coefficients_at(double t) const;
  /// Union of coefficient breakpoints.
  std::vector<double> breakpoints() const;
};

/// <A(ta) B(tb)>
cplx two_point(const LinearOperator& a, const LinearOperator& b, double ta, double tb);
/// <[A(ta), B(tb)]>, a c-number for linear operators.
cplx commutator(const LinearOperator& a, const LinearOperator& b, double ta, double tb);
/// t' -> <A(ta) B(t')>
PiecewiseHarmonic two_point_row(const LinearOperator& a, double ta, const LinearOperator& b);
/// t' -> <B(t') A(ta)>
PiecewiseHarmonic two_point_column(const LinearOperator& b, const LinearOperator& a, double ta);

}  // namespace tnorder
