#include "tnorder/linear_operator.hpp"

#include <algorithm>

#include "tnorder/errors.hpp"

namespace tnorder {

GaussianBasis::GaussianBasis(std::size_t dim, std::vector<cplx> moments)
    : dim_(dim), moments_(std::move(moments)) {
  if (dim_ == 0 || moments_.size() != dim_ * dim_) {
    throw ConfigError("gaussian basis: moment matrix must be dim x dim");
  }
}

cplx GaussianBasis::bilinear(std::span<const cplx> u, std::span<const cplx> v) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i] == cplx(0.0)) continue;
    cplx row = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) row += moment(i, j) * v[j];
    sum += u[i] * row;
  }
  return sum;
}

std::vector<cplx> LinearOperator::coefficients_at(double t) const {
  std::vector<cplx> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c(t));
  return out;
}

std::vector<double> LinearOperator::breakpoints() const {
  std::vector<double> out;
  for (const auto& c : coeffs) out.insert(out.end(), c.breakpoints().begin(), c.breakpoints().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void require_same_basis(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.basis == b.basis) || a.coeffs.size() != a.basis.dim() ||
      b.coeffs.size() != b.basis.dim()) {
    throw ConfigError("linear operators must share one gaussian basis");
  }
}

}  // namespace

cplx two_point(const LinearOperator& a, const LinearOperator& b, double ta, double tb) {
  require_same_basis(a, b);
  return a.basis.bilinear(a.coefficients_at(ta), b.coefficients_at(tb));
}

cplx commutator(const LinearOperator& a, const LinearOperator& b, double ta, double tb) {
  require_same_basis(a, b);
  const auto ca = a.coefficients_at(ta);
  const auto cb = b.coefficients_at(tb);
  return a.basis.bilinear(ca, cb) - a.basis.bilinear(cb, ca);
}

PiecewiseHarmonic two_point_row(const LinearOperator& a, double ta, const LinearOperator& b) {
  require_same_basis(a, b);
  const auto ca = a.coefficients_at(ta);
  PiecewiseHarmonic out;
  for (std::size_t j = 0; j < b.basis.dim(); ++j) {
    cplx w = 0.0;
    for (std::size_t i = 0; i < a.basis.dim(); ++i) w += ca[i] * a.basis.moment(i, j);
    if (w != cplx(0.0)) out += w * b.coeffs[j];
  }
  return out;
}

PiecewiseHarmonic two_point_column(const LinearOperator& b, const LinearOperator& a, double ta) {
  require_same_basis(a, b);
  const auto ca = a.coefficients_at(ta);
  PiecewiseHarmonic out;
  for (std::size_t i = 0; i < b.basis.dim(); ++i) {
    cplx w = 0.0;
    for (std::size_t j = 0; j < a.basis.dim(); ++j) w += a.basis.moment(i, j) * ca[j];
    if (w != cplx(0.0)) out += w * b.coeffs[i];
  }
  return out;
}

}  // namespace tnorder
