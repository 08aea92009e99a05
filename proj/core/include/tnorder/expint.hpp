#pragma once

#include "tnorder/units.hpp"

namespace tnorder {

/// Side of the branch cut along the negative real axis.
enum class BranchSide { upper, lower };

/// Principal-branch exponential integral E1(z) = int_z^inf e^{-s}/s ds.
///
/// Relative accuracy ~1e-13 away from the cut. Throws std::domain_error at
/// z = 0 and on the negative real axis (use the side overload there).
cplx exp_integral(cplx z);

/// E1 on the negative real axis approached from the given side:
/// E1(-x +- i0) = -Ei(x) -+ i*pi.
cplx exp_integral(double negative_x, BranchSide side);

}  // namespace tnorder
