#pragma once

#include "sphqi/geometry.hpp"
#include "sphqi/zonal_kernel.hpp"

namespace sphqi {

struct MatrixKernelEval {
  Mat3 div, curl, combined;
};

/// Divergence-free kernel in the stable form c_Q(t) Qt + kappa(t) R.
/// Rows are tangent at x; columns annihilate y.
Mat3 eval_div(const ZonalKernel& k, const UnitVector3& x, const UnitVector3& y);

/// Curl-free kernel c_Q(t) Vt + kappa(t) W, same tangency identities.
Mat3 eval_curl(const ZonalKernel& k, const UnitVector3& x,
               const UnitVector3& y);

/// Both kernels plus their superposition.
MatrixKernelEval eval_combined(const ZonalKernel& k, const UnitVector3& x,
                               const UnitVector3& y);

}  // namespace sphqi
