#pragma once

#include <utility>

#include "sphqi/geometry.hpp"

namespace sphqi {

struct FieldEval {
  Vec3 f, div, curl;
};

enum class FieldId { Field1, Field2 };

/// Smooth benchmark field: stream function and potential built from a few
/// spherical harmonics, exact Helmholtz-Hodge components.
FieldEval field1(const UnitVector3& x);

/// Limited-regularity benchmark: same divergence-free part, curl-free part
/// from a linear combination of cubic B-spline bumps.
FieldEval field2(const UnitVector3& x);

FieldEval eval_field(FieldId id, const UnitVector3& x);

/// Cubic B-spline with support [0, 2): value and derivative.
std::pair<double, double> cubic_bspline(double r);

}  // namespace sphqi
