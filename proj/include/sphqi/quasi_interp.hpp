#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sphqi/point_set.hpp"
#include "sphqi/zonal_kernel.hpp"

namespace sphqi {

/// Tangential vector data attached to a point set, one value per node.
/// Noisy data may carry ambient components; the kernels annihilate the
/// node-normal part, so tangency is checked but not enforced.
struct VectorFieldSamples {
  PointSet points;
  std::vector<Vec3> values;

  double max_tangency_defect() const;
};

struct DecompositionResult {
  std::vector<UnitVector3> eval_points;
  std::vector<Vec3> div, curl, combined;
  std::uint64_t pair_evaluations = 0;
};

/// One evaluation of the quasi-interpolant components at x:
/// (4pi/N) sum_j Psi^{div/curl}(x, x_j) f_j via the explicit summation
/// formulas in the stable c_Q form.  Deterministic pairwise reduction.
std::pair<Vec3, Vec3> qi_eval_point(const ZonalKernel& kernel,
                                    const VectorFieldSamples& samples,
                                    const UnitVector3& x);

/// Batched evaluation, parallel over eval points; combined = div + curl.
DecompositionResult qi_decompose(const ZonalKernel& kernel,
                                 const VectorFieldSamples& samples,
                                 std::span<const UnitVector3> eval_points);

/// Same operator driven by a truncated Fourier-Legendre coefficient table
/// (diagnostics path for the multiplier-exactness checks).
DecompositionResult qi_decompose_series(const FourierCoeffs& coeffs,
                                        const VectorFieldSamples& samples,
                                        std::span<const UnitVector3> evals);

}  // namespace sphqi
