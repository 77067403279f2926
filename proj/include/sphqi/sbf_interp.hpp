#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sphqi/quasi_interp.hpp"

namespace sphqi {

/// Dense 2N x 2N tangent-frame-reduced interpolation system for the
/// comparison method (standard vector SBF interpolation).
struct InterpSystem {
  ZonalKernel kernel;
  PointSet nodes;
  std::vector<TangentFrame> frames;
  std::vector<double> matrix;  // row-major, symmetric
  std::vector<double> rhs;
  std::vector<double> factor;  // Cholesky factor after solve
  std::vector<double> coeffs;  // present after solve
  bool solved = false;
  bool jittered = false;
  double residual = 0.0;  // relative residual of the solve

  int dim() const { return 2 * nodes.size(); }
};

/// Assemble A[(i,a),(j,b)] = e_a(x_i)^T Psi(x_i, x_j) e_b(x_j) and the
/// frame-projected data vector.
InterpSystem assemble(const ZonalKernel& kernel,
                      const VectorFieldSamples& samples);

/// Cholesky solve; one retry with a tiny diagonal jitter, then NotSPD.
void solve(InterpSystem& system);

/// Re-solve for new data on the same nodes, reusing the factorization.
void resolve(InterpSystem& system, const VectorFieldSamples& samples);

/// Interpolant s(x) = sum_j Psi(x, x_j)(c_{j,1} e1_j + c_{j,2} e2_j).
std::vector<Vec3> interp_eval(const InterpSystem& system,
                              std::span<const UnitVector3> eval_points);

}  // namespace sphqi
