#pragma once

#include "sphqi/geometry.hpp"
#include "sphqi/sph_harmonics.hpp"
#include "sphqi/zonal_kernel.hpp"

namespace sphqi {

// Truncated Fourier-Legendre series evaluation of the matrix kernels and of
// the scalar kernel triple.  Diagnostics/oracle code: lives in its own
// library target, never linked by the production evaluation path.

/// Partial sum over l = 1..L of hat-psi(l) sum_k y_{l,k}(x) y_{l,k}(y)^T.
/// L = 0 yields the zero matrix.  Propagates PoleProximity.
Mat3 eval_div_series(const FourierCoeffs& coeffs, const UnitVector3& x,
                     const UnitVector3& y);

/// As above with the curl-free family z_{l,k}.
Mat3 eval_curl_series(const FourierCoeffs& coeffs, const UnitVector3& x,
                      const UnitVector3& y);

/// Reusable workspace variant (the 500-pair oracle sweeps reuse tables).
class SeriesKernel {
 public:
  explicit SeriesKernel(const FourierCoeffs& coeffs);

  Mat3 div(const UnitVector3& x, const UnitVector3& y) const;
  Mat3 curl(const UnitVector3& x, const UnitVector3& y) const;

 private:
  void tables(const UnitVector3& p, std::vector<Vec3>& yv,
              std::vector<Vec3>& zv) const;

  const FourierCoeffs& coeffs_;
  HarmonicBasis basis_;
};

/// Scalar kernel functions of the truncated series, evaluated through the
/// Legendre derivative sums (exact finite polynomial identities):
///   kappa_L(t) = sum_l (2l+1)/(4 pi l(l+1)) hat-psi(l) P_l'(t)
///   cq_L(t)    = (1-t^2) sum_l (2l+1)/(4 pi l(l+1)) hat-psi(l) P_l''(t)
double psi_from_coeffs(const FourierCoeffs& coeffs, double t);
double kappa_from_coeffs(const FourierCoeffs& coeffs, double t);
double cq_from_coeffs(const FourierCoeffs& coeffs, double t);

ScalarKernelValues kernel_values_from_coeffs(const FourierCoeffs& coeffs,
                                             double t);

}  // namespace sphqi
