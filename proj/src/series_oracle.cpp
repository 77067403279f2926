#include "sphqi/series_oracle.hpp"

#include <vector>

#include "sphqi/legendre.hpp"

namespace sphqi {

SeriesKernel::SeriesKernel(const FourierCoeffs& coeffs)
    : coeffs_(coeffs), basis_(coeffs.max_degree()) {}

void SeriesKernel::tables(const UnitVector3& p, std::vector<Vec3>& yv,
                          std::vector<Vec3>& zv) const {
  const size_t n = HarmonicBasis::table_size(basis_.degree());
  static thread_local std::vector<double> Y;
  Y.resize(n);
  yv.resize(n);
  zv.resize(n);
  basis_.eval_all(p, Y, yv, zv);
}

Mat3 SeriesKernel::div(const UnitVector3& x, const UnitVector3& y) const {
  std::vector<Vec3> yx, zx, yy, zy;
  tables(x, yx, zx);
  tables(y, yy, zy);
  Mat3 s = Mat3::zero();
  const int L = coeffs_.max_degree();
  for (int l = 1; l <= L; ++l) {
    const double w = coeffs_.values[static_cast<size_t>(l)];
    Mat3 sl = Mat3::zero();
    for (int k = 1; k <= 2 * l + 1; ++k) {
      const size_t i = HarmonicBasis::idx(l, k);
      sl += outer(yx[i], yy[i]);
    }
    s += w * sl;
  }
  return s;
}

Mat3 SeriesKernel::curl(const UnitVector3& x, const UnitVector3& y) const {
  std::vector<Vec3> yx, zx, yy, zy;
  tables(x, yx, zx);
  tables(y, yy, zy);
  Mat3 s = Mat3::zero();
  const int L = coeffs_.max_degree();
  for (int l = 1; l <= L; ++l) {
    const double w = coeffs_.values[static_cast<size_t>(l)];
    Mat3 sl = Mat3::zero();
    for (int k = 1; k <= 2 * l + 1; ++k) {
      const size_t i = HarmonicBasis::idx(l, k);
      sl += outer(zx[i], zy[i]);
    }
    s += w * sl;
  }
  return s;
}

Mat3 eval_div_series(const FourierCoeffs& coeffs, const UnitVector3& x,
                     const UnitVector3& y) {
  return SeriesKernel(coeffs).div(x, y);
}

Mat3 eval_curl_series(const FourierCoeffs& coeffs, const UnitVector3& x,
                      const UnitVector3& y) {
  return SeriesKernel(coeffs).curl(x, y);
}

ScalarKernelValues kernel_values_from_coeffs(const FourierCoeffs& coeffs,
                                             double t) {
  const int L = coeffs.max_degree();
  std::vector<double> P(static_cast<size_t>(L) + 1),
      dP(static_cast<size_t>(L) + 1), ddP(static_cast<size_t>(L) + 1);
  legendre_all(L, t, P, dP);
  legendre_second(L, dP, ddP);
  ScalarKernelValues v{};
  for (int l = 0; l <= L; ++l) {
    const double c = coeffs.values[static_cast<size_t>(l)];
    v.psi += (2.0 * l + 1.0) / kFourPi * c * P[static_cast<size_t>(l)];
    if (l >= 1) {
      const double w = (2.0 * l + 1.0) / (kFourPi * l * (l + 1.0));
      v.kappa += w * c * dP[static_cast<size_t>(l)];
      v.cq += w * c * ddP[static_cast<size_t>(l)];
    }
  }
  v.cq *= (1.0 - t) * (1.0 + t);
  return v;
}

double psi_from_coeffs(const FourierCoeffs& coeffs, double t) {
  return kernel_values_from_coeffs(coeffs, t).psi;
}

double kappa_from_coeffs(const FourierCoeffs& coeffs, double t) {
  return kernel_values_from_coeffs(coeffs, t).kappa;
}

double cq_from_coeffs(const FourierCoeffs& coeffs, double t) {
  return kernel_values_from_coeffs(coeffs, t).cq;
}

}  // namespace sphqi
