#include "sphqi/sph_harmonics.hpp"

#include <cassert>
#include <cmath>

#include "sphqi/errors.hpp"

namespace sphqi {

// Normalized associated Legendre functions
//   Pbar_l^m = sqrt((2l+1)/(4pi) * (l-m)!/(l+m)!) P_l^m  (no C-S phase)
// via the stable ascending recurrence
//   Pbar_m^m     = sqrt((2m+1)/(2m)) * sin(theta) * Pbar_{m-1}^{m-1}
//   Pbar_{m+1}^m = sqrt(2m+3) * cos(theta) * Pbar_m^m
//   Pbar_l^m     = a_lm (cos(theta) Pbar_{l-1}^m - b_lm Pbar_{l-2}^m)
// with a_lm = sqrt((4l^2-1)/(l^2-m^2)), b_lm = sqrt(((l-1)^2-m^2)/(4(l-1)^2-1)).
//
// The theta-derivative uses
//   d/dtheta Pbar_l^m = (l ct Pbar_l^m - c_lm Pbar_{l-1}^m) / sin(theta),
//   c_lm = sqrt((l^2-m^2)(2l+1)/(2l-1)).

HarmonicBasis::HarmonicBasis(int L) : L_(L) {
  assert(L >= 0);
  const size_t n = tri(L, L) + 1;
  a_.assign(n, 0.0);
  b_.assign(n, 0.0);
  c_.assign(n, 0.0);
  for (int m = 0; m <= L; ++m) {
    for (int l = m; l <= L; ++l) {
      const double l2 = static_cast<double>(l) * l;
      const double m2 = static_cast<double>(m) * m;
      if (l >= m + 2) {
        a_[tri(l, m)] = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
        const double lm1 = static_cast<double>(l - 1);
        b_[tri(l, m)] =
            std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
      }
      if (l >= 1) c_[tri(l, m)] = std::sqrt((l2 - m2) * (2.0 * l + 1.0) /
                                            (2.0 * l - 1.0));
    }
  }
}

void HarmonicBasis::eval_assoc(double ct, double sxy, std::span<double> pbar,
                               std::span<double> dpbar, bool with_deriv) const {
  const double inv_sxy = with_deriv ? 1.0 / sxy : 0.0;
  double pmm = 1.0 / std::sqrt(kFourPi);
  for (int m = 0; m <= L_; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sxy;
    double plm2 = 0.0;
    double plm1 = pmm;
    pbar[tri(m, m)] = pmm;
    if (with_deriv)
      dpbar[tri(m, m)] = m * ct * pmm * inv_sxy;  // c_mm term vanishes
    for (int l = m + 1; l <= L_; ++l) {
      double p;
      if (l == m + 1) {
        p = std::sqrt(2.0 * m + 3.0) * ct * plm1;
      } else {
        p = a_[tri(l, m)] * (ct * plm1 - b_[tri(l, m)] * plm2);
      }
      pbar[tri(l, m)] = p;
      if (with_deriv)
        dpbar[tri(l, m)] = (l * ct * p - c_[tri(l, m)] * plm1) * inv_sxy;
      plm2 = plm1;
      plm1 = p;
    }
  }
}

void HarmonicBasis::eval_scalar(const UnitVector3& x,
                                std::span<double> Y) const {
  assert(Y.size() >= table_size(L_));
  const double ct = x.z();
  const double sxy = std::hypot(x.x(), x.y());
  double cphi = 1.0, sphi = 0.0;
  if (sxy > 0.0) {
    cphi = x.x() / sxy;
    sphi = x.y() / sxy;
  }
  std::vector<double> pbar(tri(L_, L_) + 1);
  eval_assoc(ct, sxy, pbar, {}, false);
  const double sqrt2 = std::numbers::sqrt2;
  double cm = 1.0, sm = 0.0;  // cos(m phi), sin(m phi)
  for (int m = 0; m <= L_; ++m) {
    if (m > 0) {
      const double c = cm * cphi - sm * sphi;
      sm = sm * cphi + cm * sphi;
      cm = c;
    }
    for (int l = std::max(m, 0); l <= L_; ++l) {
      const double p = pbar[tri(l, m)];
      if (m == 0) {
        Y[idx(l, l + 1)] = p;
      } else {
        if (l >= m) {
          Y[idx(l, l + 1 + m)] = sqrt2 * p * cm;
          Y[idx(l, l + 1 - m)] = sqrt2 * p * sm;
        }
      }
    }
  }
}

void HarmonicBasis::eval_all(const UnitVector3& x, std::span<double> Y,
                             std::span<Vec3> yv, std::span<Vec3> zv) const {
  assert(Y.size() >= table_size(L_) && yv.size() >= table_size(L_) &&
         zv.size() >= table_size(L_));
  const double ct = x.z();
  const double sxy = std::hypot(x.x(), x.y());
  if (sxy < kPoleGuard)
    throw PoleProximity("vector harmonics evaluated too close to a pole");
  const double cphi = x.x() / sxy;
  const double sphi = x.y() / sxy;
  const Vec3 e_theta{ct * cphi, ct * sphi, -sxy};
  const Vec3 e_phi{-sphi, cphi, 0.0};

  std::vector<double> pbar(tri(L_, L_) + 1), dpbar(tri(L_, L_) + 1);
  eval_assoc(ct, sxy, pbar, dpbar, true);

  const double sqrt2 = std::numbers::sqrt2;
  const double inv_sxy = 1.0 / sxy;
  double cm = 1.0, sm = 0.0;
  for (int m = 0; m <= L_; ++m) {
    if (m > 0) {
      const double c = cm * cphi - sm * sphi;
      sm = sm * cphi + cm * sphi;
      cm = c;
    }
    for (int l = std::max(m, 1); l <= L_; ++l) {
      const double lam = static_cast<double>(l) * (l + 1);
      const double inv_sqrt_lam = 1.0 / std::sqrt(lam);
      const double p = pbar[tri(l, m)];
      const double dp = dpbar[tri(l, m)];
      // For each k: z = (dY/dtheta e_theta + dY/dphi/sin(theta) e_phi)/sqrt(lam),
      //             y = x cross z.
      auto emit = [&](int k, double val, double dtheta, double dphi) {
        Y[idx(l, k)] = val;
        const double zt = dtheta * inv_sqrt_lam;
        const double zp = dphi * inv_sxy * inv_sqrt_lam;
        zv[idx(l, k)] = zt * e_theta + zp * e_phi;
        yv[idx(l, k)] = zt * e_phi - zp * e_theta;
      };
      if (m == 0) {
        emit(l + 1, p, dp, 0.0);
      } else {
        emit(l + 1 + m, sqrt2 * p * cm, sqrt2 * dp * cm, -m * sqrt2 * p * sm);
        emit(l + 1 - m, sqrt2 * p * sm, sqrt2 * dp * sm, m * sqrt2 * p * cm);
      }
    }
    // l = 0 scalar entry
    if (m == 0) Y[idx(0, 1)] = pbar[tri(0, 0)];
  }
}

double real_sph_harm(int l, int k, const UnitVector3& x) {
  if (l < 0 || k < 1 || k > 2 * l + 1)
    throw IndexError("real_sph_harm: index k out of range");
  HarmonicBasis basis(l);
  std::vector<double> Y(HarmonicBasis::table_size(l));
  basis.eval_scalar(x, Y);
  return Y[HarmonicBasis::idx(l, k)];
}

VecHarmPair vec_sph_harms(int l, int k, const UnitVector3& x) {
  if (l < 1 || k < 1 || k > 2 * l + 1)
    throw IndexError("vec_sph_harms: degree or index out of range");
  HarmonicBasis basis(l);
  std::vector<double> Y(HarmonicBasis::table_size(l));
  std::vector<Vec3> yv(HarmonicBasis::table_size(l)),
      zv(HarmonicBasis::table_size(l));
  basis.eval_all(x, Y, yv, zv);
  return {yv[HarmonicBasis::idx(l, k)], zv[HarmonicBasis::idx(l, k)]};
}

}  // namespace sphqi
