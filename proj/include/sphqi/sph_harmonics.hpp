#pragma once

#include <span>
#include <vector>

#include "sphqi/geometry.hpp"

namespace sphqi {

/// Orthonormal real spherical harmonic Y_{l,k}, k in 1..2l+1, with respect to
/// the surface measure (whole-sphere integral of Y^2 equals one).  The index
/// maps to the order as m = k - l - 1; no Condon-Shortley phase.
double real_sph_harm(int l, int k, const UnitVector3& x);

struct VecHarmPair {
  Vec3 y;  // divergence-free family, surface-curl based
  Vec3 z;  // curl-free family, surface-gradient based
};

/// Vector spherical harmonics y_{l,k} and z_{l,k}, l >= 1.  Evaluated in
/// spherical coordinates; throws PoleProximity within 1e-8 of a pole.
VecHarmPair vec_sph_harms(int l, int k, const UnitVector3& x);

/// Batch evaluator for all degrees up to L with precomputed recurrence
/// coefficients.  Tables are indexed by idx(l, k) = l^2 + k - 1.
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int L);

  int degree() const { return L_; }
  static size_t table_size(int L) {
    return static_cast<size_t>(L + 1) * static_cast<size_t>(L + 1);
  }
  static size_t idx(int l, int k) {
    return static_cast<size_t>(l) * l + static_cast<size_t>(k) - 1;
  }

  /// Scalar harmonics only; no pole restriction.
  void eval_scalar(const UnitVector3& x, std::span<double> Y) const;

  /// Scalar and vector harmonics (vector entries start at l = 1).
  /// Throws PoleProximity within 1e-8 of a pole.
  void eval_all(const UnitVector3& x, std::span<double> Y, std::span<Vec3> yv,
                std::span<Vec3> zv) const;

 private:
  void eval_assoc(double ct, double sxy, std::span<double> pbar,
                  std::span<double> dpbar_dtheta, bool with_deriv) const;

  int L_;
  // Triangular (l, m) tables of recurrence coefficients, m <= l.
  std::vector<double> a_, b_, c_;  // ascending-l recurrence and dtheta factor
  size_t tri(int l, int m) const {
    return static_cast<size_t>(l) * (l + 1) / 2 + static_cast<size_t>(m);
  }
};

inline constexpr double kPoleGuard = 1e-8;

}  // namespace sphqi
