#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "sphqi/errors.hpp"

namespace sphqi {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double squared_norm(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// A point on the unit sphere, doubling as the outward normal there.
// Unit norm is guaranteed at construction; `unchecked` is for callers that
// produce exactly normalized coordinates themselves.
class UnitVector3 {
 public:
  UnitVector3() : v_{0.0, 0.0, 1.0} {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

  static UnitVector3 unchecked(const Vec3& v) { return UnitVector3(v); }

 private:
  explicit UnitVector3(const Vec3& v) : v_(v) {}
  Vec3 v_;
  friend UnitVector3 normalize(const Vec3&);
};

inline UnitVector3 normalize(const Vec3& v) {
  const double n = norm(v);
  if (n <= 1e-14) throw ZeroVector("cannot normalize a (near-)zero vector");
  return UnitVector3(Vec3{v.x / n, v.y / n, v.z / n});
}

struct TangentVector {
  UnitVector3 base;
  Vec3 v;

  double tangency_defect() const { return std::abs(dot(base.vec(), v)); }
};

// Real 3x3 matrix, row-major.
struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[static_cast<size_t>(3 * r + c)]; }
  double operator()(int r, int c) const {
    return m[static_cast<size_t>(3 * r + c)];
  }

  static Mat3 zero() { return {}; }
  static Mat3 identity() {
    Mat3 a;
    a.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return a;
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat3& operator*=(double s) {
    for (double& v : m) v *= s;
    return *this;
  }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
inline Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
inline Mat3 operator*(double s, Mat3 a) { return a *= s; }
inline Mat3 operator*(Mat3 a, double s) { return a *= s; }

inline Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a.m[0] * v.x + a.m[1] * v.y + a.m[2] * v.z,
          a.m[3] * v.x + a.m[4] * v.y + a.m[5] * v.z,
          a.m[6] * v.x + a.m[7] * v.y + a.m[8] * v.z};
}

inline Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  r.m = {a.x * b.x, a.x * b.y, a.x * b.z, a.y * b.x, a.y * b.y,
         a.y * b.z, a.z * b.x, a.z * b.y, a.z * b.z};
  return r;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

inline double max_abs(const Mat3& a) {
  double r = 0.0;
  for (double v : a.m) r = std::max(r, std::abs(v));
  return r;
}

inline double frobenius_norm(const Mat3& a) {
  double s = 0.0;
  for (double v : a.m) s += v * v;
  return std::sqrt(s);
}

// Eigenvalues of a symmetric 3x3 matrix, descending, by the standard
// trigonometric closed form.
inline std::array<double, 3> sym_eigenvalues(const Mat3& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  std::array<double, 3> eig{};
  if (p1 == 0.0) {
    eig = {a(0, 0), a(1, 1), a(2, 2)};
  } else {
    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) +
                      (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b = a;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    b *= (1.0 / p);
    const double detb =
        b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = detb / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    eig[0] = q + 2.0 * p * std::cos(phi);
    eig[2] = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    eig[1] = 3.0 * q - eig[0] - eig[2];
  }
  if (eig[0] < eig[1]) std::swap(eig[0], eig[1]);
  if (eig[1] < eig[2]) std::swap(eig[1], eig[2]);
  if (eig[0] < eig[1]) std::swap(eig[0], eig[1]);
  return eig;
}

// Singular values, descending.
inline std::array<double, 3> singular_values(const Mat3& a) {
  const Mat3 ata = matmul(transpose(a), a);
  auto eig = sym_eigenvalues(ata);
  for (double& e : eig) e = std::sqrt(std::max(e, 0.0));
  return eig;
}

inline double spectral_norm(const Mat3& a) { return singular_values(a)[0]; }

// Orthonormal frame {e1, e2, base}, right-handed: e1 x e2 = base.
struct TangentFrame {
  UnitVector3 base;
  Vec3 e1, e2;
};

// Deterministic frame via the smallest-component axis trick.  Continuous
// except on the seam where the argmin of |x_i| switches between coordinates.
inline TangentFrame tangent_frame(const UnitVector3& x) {
  const Vec3& v = x.vec();
  const double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
  Vec3 axis{0, 0, 0};
  if (ax <= ay && ax <= az) {
    axis.x = 1.0;
  } else if (ay <= az) {
    axis.y = 1.0;
  } else {
    axis.z = 1.0;
  }
  const Vec3 c = cross(axis, v);
  const double cn = norm(c);  // >= sqrt(2/3), never degenerate
  const Vec3 e1 = (1.0 / cn) * c;
  const Vec3 e2 = cross(v, e1);
  return TangentFrame{x, e1, e2};
}

// First-order tensors of the kernel construction, with the stable
// (1-t^2)-scaled variants.  The scaling denominator is |x cross y|^2, which
// equals 1-t^2 and keeps the spectral norms of Qt and Vt at one.
struct ZonalTensors {
  Mat3 Q, R, V, W, Qt, Vt;
  double t = 0.0;
};

inline constexpr double kPoleEps = 1e-12;  // threshold on 1-t^2 for Qt, Vt

inline ZonalTensors zonal_tensors(const UnitVector3& xu,
                                  const UnitVector3& yu) {
  const Vec3& x = xu.vec();
  const Vec3& y = yu.vec();
  ZonalTensors zt;
  const double t = dot(x, y);
  zt.t = t;
  const Vec3 u = cross(x, y);
  const double uu = dot(u, u);
  zt.Q = -1.0 * outer(u, u);
  zt.R = t * Mat3::identity() - outer(y, x);
  zt.V = outer(y - t * x, x - t * y);
  zt.W = Mat3::identity() - outer(x, x) - outer(y, y) + t * outer(x, y);
  if (uu < kPoleEps) {
    zt.Qt = Mat3::zero();
    zt.Vt = Mat3::zero();
  } else {
    zt.Qt = (1.0 / uu) * zt.Q;
    zt.Vt = (1.0 / uu) * zt.V;
  }
  return zt;
}

}  // namespace sphqi
