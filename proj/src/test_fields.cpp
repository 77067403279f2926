#include "sphqi/test_fields.hpp"

#include <array>
#include <cmath>

#include "sphqi/sph_harmonics.hpp"

namespace sphqi {

namespace {

// Stream function s1 = -(1/sqrt(3)) Y_{1,0} + (8 sqrt(2)/(3 sqrt(385))) Y_{5,4}
// and potential v1 = (1/25) (Y_{4,0} + Y_{6,-3}), orders mapped to indices by
// k = l + 1 + m.  The surface curl/gradient of a degree-l harmonic is
// sqrt(l(l+1)) times the corresponding vector harmonic.
struct HarmonicTerm {
  int l, k;
  double coeff;
};

const double kS1C1 = -1.0 / std::sqrt(3.0);
const double kS1C5 = 8.0 * std::sqrt(2.0) / (3.0 * std::sqrt(385.0));

const std::array<HarmonicTerm, 2> kStreamTerms = {{{1, 2, kS1C1},
                                                   {5, 10, kS1C5}}};
const std::array<HarmonicTerm, 2> kPotentialTerms = {{{4, 5, 0.04},
                                                      {6, 4, 0.04}}};

Vec3 curl_part_field1(const UnitVector3& x) {
  Vec3 r{};
  for (const auto& term : kPotentialTerms) {
    const VecHarmPair vh = vec_sph_harms(term.l, term.k, x);
    r += term.coeff * std::sqrt(term.l * (term.l + 1.0)) * vh.z;
  }
  return r;
}

Vec3 div_part(const UnitVector3& x) {
  Vec3 r{};
  for (const auto& term : kStreamTerms) {
    const VecHarmPair vh = vec_sph_harms(term.l, term.k, x);
    r += term.coeff * std::sqrt(term.l * (term.l + 1.0)) * vh.y;
  }
  return r;
}

// Field 2 potential: B-spline bumps B3(a ||x - x_c||) at centers given in
// (colatitude, longitude).
struct Bump {
  double weight, a;
  Vec3 center;
};

Vec3 sph_point(double theta, double lambda) {
  return {std::sin(theta) * std::cos(lambda),
          std::sin(theta) * std::sin(lambda), std::cos(theta)};
}

const std::array<Bump, 4> kBumps = {{
    {1.0 / 8.0, 5.0, sph_point(kPi / 6.0, 0.0)},
    {-1.0 / 7.0, 3.0, sph_point(kPi / 5.0, -kPi / 7.0)},
    {1.0 / 9.0, 5.0, sph_point(-kPi / 6.0, kPi / 2.0)},
    {-1.0 / 8.0, 3.0, sph_point(-kPi / 5.0, kPi / 3.0)},
}};

// Surface gradient of g(x . x_c) is g'(t) (x_c - t x).  With
// g(t) = B3(a sqrt(2-2t)): g'(t) = -a B3'(a s)/s, s = sqrt(2-2t); the
// quotient is smooth through s = 0 since B3'(0) = 0.
double bump_radial_deriv(double a, double t) {
  const double s = std::sqrt(std::max(0.0, 2.0 - 2.0 * t));
  if (s < 1e-6) {
    // B3'(r)/r = -2 + 1.5 r for r in [0,1)
    return -a * a * (-2.0 + 1.5 * a * s);
  }
  return -a * cubic_bspline(a * s).second / s;
}

Vec3 curl_part_field2(const UnitVector3& x) {
  Vec3 r{};
  for (const auto& b : kBumps) {
    const double t = dot(x.vec(), b.center);
    const double gp = bump_radial_deriv(b.a, t);
    if (gp != 0.0) r += (b.weight * gp) * (b.center - t * x.vec());
  }
  return r;
}

}  // namespace

std::pair<double, double> cubic_bspline(double r) {
  if (r < 1.0) {
    const double v = (4.0 - 6.0 * r * r + 3.0 * r * r * r) / 6.0;
    const double d = r * (3.0 * r - 4.0) / 2.0;
    return {v, d};
  }
  if (r < 2.0) {
    const double q = 2.0 - r;
    return {q * q * q / 6.0, -q * q / 2.0};
  }
  return {0.0, 0.0};
}

FieldEval field1(const UnitVector3& x) {
  FieldEval e;
  e.div = div_part(x);
  e.curl = curl_part_field1(x);
  e.f = e.div + e.curl;
  return e;
}

FieldEval field2(const UnitVector3& x) {
  FieldEval e;
  e.div = div_part(x);
  e.curl = curl_part_field2(x);
  e.f = e.div + e.curl;
  return e;
}

FieldEval eval_field(FieldId id, const UnitVector3& x) {
  return id == FieldId::Field1 ? field1(x) : field2(x);
}

}  // namespace sphqi
