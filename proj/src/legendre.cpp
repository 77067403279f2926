#include "sphqi/legendre.hpp"

#include <cassert>
#include <cmath>

#include "sphqi/errors.hpp"
#include "sphqi/geometry.hpp"

namespace sphqi {

void legendre_all(int L, double t, std::span<double> P, std::span<double> dP) {
  if (std::abs(t) > 1.0 + 1e-12)
    throw DomainError("legendre_all: t outside [-1, 1]");
  t = std::clamp(t, -1.0, 1.0);
  assert(L >= 0 && P.size() >= static_cast<size_t>(L + 1) &&
         dP.size() >= static_cast<size_t>(L + 1));
  P[0] = 1.0;
  dP[0] = 0.0;
  if (L == 0) return;
  P[1] = t;
  dP[1] = 1.0;
  for (int l = 1; l < L; ++l) {
    P[l + 1] = ((2 * l + 1) * t * P[l] - l * P[l - 1]) / (l + 1);
    dP[l + 1] = dP[l - 1] + (2 * l + 1) * P[l];
  }
}

std::pair<std::vector<double>, std::vector<double>> legendre_all(int L,
                                                                 double t) {
  std::vector<double> P(static_cast<size_t>(L) + 1),
      dP(static_cast<size_t>(L) + 1);
  legendre_all(L, t, P, dP);
  return {std::move(P), std::move(dP)};
}

void legendre_second(int L, std::span<const double> dP,
                     std::span<double> ddP) {
  assert(dP.size() >= static_cast<size_t>(L + 1) &&
         ddP.size() >= static_cast<size_t>(L + 1));
  ddP[0] = 0.0;
  if (L == 0) return;
  ddP[1] = 0.0;
  for (int l = 1; l < L; ++l) ddP[l + 1] = ddP[l - 1] + (2 * l + 1) * dP[l];
}

namespace {

// P_n and P_n' at a single point, for the Newton iteration.
std::pair<double, double> legendre_value(int n, double t) {
  double pm1 = 1.0, p = t;
  if (n == 0) return {1.0, 0.0};
  for (int l = 1; l < n; ++l) {
    const double pp1 = ((2 * l + 1) * t * p - l * pm1) / (l + 1);
    pm1 = p;
    p = pp1;
  }
  const double dp = n * (t * p - pm1) / (t * t - 1.0);
  return {p, dp};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(static_cast<size_t>(n));
  gl.weights.resize(static_cast<size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_value(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        dp = legendre_value(n, x).second;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[static_cast<size_t>(i)] = -x;
    gl.weights[static_cast<size_t>(i)] = w;
    gl.nodes[static_cast<size_t>(n - 1 - i)] = x;
    gl.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return gl;
}

}  // namespace sphqi
