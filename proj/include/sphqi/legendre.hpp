#pragma once

#include <span>
#include <utility>
#include <vector>

namespace sphqi {

/// Legendre polynomials P_0..P_L and their first derivatives at t,
/// normalized so P_l(1) = 1.  Three-term recurrence; valid on [-1, 1].
/// Throws DomainError if |t| > 1 + 1e-12.
void legendre_all(int L, double t, std::span<double> P, std::span<double> dP);

std::pair<std::vector<double>, std::vector<double>> legendre_all(int L,
                                                                 double t);

/// Second derivatives P_l'' from the derivative recurrence
/// P''_{l+1} = P''_{l-1} + (2l+1) P'_l (exact at the endpoints too).
void legendre_second(int L, std::span<const double> dP, std::span<double> ddP);

/// Gauss-Legendre rule on [-1, 1]: ascending nodes and weights.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

}  // namespace sphqi
