#include "sphqi/quasi_interp.hpp"

#include <omp.h>

#include <cmath>

#include "sphqi/legendre.hpp"

namespace sphqi {

double VectorFieldSamples::max_tangency_defect() const {
  double d = 0.0;
  for (size_t i = 0; i < values.size(); ++i)
    d = std::max(d, std::abs(dot(points.nodes[i].vec(), values[i])));
  return d;
}

namespace {

struct Acc {
  Vec3 div{}, curl{};

  Acc& operator+=(const Acc& o) {
    div += o.div;
    curl += o.curl;
    return *this;
  }
};

// One kernel application Psi^{div/curl}(x, x_j) g_j expanded in vector
// algebra; g_j is the tangential part of the datum (the kernels annihilate
// the node-normal component, so projecting once up front is exact).
template <class KernelFn>
inline Acc pair_term(const KernelFn& kf, const Vec3& x, const Vec3& xj,
                     const Vec3& gj) {
  const double t = dot(x, xj);
  const auto [kappa, cq] = kf(t);
  const double xg = dot(x, gj);
  Acc a;
  a.div = kappa * (t * gj - xg * xj);
  a.curl = kappa * (gj - xg * x);
  const Vec3 u = cross(x, xj);
  const double uu = dot(u, u);
  if (uu >= kPoleEps) {
    a.div += (-cq * dot(u, gj) / uu) * u;
    a.curl += (cq * xg / uu) * (xj - t * x);
  }
  return a;
}

// Deterministic pairwise (tree) reduction over the node range.
template <class KernelFn>
Acc pairwise_sum(const KernelFn& kf, const Vec3& x,
                 std::span<const UnitVector3> nodes, std::span<const Vec3> g,
                 size_t lo, size_t hi) {
  if (hi - lo <= 64) {
    Acc a;
    for (size_t j = lo; j < hi; ++j)
      a += pair_term(kf, x, nodes[j].vec(), g[j]);
    return a;
  }
  const size_t mid = lo + (hi - lo) / 2;
  Acc a = pairwise_sum(kf, x, nodes, g, lo, mid);
  a += pairwise_sum(kf, x, nodes, g, mid, hi);
  return a;
}

std::vector<Vec3> tangential_data(const VectorFieldSamples& s) {
  std::vector<Vec3> g(s.values.size());
  for (size_t j = 0; j < g.size(); ++j) {
    const Vec3& n = s.points.nodes[j].vec();
    g[j] = s.values[j] - dot(n, s.values[j]) * n;
  }
  return g;
}

struct KappaCq {
  double kappa, cq;
};

template <class KernelFn>
DecompositionResult decompose_impl(const KernelFn& kf,
                                   const VectorFieldSamples& samples,
                                   std::span<const UnitVector3> evals) {
  const std::vector<Vec3> g = tangential_data(samples);
  const size_t N = g.size();
  const double w = samples.points.weight();
  DecompositionResult res;
  res.eval_points.assign(evals.begin(), evals.end());
  const size_t M = evals.size();
  res.div.resize(M);
  res.curl.resize(M);
  res.combined.resize(M);
  std::uint64_t pairs = 0;
#pragma omp parallel for schedule(static) reduction(+ : pairs)
  for (long i = 0; i < static_cast<long>(M); ++i) {
    const auto ui = static_cast<size_t>(i);
    const Acc a =
        pairwise_sum(kf, evals[ui].vec(), samples.points.nodes, g, 0, N);
    res.div[ui] = w * a.div;
    res.curl[ui] = w * a.curl;
    res.combined[ui] = res.div[ui] + res.curl[ui];
    pairs += N;
  }
  res.pair_evaluations = pairs;
  return res;
}

}  // namespace

std::pair<Vec3, Vec3> qi_eval_point(const ZonalKernel& kernel,
                                    const VectorFieldSamples& samples,
                                    const UnitVector3& x) {
  const CompiledKernel ck(kernel);
  const auto kf = [&ck](double t) {
    const ScalarKernelValues v = ck.at(t);
    return KappaCq{v.kappa, v.cq};
  };
  const std::vector<Vec3> g = tangential_data(samples);
  const Acc a =
      pairwise_sum(kf, x.vec(), samples.points.nodes, g, 0, g.size());
  const double w = samples.points.weight();
  return {w * a.div, w * a.curl};
}

DecompositionResult qi_decompose(const ZonalKernel& kernel,
                                 const VectorFieldSamples& samples,
                                 std::span<const UnitVector3> eval_points) {
  const CompiledKernel ck(kernel);
  const auto kf = [&ck](double t) {
    const ScalarKernelValues v = ck.at(t);
    return KappaCq{v.kappa, v.cq};
  };
  return decompose_impl(kf, samples, eval_points);
}

DecompositionResult qi_decompose_series(const FourierCoeffs& coeffs,
                                        const VectorFieldSamples& samples,
                                        std::span<const UnitVector3> evals) {
  const int L = coeffs.max_degree();
  const auto kf = [&coeffs, L](double t) {
    // kappa and (1-t^2) kappa' of the truncated series via the Legendre
    // derivative sums; exact polynomial identities, no quadrature.
    std::vector<double> P(static_cast<size_t>(L) + 1),
        dP(static_cast<size_t>(L) + 1), ddP(static_cast<size_t>(L) + 1);
    legendre_all(L, t, P, dP);
    legendre_second(L, dP, ddP);
    double kap = 0.0, kpp = 0.0;
    for (int l = 1; l <= L; ++l) {
      const double w = (2.0 * l + 1.0) / (kFourPi * l * (l + 1.0)) *
                       coeffs.values[static_cast<size_t>(l)];
      kap += w * dP[static_cast<size_t>(l)];
      kpp += w * ddP[static_cast<size_t>(l)];
    }
    return KappaCq{kap, (1.0 - t) * (1.0 + t) * kpp};
  };
  return decompose_impl(kf, samples, evals);
}

}  // namespace sphqi
