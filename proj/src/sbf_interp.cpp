#include "sphqi/sbf_interp.hpp"

#include <omp.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>

#include "sphqi/errors.hpp"
#include "sphqi/matrix_kernel.hpp"

namespace sphqi {

namespace {

using MatMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                   Eigen::Dynamic,
                                                   Eigen::RowMajor>>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

std::vector<double> project_rhs(const InterpSystem& sys,
                                const VectorFieldSamples& samples) {
  const int N = sys.nodes.size();
  std::vector<double> d(static_cast<size_t>(2 * N));
  for (int i = 0; i < N; ++i) {
    const auto& fr = sys.frames[static_cast<size_t>(i)];
    d[static_cast<size_t>(2 * i)] = dot(fr.e1, samples.values[static_cast<size_t>(i)]);
    d[static_cast<size_t>(2 * i + 1)] =
        dot(fr.e2, samples.values[static_cast<size_t>(i)]);
  }
  return d;
}

}  // namespace

InterpSystem assemble(const ZonalKernel& kernel,
                      const VectorFieldSamples& samples) {
  InterpSystem sys;
  sys.kernel = kernel;
  sys.nodes = samples.points;
  const int N = sys.nodes.size();
  sys.frames.reserve(static_cast<size_t>(N));
  for (const auto& node : sys.nodes.nodes)
    sys.frames.push_back(tangent_frame(node));
  const size_t dim = static_cast<size_t>(2 * N);
  sys.matrix.assign(dim * dim, 0.0);
  const CompiledKernel ck(kernel);

#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      const ZonalTensors zt =
          zonal_tensors(sys.nodes.nodes[static_cast<size_t>(i)],
                        sys.nodes.nodes[static_cast<size_t>(j)]);
      const ScalarKernelValues v = ck.at(zt.t);
      const Mat3 combined =
          v.cq * (zt.Qt + zt.Vt) + v.kappa * (zt.R + zt.W);
      const auto& fi = sys.frames[static_cast<size_t>(i)];
      const auto& fj = sys.frames[static_cast<size_t>(j)];
      const Vec3 ce1 = combined * fj.e1;
      const Vec3 ce2 = combined * fj.e2;
      const double a11 = dot(fi.e1, ce1), a12 = dot(fi.e1, ce2);
      const double a21 = dot(fi.e2, ce1), a22 = dot(fi.e2, ce2);
      const size_t r0 = static_cast<size_t>(2 * i), c0 = static_cast<size_t>(2 * j);
      sys.matrix[r0 * dim + c0] = a11;
      sys.matrix[r0 * dim + c0 + 1] = a12;
      sys.matrix[(r0 + 1) * dim + c0] = a21;
      sys.matrix[(r0 + 1) * dim + c0 + 1] = a22;
      if (j > i) {
        sys.matrix[c0 * dim + r0] = a11;
        sys.matrix[c0 * dim + r0 + 1] = a21;
        sys.matrix[(c0 + 1) * dim + r0] = a12;
        sys.matrix[(c0 + 1) * dim + r0 + 1] = a22;
      }
    }
  }
  sys.rhs = project_rhs(sys, samples);
  return sys;
}

void solve(InterpSystem& system) {
  const int n = system.dim();
  system.factor = system.matrix;
  {
    MatMap a(system.factor.data(), n, n);
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(a);
    if (llt.info() != Eigen::Success) {
      // One retry with a relative diagonal jitter.
      system.factor = system.matrix;
      double trace = 0.0;
      for (int i = 0; i < n; ++i)
        trace += system.matrix[static_cast<size_t>(i) * n + i];
      const double jitter = 1e-12 * trace / n;
      for (int i = 0; i < n; ++i)
        system.factor[static_cast<size_t>(i) * n + i] += jitter;
      MatMap aj(system.factor.data(), n, n);
      Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt2(aj);
      if (llt2.info() != Eigen::Success)
        throw NotSPD("interpolation matrix is not positive definite");
      system.jittered = true;
    }
  }
  // Lower triangle of `factor` now holds L.
  ConstMatMap lmat(system.factor.data(), n, n);
  ConstVecMap d(system.rhs.data(), n);
  Eigen::VectorXd c = lmat.triangularView<Eigen::Lower>().solve(d);
  lmat.triangularView<Eigen::Lower>().transpose().solveInPlace(c);
  system.coeffs.assign(c.data(), c.data() + n);
  system.solved = true;

  ConstMatMap a(system.matrix.data(), n, n);
  const double dn = d.norm();
  system.residual = dn > 0.0 ? (a * c - d).norm() / dn : 0.0;
}

void resolve(InterpSystem& system, const VectorFieldSamples& samples) {
  if (!system.solved) throw Error("resolve: system has no factorization");
  system.rhs = project_rhs(system, samples);
  const int n = system.dim();
  ConstMatMap lmat(system.factor.data(), n, n);
  ConstVecMap d(system.rhs.data(), n);
  Eigen::VectorXd c = lmat.triangularView<Eigen::Lower>().solve(d);
  lmat.triangularView<Eigen::Lower>().transpose().solveInPlace(c);
  system.coeffs.assign(c.data(), c.data() + n);
}

std::vector<Vec3> interp_eval(const InterpSystem& system,
                              std::span<const UnitVector3> eval_points) {
  if (!system.solved) throw Error("interp_eval: solve the system first");
  const int N = system.nodes.size();
  std::vector<Vec3> weights(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) {
    const auto& fr = system.frames[static_cast<size_t>(j)];
    weights[static_cast<size_t>(j)] =
        system.coeffs[static_cast<size_t>(2 * j)] * fr.e1 +
        system.coeffs[static_cast<size_t>(2 * j + 1)] * fr.e2;
  }
  const CompiledKernel ck(system.kernel);
  std::vector<Vec3> out(eval_points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(eval_points.size()); ++i) {
    const Vec3& x = eval_points[static_cast<size_t>(i)].vec();
    Vec3 s{};
    for (int j = 0; j < N; ++j) {
      const Vec3& xj = system.nodes.nodes[static_cast<size_t>(j)].vec();
      const Vec3& wj = weights[static_cast<size_t>(j)];
      const double t = dot(x, xj);
      const ScalarKernelValues v = ck.at(t);
      const double xw = dot(x, wj);
      // combined kernel applied to a tangent weight vector
      s += v.kappa * ((t + 1.0) * wj - xw * (xj + x));
      const Vec3 u = cross(x, xj);
      const double uu = dot(u, u);
      if (uu >= kPoleEps) {
        s += (-v.cq * dot(u, wj) / uu) * u;
        s += (v.cq * xw / uu) * (xj - t * x);
      }
    }
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

}  // namespace sphqi
