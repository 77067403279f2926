// Generator for symmetric (antipodal) spherical t-designs: node sets whose
// equal-weight rule integrates all spherical harmonics through degree t
// exactly.  Minimizes the quadrature residuals
//   R_{l,k} = (4pi/N) sum_j Y_{l,k}(x_j),  l even, 2 <= l <= t,
// over the free half of an antipodal set (odd degrees vanish by symmetry):
// first Barzilai-Borwein gradient descent, then Levenberg-Marquardt on
// tangent-frame coordinates down to machine-level residuals.

#include <CLI11.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "sphqi/point_set.hpp"
#include "sphqi/sph_harmonics.hpp"

using namespace sphqi;

namespace {

struct ResidualWorkspace {
  int t, M, N;
  std::vector<int> degrees;  // even degrees 2..t
  size_t n_resid = 0;
  HarmonicBasis basis;
  std::vector<double> Y;
  std::vector<Vec3> yv, zv;

  ResidualWorkspace(int t_, int M_)
      : t(t_), M(M_), N(2 * M_), basis(t_) {
    for (int l = 2; l <= t; l += 2) degrees.push_back(l);
    for (const int l : degrees) n_resid += static_cast<size_t>(2 * l + 1);
    Y.resize(HarmonicBasis::table_size(t));
    yv.resize(HarmonicBasis::table_size(t));
    zv.resize(HarmonicBasis::table_size(t));
  }

  size_t resid_index(int l, int k) const {
    size_t base = 0;
    for (const int d : degrees) {
      if (d == l) return base + static_cast<size_t>(k) - 1;
      base += static_cast<size_t>(2 * d + 1);
    }
    return base;
  }

  // Residuals and (optionally) the tangent gradient of F = 0.5 sum R^2.
  double eval(const std::vector<UnitVector3>& pts, std::vector<double>& R,
              std::vector<Vec3>* grad) {
    R.assign(n_resid, 0.0);
    const double w = 2.0 * kFourPi / N;  // antipodal pair weight
    // Accumulate residuals.
    for (const auto& p : pts) {
      basis.eval_all(p, Y, yv, zv);
      size_t r = 0;
      for (const int l : degrees)
        for (int k = 1; k <= 2 * l + 1; ++k)
          R[r++] += w * Y[HarmonicBasis::idx(l, k)];
    }
    double f = 0.0;
    for (const double v : R) f += 0.5 * v * v;
    if (grad) {
      grad->assign(pts.size(), Vec3{});
      for (size_t j = 0; j < pts.size(); ++j) {
        basis.eval_all(pts[j], Y, yv, zv);
        Vec3 g{};
        size_t r = 0;
        for (const int l : degrees) {
          const double sl = std::sqrt(l * (l + 1.0));
          for (int k = 1; k <= 2 * l + 1; ++k) {
            const double c = R[r++] * w * sl;
            g += c * zv[HarmonicBasis::idx(l, k)];
          }
        }
        (*grad)[j] = g;
      }
    }
    return f;
  }
};

std::vector<UnitVector3> start_points(int M, unsigned seed) {
  const PointSet fib = fibonacci_points(2 * M);
  std::vector<UnitVector3> pts;
  for (const auto& p : fib.nodes)
    if (p.z() > 0.0) pts.push_back(p);
  // jitter to break lattice symmetries
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 0.25 / std::sqrt(2.0 * M));
  for (auto& p : pts) {
    const TangentFrame fr = tangent_frame(p);
    p = normalize(p.vec() + g(gen) * fr.e1 + g(gen) * fr.e2);
  }
  if (static_cast<int>(pts.size()) != M) {
    std::fprintf(stderr, "internal: hemisphere count %zu != M=%d\n",
                 pts.size(), M);
    std::exit(1);
  }
  return pts;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Barzilai-Borwein descent with a halving safeguard.
void bb_descent(ResidualWorkspace& ws, std::vector<UnitVector3>& pts,
                int max_iter) {
  std::vector<double> R;
  std::vector<Vec3> grad, grad_prev, step_prev;
  double f = ws.eval(pts, R, &grad);
  double alpha = 1e-2;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<UnitVector3> trial(pts.size());
    double fa = 0.0;
    std::vector<Vec3> gtrial;
    double a = alpha;
    for (int half = 0; half < 30; ++half) {
      for (size_t j = 0; j < pts.size(); ++j)
        trial[j] = normalize(pts[j].vec() - a * grad[j]);
      fa = ws.eval(trial, R, &gtrial);
      if (fa <= f) break;
      a *= 0.5;
    }
    // BB step from the accepted move
    step_prev.resize(pts.size());
    for (size_t j = 0; j < pts.size(); ++j)
      step_prev[j] = trial[j].vec() - pts[j].vec();
    grad_prev = grad;
    pts.swap(trial);
    f = fa;
    grad = gtrial;
    double ss = 0.0, sy = 0.0;
    for (size_t j = 0; j < pts.size(); ++j) {
      const Vec3 y = grad[j] - grad_prev[j];
      ss += dot(step_prev[j], step_prev[j]);
      sy += dot(step_prev[j], y);
    }
    alpha = (sy > 0.0) ? std::clamp(ss / sy, 1e-6, 1e3) : 1e-2;
    if (it % 200 == 0)
      std::fprintf(stderr, "  bb %5d  F=%.6e  max|R|=%.3e\n", it, f,
                   max_abs(R));
    if (max_abs(R) < 1e-10) break;
  }
}

// Levenberg-Marquardt on tangent-frame coordinates.
bool lm_polish(ResidualWorkspace& ws, std::vector<UnitVector3>& pts,
               int max_iter, double target) {
  const int M = static_cast<int>(pts.size());
  const size_t nr = ws.n_resid;
  const int nv = 2 * M;
  Eigen::MatrixXd J(static_cast<Eigen::Index>(nr), nv);
  std::vector<double> R;
  ws.eval(pts, R, nullptr);
  double mu = 1e-8;
  for (int it = 0; it < max_iter; ++it) {
    const double w = 2.0 * kFourPi / ws.N;
    std::vector<TangentFrame> frames(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
      frames[static_cast<size_t>(j)] = tangent_frame(pts[static_cast<size_t>(j)]);
      ws.basis.eval_all(pts[static_cast<size_t>(j)], ws.Y, ws.yv, ws.zv);
      size_t r = 0;
      for (const int l : ws.degrees) {
        const double sl = std::sqrt(l * (l + 1.0));
        for (int k = 1; k <= 2 * l + 1; ++k) {
          const Vec3& z = ws.zv[HarmonicBasis::idx(l, k)];
          const double c = w * sl;
          J(static_cast<Eigen::Index>(r), 2 * j) =
              c * dot(z, frames[static_cast<size_t>(j)].e1);
          J(static_cast<Eigen::Index>(r), 2 * j + 1) =
              c * dot(z, frames[static_cast<size_t>(j)].e2);
          ++r;
        }
      }
    }
    const Eigen::Map<const Eigen::VectorXd> rv(R.data(),
                                               static_cast<Eigen::Index>(nr));
    const Eigen::MatrixXd jtj = J.transpose() * J;
    const Eigen::VectorXd jtr = J.transpose() * rv;
    double f = 0.5 * rv.squaredNorm();
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd A = jtj;
      A.diagonal().array() += mu;
      const Eigen::VectorXd delta = A.ldlt().solve(-jtr);
      std::vector<UnitVector3> trial(pts.size());
      for (int j = 0; j < M; ++j)
        trial[static_cast<size_t>(j)] = normalize(
            pts[static_cast<size_t>(j)].vec() +
            delta[2 * j] * frames[static_cast<size_t>(j)].e1 +
            delta[2 * j + 1] * frames[static_cast<size_t>(j)].e2);
      std::vector<double> Rt;
      const double ft = ws.eval(trial, Rt, nullptr);
      if (ft < f) {
        pts.swap(trial);
        R.swap(Rt);
        f = ft;
        mu = std::max(mu * 0.25, 1e-14);
        break;
      }
      mu *= 8.0;
    }
    const double mr = max_abs(R);
    std::fprintf(stderr, "  lm %3d  F=%.6e  max|R|=%.3e  mu=%.1e\n", it,
                 f, mr, mu);
    if (mr < target) return true;
  }
  return max_abs(R) < target;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric spherical t-design generator"};
  int t = 53, N = 1434, bb_iters = 4000, lm_iters = 60;
  unsigned seed = 1;
  double target = 1e-13;
  std::string out;
  app.add_option("-t,--strength", t, "design strength")->required();
  app.add_option("-N,--count", N, "node count (even)")->required();
  app.add_option("--seed", seed, "start-configuration seed");
  app.add_option("--bb-iters", bb_iters, "max gradient-descent iterations");
  app.add_option("--lm-iters", lm_iters, "max Levenberg-Marquardt iterations");
  app.add_option("--target", target, "max |residual| to accept");
  app.add_option("-o,--output", out, "output file")->required();
  CLI11_PARSE(app, argc, argv);

  if (N % 2 != 0) {
    std::fprintf(stderr, "N must be even for an antipodal set\n");
    return 2;
  }
  const int M = N / 2;
  ResidualWorkspace ws(t, M);
  std::fprintf(stderr, "t=%d N=%d: %zu residuals, %d variables\n", t, N,
               ws.n_resid, 2 * M);
  std::vector<UnitVector3> pts = start_points(M, seed);

  bb_descent(ws, pts, bb_iters);
  const bool ok = lm_polish(ws, pts, lm_iters, target);
  std::vector<double> R;
  ws.eval(pts, R, nullptr);
  std::fprintf(stderr, "final max|R| = %.3e (%s)\n", max_abs(R),
               ok ? "accepted" : "NOT converged");
  if (!ok) return 1;

  PointSet psout;
  psout.nodes.reserve(static_cast<size_t>(N));
  for (const auto& p : pts) psout.nodes.push_back(p);
  for (const auto& p : pts)
    psout.nodes.push_back(UnitVector3::unchecked(-1.0 * p.vec()));
  save_points(psout, out);
  std::fprintf(stderr, "wrote %d nodes to %s\n", N, out.c_str());
  return 0;
}
