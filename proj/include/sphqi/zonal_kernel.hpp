#pragma once

#include <span>
#include <string>
#include <vector>

#include "sphqi/geometry.hpp"

namespace sphqi {

enum class KernelFamily { Poisson, Gaussian, WE31, WE32 };

std::string family_name(KernelFamily f);

/// A scaled zonal kernel: a single Table-style family at scale rho, or a
/// linear combination of base kernels at scales sqrt(a_j) * rho with weights
/// summing to one (higher-order construction).
struct ZonalKernel {
  struct Component {
    double weight;
    double rho;
  };

  KernelFamily family = KernelFamily::Gaussian;
  double rho = 0.5;
  int order = 2;  // approximation order m (metadata)
  std::vector<Component> components;

  static ZonalKernel base(KernelFamily f, double rho);

  std::string id() const;
};

/// Higher-order kernel sum_j c_j psi_2(t; sqrt(a_j) rho) with
/// c_j = prod_{k != j} a_k / (a_k - a_j).  Base must be a second-order
/// family (Gaussian or Wendland).  Throws DuplicateScale on repeated a_j.
ZonalKernel make_combo(KernelFamily base, double rho,
                       std::span<const double> a_list);

/// Kernel order m -> scale set used by the experiments
/// (m=4: {1/2,2/3}; m=6: {1/3,2/3,1}; m=8: {1/4,1/2,3/4,1}).
ZonalKernel make_kernel(KernelFamily family, int order, double rho);

/// psi_rho(t).  DomainError outside [-1, 1].
double psi_eval(const ZonalKernel& k, double t);

/// Auxiliary function kappa(t); analytic endpoint limits within 1e-9 of
/// t = +-1 and a first-order Taylor patch within 1e-6 (the closed-form
/// quotients are 0/0 there).  DomainError outside [-1, 1].
double kappa_eval(const ZonalKernel& k, double t);

/// Stable coefficient c_Q(t) = 1/(4pi) - psi(t) + 2 t kappa(t)
/// = (1-t^2) kappa'(t); exactly zero at the endpoints.
double cq_eval(const ZonalKernel& k, double t);

struct ScalarKernelValues {
  double psi, kappa, cq;
};

/// Fused evaluation of all three scalars.
ScalarKernelValues kernel_values(const ZonalKernel& k, double t);

/// Evaluator with per-component constants and endpoint limits precomputed;
/// build once per summation loop.
class CompiledKernel {
 public:
  explicit CompiledKernel(const ZonalKernel& k);

  ScalarKernelValues at(double t) const;

 private:
  struct Component {
    double w;                         // combination weight
    double p0, p1, p2, p3;            // family-specific constants
    double kap_p1, kap_m1;            // kappa(+-1)
    double kp_p1, kp_m1;              // kappa'(+-1)
  };
  KernelFamily family_;
  std::vector<Component> comps_;
};

struct FourierCoeffs {
  std::string kernel_id;
  std::vector<double> values;  // hat-psi(l), l = 0..L
  int quad_nodes = 0;

  int max_degree() const { return static_cast<int>(values.size()) - 1; }
};

/// Fourier-Legendre coefficients hat-psi(l) = 2pi/(2l+1) Int psi P_l dt by
/// Gauss-Legendre quadrature; n_quad = 0 selects max(512, 4L).
FourierCoeffs fourier_coeffs(const ZonalKernel& k, int L, int n_quad = 0);

inline constexpr double kEndpointEps = 1e-9;  // |1-t^2| switch to limits
inline constexpr double kTaylorEps = 1e-6;    // |1-t^2| switch to 1st order

}  // namespace sphqi
