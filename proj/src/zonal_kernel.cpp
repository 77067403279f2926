#include "sphqi/zonal_kernel.hpp"

#include <cmath>
#include <cstdio>

#include "sphqi/errors.hpp"
#include "sphqi/legendre.hpp"

namespace sphqi {

std::string family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::Poisson:
      return "poisson";
    case KernelFamily::Gaussian:
      return "gaussian";
    case KernelFamily::WE31:
      return "we31";
    case KernelFamily::WE32:
      return "we32";
  }
  return "?";
}

ZonalKernel ZonalKernel::base(KernelFamily f, double rho) {
  ZonalKernel k;
  k.family = f;
  k.rho = rho;
  k.order = (f == KernelFamily::Poisson) ? 1 : 2;
  k.components = {{1.0, rho}};
  return k;
}

std::string ZonalKernel::id() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_m%d_rho%.6g", family_name(family).c_str(),
                order, rho);
  return buf;
}

ZonalKernel make_combo(KernelFamily base, double rho,
                       std::span<const double> a_list) {
  if (base == KernelFamily::Poisson)
    throw DomainError("make_combo: Poisson is not a second-order base");
  const size_t K = a_list.size();
  for (size_t j = 0; j < K; ++j)
    for (size_t k = j + 1; k < K; ++k)
      if (std::abs(a_list[j] - a_list[k]) < 1e-12)
        throw DuplicateScale("make_combo: repeated scale in a_list");
  ZonalKernel k;
  k.family = base;
  k.rho = rho;
  k.order = 2 * static_cast<int>(K);
  k.components.reserve(K);
  for (size_t j = 0; j < K; ++j) {
    double c = 1.0;
    for (size_t i = 0; i < K; ++i)
      if (i != j) c *= a_list[i] / (a_list[i] - a_list[j]);
    k.components.push_back({c, std::sqrt(a_list[j]) * rho});
  }
  return k;
}

ZonalKernel make_kernel(KernelFamily family, int order, double rho) {
  switch (order) {
    case 1:
      if (family != KernelFamily::Poisson)
        throw DomainError("order 1 is the Poisson kernel");
      return ZonalKernel::base(family, rho);
    case 2:
      return ZonalKernel::base(family, rho);
    case 4: {
      const double a[] = {0.5, 2.0 / 3.0};
      return make_combo(family, rho, a);
    }
    case 6: {
      const double a[] = {1.0 / 3.0, 2.0 / 3.0, 1.0};
      return make_combo(family, rho, a);
    }
    case 8: {
      const double a[] = {0.25, 0.5, 0.75, 1.0};
      return make_combo(family, rho, a);
    }
    default:
      throw DomainError("unsupported kernel order");
  }
}

namespace {

constexpr double kInv4Pi = 1.0 / kFourPi;

// --- single-scale closed forms -------------------------------------------
//
// Each family is normalized so that the mean of psi_rho over the sphere is
// exactly one (hat-psi(0) = 1).  Poisson and the Wendland kernels have that
// built into their closed forms; the Gaussian needs the 1 - exp(-2/rho^2)
// factor, which only matters for rho around 0.5 and underflows to zero for
// small rho.

struct Gaussian {
  double rho, inv_r2, e2, norm_c;

  explicit Gaussian(double rho_)
      : rho(rho_),
        inv_r2(1.0 / (rho_ * rho_)),
        e2(std::exp(-2.0 * inv_r2)),
        norm_c(1.0 / (2.0 * kPi * rho_ * rho_ * (1.0 - e2))) {}

  double psi(double t) const { return norm_c * std::exp(-(1.0 - t) * inv_r2); }
  // beta(t) = (1+t) - 2 (E(t) - E2)/(1 - E2).  The subtraction only loses
  // relative precision within ~1e-6 of t = -1, which the Taylor patch covers.
  double beta(double t) const {
    const double et = std::exp(-(1.0 - t) * inv_r2);
    return (1.0 + t) - 2.0 * (et - e2) / (1.0 - e2);
  }
  double psi_deriv(double t) const { return psi(t) * inv_r2; }
};

struct Poisson {
  double alpha;

  explicit Poisson(double rho_) : alpha(1.0 - rho_) {}

  double dist(double t) const {
    return std::sqrt(1.0 - 2.0 * alpha * t + alpha * alpha);
  }
  double psi(double t) const {
    const double d = dist(t);
    return (1.0 - alpha * alpha) * kInv4Pi / (d * d * d);
  }
  double beta(double t) const {
    return (1.0 + alpha * t - (1.0 - alpha * alpha) / dist(t)) / alpha;
  }
  double psi_deriv(double t) const {
    const double d = dist(t);
    return 3.0 * alpha * (1.0 - alpha * alpha) * kInv4Pi / (d * d * d * d * d);
  }
};

struct WE31 {
  double rho, inv_r2;

  explicit WE31(double rho_) : rho(rho_), inv_r2(1.0 / (rho_ * rho_)) {}

  double r_of(double t) const { return std::sqrt(2.0 - 2.0 * t) / rho; }
  double psi(double t) const {
    const double r = r_of(t);
    if (r >= 1.0) return 0.0;
    const double q = 1.0 - r, q2 = q * q;
    return 7.0 * q2 * q2 * (4.0 * r + 1.0) * kInv4Pi * 4.0 * inv_r2;
  }
  double beta(double t) const {
    const double r = r_of(t);
    if (r >= 1.0) return 1.0 + t;
    const double q = 1.0 - r, q2 = q * q;
    return 1.0 + t - 2.0 * q2 * q2 * q * (8.0 * r * r + 5.0 * r + 1.0);
  }
  double psi_deriv(double t) const {
    const double r = r_of(t);
    if (r >= 1.0) return 0.0;
    const double q = 1.0 - r;
    return 140.0 * q * q * q * (inv_r2 * inv_r2) / kPi;
  }
};

struct WE32 {
  double rho, inv_r2;

  explicit WE32(double rho_) : rho(rho_), inv_r2(1.0 / (rho_ * rho_)) {}

  double r_of(double t) const { return std::sqrt(2.0 - 2.0 * t) / rho; }
  double psi(double t) const {
    const double r = r_of(t);
    if (r >= 1.0) return 0.0;
    const double q = 1.0 - r, q2 = q * q, q6 = q2 * q2 * q2;
    return 3.0 * q6 * (35.0 * r * r + 18.0 * r + 3.0) * inv_r2 / kPi;
  }
  double beta(double t) const {
    const double r = r_of(t);
    if (r >= 1.0) return 1.0 + t;
    const double q = 1.0 - r, q2 = q * q, q7 = q2 * q2 * q2 * q;
    return 1.0 + t -
           2.0 * q7 * (21.0 * r * r * r + 19.0 * r * r + 7.0 * r + 1.0);
  }
  double psi_deriv(double t) const {
    const double r = r_of(t);
    if (r >= 1.0) return 0.0;
    const double q = 1.0 - r, q2 = q * q;
    return 168.0 * q2 * q2 * q * (5.0 * r + 1.0) * (inv_r2 * inv_r2) / kPi;
  }
};

double psi_component(KernelFamily family, double rho, double t) {
  switch (family) {
    case KernelFamily::Poisson:
      return Poisson(rho).psi(t);
    case KernelFamily::Gaussian:
      return Gaussian(rho).psi(t);
    case KernelFamily::WE31:
      return WE31(rho).psi(t);
    case KernelFamily::WE32:
      return WE32(rho).psi(t);
  }
  return 0.0;
}

void check_domain(double t, const char* who) {
  if (std::abs(t) > 1.0 + 1e-12)
    throw DomainError(std::string(who) + ": t outside [-1, 1]");
}

}  // namespace

// Endpoint data: kappa(s) = s (4pi psi(s) - 1)/(8pi) for s = +-1 (L'Hopital
// on the 0/0 quotient of the closed forms), and kappa'(s) from
// differentiating the identity c_Q = (1-t^2) kappa' = 1/(4pi) - psi + 2t kappa.
CompiledKernel::CompiledKernel(const ZonalKernel& k) : family_(k.family) {
  comps_.reserve(k.components.size());
  for (const auto& kc : k.components) {
    Component c{};
    c.w = kc.weight;
    double psi_p1 = 0.0, psi_m1 = 0.0, dpsi_p1 = 0.0, dpsi_m1 = 0.0;
    switch (family_) {
      case KernelFamily::Gaussian: {
        const Gaussian g(kc.rho);
        c.p0 = g.inv_r2;
        c.p1 = g.norm_c;
        c.p2 = 2.0 / (1.0 - g.e2);
        c.p3 = g.e2;
        psi_p1 = g.psi(1.0);
        psi_m1 = g.psi(-1.0);
        dpsi_p1 = g.psi_deriv(1.0);
        dpsi_m1 = g.psi_deriv(-1.0);
        break;
      }
      case KernelFamily::Poisson: {
        const Poisson p(kc.rho);
        c.p0 = p.alpha;
        c.p1 = (1.0 - p.alpha * p.alpha) * kInv4Pi;
        c.p2 = 1.0 / p.alpha;
        psi_p1 = p.psi(1.0);
        psi_m1 = p.psi(-1.0);
        dpsi_p1 = p.psi_deriv(1.0);
        dpsi_m1 = p.psi_deriv(-1.0);
        break;
      }
      case KernelFamily::WE31: {
        const WE31 f(kc.rho);
        c.p0 = 1.0 / kc.rho;
        c.p1 = 7.0 * f.inv_r2 / kPi;
        psi_p1 = f.psi(1.0);
        psi_m1 = f.psi(-1.0);
        dpsi_p1 = f.psi_deriv(1.0);
        dpsi_m1 = f.psi_deriv(-1.0);
        break;
      }
      case KernelFamily::WE32: {
        const WE32 f(kc.rho);
        c.p0 = 1.0 / kc.rho;
        c.p1 = 3.0 * f.inv_r2 / kPi;
        psi_p1 = f.psi(1.0);
        psi_m1 = f.psi(-1.0);
        dpsi_p1 = f.psi_deriv(1.0);
        dpsi_m1 = f.psi_deriv(-1.0);
        break;
      }
    }
    c.kap_p1 = (kFourPi * psi_p1 - 1.0) / (8.0 * kPi);
    c.kap_m1 = (1.0 - kFourPi * psi_m1) / (8.0 * kPi);
    c.kp_p1 = (dpsi_p1 - 2.0 * c.kap_p1) / 4.0;
    c.kp_m1 = -(dpsi_m1 - 2.0 * c.kap_m1) / 4.0;
    comps_.push_back(c);
  }
}

ScalarKernelValues CompiledKernel::at(double t) const {
  const double one_mt2 = (1.0 - t) * (1.0 + t);
  ScalarKernelValues v{0.0, 0.0, 0.0};

  auto psi_at = [&](const Component& c) -> double {
    switch (family_) {
      case KernelFamily::Gaussian:
        return c.p1 * std::exp((t - 1.0) * c.p0);
      case KernelFamily::Poisson: {
        const double d2 = 1.0 - 2.0 * c.p0 * t + c.p0 * c.p0;
        const double d = std::sqrt(d2);
        return c.p1 / (d2 * d);
      }
      case KernelFamily::WE31: {
        const double r = std::sqrt(2.0 - 2.0 * t) * c.p0;
        if (r >= 1.0) return 0.0;
        const double q = 1.0 - r, q2 = q * q;
        return c.p1 * q2 * q2 * (4.0 * r + 1.0);
      }
      case KernelFamily::WE32: {
        const double r = std::sqrt(2.0 - 2.0 * t) * c.p0;
        if (r >= 1.0) return 0.0;
        const double q = 1.0 - r, q2 = q * q;
        return c.p1 * q2 * q2 * q2 * (35.0 * r * r + 18.0 * r + 3.0);
      }
    }
    return 0.0;
  };

  if (one_mt2 < kTaylorEps) {
    const bool endpoint = one_mt2 < kEndpointEps;
    const double s = t > 0.0 ? 1.0 : -1.0;
    for (const auto& c : comps_) {
      const double kap_s = s > 0.0 ? c.kap_p1 : c.kap_m1;
      const double kp_s = s > 0.0 ? c.kp_p1 : c.kp_m1;
      v.psi += c.w * psi_at(c);
      v.kappa += c.w * (endpoint ? kap_s : kap_s + (t - s) * kp_s);
      if (!endpoint) v.cq += c.w * one_mt2 * kp_s;
    }
    return v;
  }

  const double inv = 1.0 / (kFourPi * one_mt2);
  switch (family_) {
    case KernelFamily::Gaussian:
      for (const auto& c : comps_) {
        const double e = std::exp((t - 1.0) * c.p0);
        const double psi = c.p1 * e;
        const double kap = ((1.0 + t) - (e - c.p3) * c.p2) * inv;
        v.psi += c.w * psi;
        v.kappa += c.w * kap;
        v.cq += c.w * (kInv4Pi - psi + 2.0 * t * kap);
      }
      break;
    case KernelFamily::Poisson:
      for (const auto& c : comps_) {
        const double a = c.p0;
        const double d2 = 1.0 - 2.0 * a * t + a * a;
        const double d = std::sqrt(d2);
        const double psi = c.p1 / (d2 * d);
        const double kap =
            (1.0 + a * t - kFourPi * c.p1 / d) * c.p2 * inv;
        v.psi += c.w * psi;
        v.kappa += c.w * kap;
        v.cq += c.w * (kInv4Pi - psi + 2.0 * t * kap);
      }
      break;
    case KernelFamily::WE31:
      for (const auto& c : comps_) {
        const double r = std::sqrt(2.0 - 2.0 * t) * c.p0;
        double psi = 0.0, beta = 1.0 + t;
        if (r < 1.0) {
          const double q = 1.0 - r, q2 = q * q, q4 = q2 * q2;
          psi = c.p1 * q4 * (4.0 * r + 1.0);
          beta -= 2.0 * q4 * q * (8.0 * r * r + 5.0 * r + 1.0);
        }
        const double kap = beta * inv;
        v.psi += c.w * psi;
        v.kappa += c.w * kap;
        v.cq += c.w * (kInv4Pi - psi + 2.0 * t * kap);
      }
      break;
    case KernelFamily::WE32:
      for (const auto& c : comps_) {
        const double r = std::sqrt(2.0 - 2.0 * t) * c.p0;
        double psi = 0.0, beta = 1.0 + t;
        if (r < 1.0) {
          const double q = 1.0 - r, q2 = q * q, q6 = q2 * q2 * q2;
          psi = c.p1 * q6 * (35.0 * r * r + 18.0 * r + 3.0);
          beta -= 2.0 * q6 * q *
                  (21.0 * r * r * r + 19.0 * r * r + 7.0 * r + 1.0);
        }
        const double kap = beta * inv;
        v.psi += c.w * psi;
        v.kappa += c.w * kap;
        v.cq += c.w * (kInv4Pi - psi + 2.0 * t * kap);
      }
      break;
  }
  return v;
}

double psi_eval(const ZonalKernel& k, double t) {
  check_domain(t, "psi_eval");
  t = std::clamp(t, -1.0, 1.0);
  double s = 0.0;
  for (const auto& c : k.components)
    s += c.weight * psi_component(k.family, c.rho, t);
  return s;
}

ScalarKernelValues kernel_values(const ZonalKernel& k, double t) {
  t = std::clamp(t, -1.0, 1.0);
  return CompiledKernel(k).at(t);
}

double kappa_eval(const ZonalKernel& k, double t) {
  check_domain(t, "kappa_eval");
  return kernel_values(k, t).kappa;
}

double cq_eval(const ZonalKernel& k, double t) {
  return kernel_values(k, std::clamp(t, -1.0, 1.0)).cq;
}

FourierCoeffs fourier_coeffs(const ZonalKernel& k, int L, int n_quad) {
  if (n_quad <= 0) n_quad = std::max(512, 4 * L);
  const GaussLegendre gl = gauss_legendre(n_quad);
  FourierCoeffs fc;
  fc.kernel_id = k.id();
  fc.quad_nodes = n_quad;
  fc.values.assign(static_cast<size_t>(L) + 1, 0.0);
  std::vector<double> P(static_cast<size_t>(L) + 1),
      dP(static_cast<size_t>(L) + 1);
  for (int i = 0; i < n_quad; ++i) {
    const double t = gl.nodes[static_cast<size_t>(i)];
    const double wpsi = gl.weights[static_cast<size_t>(i)] * psi_eval(k, t);
    legendre_all(L, t, P, dP);
    for (int l = 0; l <= L; ++l)
      fc.values[static_cast<size_t>(l)] += wpsi * P[static_cast<size_t>(l)];
  }
  for (int l = 0; l <= L; ++l)
    fc.values[static_cast<size_t>(l)] *= 2.0 * kPi / (2.0 * l + 1.0);
  return fc;
}

}  // namespace sphqi
