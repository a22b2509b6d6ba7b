#include "annealm/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "annealm/quadrature.hpp"
#include "annealm/special.hpp"

namespace annealm {

namespace {

constexpr double kRhoQuadTol = 1e-12;

// log cosh(x) for x >= 0 without overflow
double log_cosh(double x) {
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

// log of the generator density up to a kind-dependent constant, evaluated
// at r/sqrt(T). Constants cancel in the weight ratio.
double log_generator_scaled(const EstimatorKernel& k, double r) {
  const double t = k.temperature;
  switch (k.kind) {
    case KernelKind::NType:
    case KernelKind::Welsch:
      return -0.5 * r * r / t;
    case KernelKind::HSType:
      return -log_cosh(std::fabs(r) * (std::numbers::pi / 2.0) / std::sqrt(t));
    case KernelKind::TNuType:
      return -0.5 * (k.nu + 1.0) * std::log1p(r * r / (t * (k.nu - 2.0)));
  }
  throw std::logic_error("unreachable kernel kind");
}

void check_residual(double r) {
  if (!std::isfinite(r))
    throw std::invalid_argument("kernel evaluation: residual not finite");
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::NType: return "ntype";
    case KernelKind::HSType: return "hstype";
    case KernelKind::TNuType: return "tnu";
    case KernelKind::Welsch: return "welsch";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "ntype") return KernelKind::NType;
  if (name == "hstype") return KernelKind::HSType;
  if (name == "tnu") return KernelKind::TNuType;
  if (name == "welsch") return KernelKind::Welsch;
  throw std::invalid_argument("unknown kernel kind: " + name);
}

EstimatorKernel EstimatorKernel::n_type(double cutoff, double temperature) {
  EstimatorKernel k{KernelKind::NType, cutoff, temperature, 3.0};
  k.validate();
  return k;
}

EstimatorKernel EstimatorKernel::hs_type(double cutoff, double temperature) {
  EstimatorKernel k{KernelKind::HSType, cutoff, temperature, 3.0};
  k.validate();
  return k;
}

EstimatorKernel EstimatorKernel::t_type(double nu, double cutoff,
                                        double temperature) {
  EstimatorKernel k{KernelKind::TNuType, cutoff, temperature, nu};
  k.validate();
  return k;
}

EstimatorKernel EstimatorKernel::welsch(double temperature) {
  EstimatorKernel k{KernelKind::Welsch, 2.5, temperature, 3.0};
  k.validate();
  return k;
}

void EstimatorKernel::validate() const {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw std::invalid_argument("kernel: cutoff must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("kernel: temperature must be positive");
  if (kind == KernelKind::TNuType && !(nu > 2.0))
    throw std::invalid_argument("kernel: t kernel needs nu > 2");
}

double weight(const EstimatorKernel& kernel, double r) {
  check_residual(r);
  kernel.validate();
  if (kernel.kind == KernelKind::Welsch)
    return std::exp(-0.5 * r * r / kernel.temperature);
  // w = 1 / (1 + f(c/sqrt(T))/f(r/sqrt(T))), formed in log space
  const double lr = log_generator_scaled(kernel, r);
  const double lc = log_generator_scaled(kernel, kernel.cutoff);
  return logistic(lr - lc);
}

double psi(const EstimatorKernel& kernel, double r) {
  return r * weight(kernel, r);
}

double rho(const EstimatorKernel& kernel, double r) {
  check_residual(r);
  kernel.validate();
  const double a = std::fabs(r);
  const double t = kernel.temperature;
  const double c = kernel.cutoff;

  switch (kernel.kind) {
    case KernelKind::NType: {
      // Two-branch stable form; every exponent is <= 0.
      const double log_num = std::log1p(std::exp(-c * c / (2.0 * t)));
      if (a < c)
        return 0.5 * a * a +
               t * (log_num - std::log1p(std::exp((a * a - c * c) / (2.0 * t))));
      return 0.5 * c * c +
             t * (log_num - std::log1p(std::exp((c * c - a * a) / (2.0 * t))));
    }
    case KernelKind::Welsch:
      return -t * std::expm1(-0.5 * a * a / t);
    case KernelKind::HSType:
    case KernelKind::TNuType: {
      if (a == 0.0) return 0.0;
      auto score = [&kernel](double s) { return psi(kernel, s); };
      if (a <= c) return integrate(score, 0.0, a, kRhoQuadTol);
      // split at the cutoff, where the integrand changes character at low T
      return integrate(score, 0.0, c, kRhoQuadTol) +
             integrate(score, c, a, kRhoQuadTol);
    }
  }
  throw std::logic_error("unreachable kernel kind");
}

KernelValue evaluate(const EstimatorKernel& kernel, double r) {
  const double w = weight(kernel, r);
  return {w, r * w, rho(kernel, r)};
}

double limit_weight(KernelKind kind, double cutoff, double r, double nu) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw std::invalid_argument("limit_weight: cutoff must be positive");
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::invalid_argument("limit_weight: r must be finite and >= 0");
  if (kind == KernelKind::TNuType) {
    if (!(nu > 2.0)) throw std::invalid_argument("limit_weight: nu > 2 required");
    if (r == 0.0) return 1.0;
    return logistic(-(nu + 1.0) * (std::log(r) - std::log(cutoff)));
  }
  if (r < cutoff) return 1.0;
  if (r > cutoff) return 0.0;
  return 0.5;
}

double generator_density(KernelKind kind, double r, double nu) {
  if (!std::isfinite(r))
    throw std::invalid_argument("generator_density: r not finite");
  switch (kind) {
    case KernelKind::NType:
    case KernelKind::Welsch:
      return norm_pdf(r);
    case KernelKind::HSType: {
      // 1/(2 cosh(pi r / 2)) = e^{-x} / (1 + e^{-2x}), x = pi|r|/2
      const double x = std::fabs(r) * std::numbers::pi / 2.0;
      return std::exp(-x) / (1.0 + std::exp(-2.0 * x));
    }
    case KernelKind::TNuType: {
      if (!(nu > 2.0))
        throw std::invalid_argument("generator_density: nu > 2 required");
      const double log_c = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                           0.5 * std::log(std::numbers::pi * (nu - 2.0));
      return std::exp(log_c - 0.5 * (nu + 1.0) * std::log1p(r * r / (nu - 2.0)));
    }
  }
  throw std::logic_error("unreachable kernel kind");
}

}  // namespace annealm
