#pragma once

#include <string>

namespace annealm {

enum class KernelKind { NType, HSType, TNuType, Welsch };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// A redescending M-estimator kernel acting on standardized residuals.
///
/// The weight is built from a symmetric generator density f as
///   w(r; c, T) = f(r/sqrt(T)) / (f(r/sqrt(T)) + f(c/sqrt(T))),
/// with f the standard normal (NType), hyperbolic secant (HSType) or
/// standardized Student t with nu > 2 (TNuType). The Welsch kernel keeps
/// only the numerator, w(r; T) = exp(-r^2/2T); its cutoff field is carried
/// for interface uniformity and ignored.
struct EstimatorKernel {
  KernelKind kind = KernelKind::NType;
  double cutoff = 2.5;       // c, standardized-residual units
  double temperature = 1.0;  // T
  double nu = 3.0;           // degrees of freedom, TNuType only

  static EstimatorKernel n_type(double cutoff, double temperature);
  static EstimatorKernel hs_type(double cutoff, double temperature);
  static EstimatorKernel t_type(double nu, double cutoff, double temperature);
  static EstimatorKernel welsch(double temperature);

  void validate() const;
};

struct KernelValue {
  double w;
  double psi;
  double rho;
};

/// Weight w(r; c, T) in (0, 1]. Even in r, strictly decreasing in |r|.
/// Evaluated in log space, so no overflow for |r| up to 1e6 and T down
/// to 1e-8.
double weight(const EstimatorKernel& kernel, double r);

/// Score function psi(r) = r * w(r); odd in r.
double psi(const EstimatorKernel& kernel, double r);

/// Loss function rho(r) = int_0^r psi(s) ds, rho(0) = 0.
///
/// The NType case uses the two-branch closed form that stays finite for
/// any T >= 1e-8; Welsch has an elementary antiderivative; HSType and
/// TNuType integrate psi adaptively.
double rho(const EstimatorKernel& kernel, double r);

KernelValue evaluate(const EstimatorKernel& kernel, double r);

/// Zero-temperature weight limit: H(c - r) with H(0) = 1/2 for kernels
/// with rapidly varying generator (NType, HSType, Welsch class), and
/// c^(nu+1) / (c^(nu+1) + r^(nu+1)) for TNuType. Requires c > 0, r >= 0.
double limit_weight(KernelKind kind, double cutoff, double r, double nu = 3.0);

/// Standardized generator density f(r) of the kernel family (unit variance;
/// the Welsch kernel reports the standard normal it is built from).
double generator_density(KernelKind kind, double r, double nu = 3.0);

}  // namespace annealm
