#pragma once

#include <vector>

namespace annealm {

/// Influence-function summary of the normal-type kernel at one (c, T).
struct InfluenceProfile {
  double c = 0.0;
  double temperature = 0.0;
  double normalization = 0.0;      // K(c, T)
  double max_influence_point = 0.0;  // argmax_r psi
  double gross_error_sensitivity = 0.0;
  double effective_rejection_point = 0.0;  // at the sweep threshold
  double asymptotic_variance = 0.0;
};

/// K(c, T) = 2 int_0^inf r psi(r; c, T) phi(r) dr by adaptive quadrature,
/// interval split at r = c, absolute tolerance 1e-9.
double influence_normalization(double c, double temperature);

/// Location of the maximum of psi, sqrt(2 T w + T) with
/// w = W0(exp(c^2/2T - 1/2) / 2); overflow-safe in the small-T regime.
double max_influence_point(double c, double temperature);

/// gamma* = max_r psi(r) / K = 2 sqrt(T) w / (K sqrt(2w + 1)).
double gross_error_sensitivity(double c, double temperature);

/// The unique r beyond the influence maximum with psi(r)/K = threshold,
/// bracketed root-finding to 1e-8. Requires threshold < gamma*.
double effective_rejection_point(double c, double temperature,
                                 double threshold);

/// Asymptotic variance at the standard normal model,
/// V = int psi^2 phi dr / K^2.
double asymptotic_variance(double c, double temperature);

/// Closed-form variance of the Welsch estimator at the standard normal,
/// (1+T)^3 / ((2+T)^{3/2} T^{3/2}); diverges as T -> 0.
double welsch_variance(double temperature);

InfluenceProfile influence_profile(double c, double temperature,
                                   double threshold);

/// Log-spaced grid between lo and hi, the given number of points per decade.
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

std::vector<InfluenceProfile> profile_sweep(
    const std::vector<double>& c_values,
    const std::vector<double>& temperatures, double threshold);

}  // namespace annealm
