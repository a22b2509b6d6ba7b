#include "annealm/influence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "annealm/errors.hpp"
#include "annealm/kernels.hpp"
#include "annealm/quadrature.hpp"
#include "annealm/special.hpp"

namespace annealm {

namespace {

constexpr double kPieceTol = 1e-10;
constexpr double kTailTol = 1e-12;

void check_ct(double c, double t) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("influence: c must be positive");
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::invalid_argument("influence: temperature must be positive");
}

// 2 int_0^inf g(r) dr for integrands with Gaussian decay. The interval is
// split at the cutoff, then extended in doubling segments until a segment
// contributes less than kTailTol.
template <class G>
double half_line(G&& g, double c) {
  double total = integrate(g, 0.0, c, kPieceTol);
  double lo = c;
  double hi = c + 5.0;
  for (int seg = 0; seg < 64; ++seg) {
    const double part = integrate(g, lo, hi, kPieceTol);
    total += part;
    if (std::fabs(part) < kTailTol && seg > 0) break;
    lo = hi;
    hi = 2.0 * hi;
    if (lo > 50.0) break;  // phi underflows well before this
  }
  return 2.0 * total;
}

}  // namespace

double influence_normalization(double c, double temperature) {
  check_ct(c, temperature);
  const auto kernel = EstimatorKernel::n_type(c, temperature);
  auto integrand = [&kernel](double r) {
    return r * psi(kernel, r) * norm_pdf(r);
  };
  return half_line(integrand, c);
}

double max_influence_point(double c, double temperature) {
  check_ct(c, temperature);
  const double log_arg =
      c * c / (2.0 * temperature) - 0.5 - std::numbers::ln2;
  const double omega = lambert_w0_from_log(log_arg);
  return std::sqrt(temperature * (2.0 * omega + 1.0));
}

double gross_error_sensitivity(double c, double temperature) {
  check_ct(c, temperature);
  const double log_arg =
      c * c / (2.0 * temperature) - 0.5 - std::numbers::ln2;
  const double omega = lambert_w0_from_log(log_arg);
  const double peak =
      2.0 * std::sqrt(temperature) * omega / std::sqrt(2.0 * omega + 1.0);
  return peak / influence_normalization(c, temperature);
}

double effective_rejection_point(double c, double temperature,
                                 double threshold) {
  check_ct(c, temperature);
  if (!(threshold > 0.0))
    throw std::invalid_argument("effective_rejection_point: threshold <= 0");
  const double k = influence_normalization(c, temperature);
  const double gamma = gross_error_sensitivity(c, temperature);
  if (threshold >= gamma)
    throw std::invalid_argument(
        "effective_rejection_point: threshold above maximum influence");

  const auto kernel = EstimatorKernel::n_type(c, temperature);
  const double target = threshold * k;
  double lo = max_influence_point(c, temperature);
  double hi = lo + std::max(1.0, lo);
  int guard = 0;
  while (psi(kernel, hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200)
      throw NumericalError("effective_rejection_point: bracket not found");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (psi(kernel, mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-9 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

double asymptotic_variance(double c, double temperature) {
  check_ct(c, temperature);
  const auto kernel = EstimatorKernel::n_type(c, temperature);
  auto integrand = [&kernel](double r) {
    const double p = psi(kernel, r);
    return p * p * norm_pdf(r);
  };
  const double num = half_line(integrand, c);
  const double k = influence_normalization(c, temperature);
  return num / (k * k);
}

double welsch_variance(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("welsch_variance: temperature must be positive");
  const double t = temperature;
  return std::pow(1.0 + t, 3.0) / (std::pow(2.0 + t, 1.5) * std::pow(t, 1.5));
}

InfluenceProfile influence_profile(double c, double temperature,
                                   double threshold) {
  InfluenceProfile p;
  p.c = c;
  p.temperature = temperature;
  p.normalization = influence_normalization(c, temperature);
  p.max_influence_point = max_influence_point(c, temperature);
  p.gross_error_sensitivity = gross_error_sensitivity(c, temperature);
  p.effective_rejection_point =
      effective_rejection_point(c, temperature, threshold);
  p.asymptotic_variance = asymptotic_variance(c, temperature);
  return p;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || points_per_decade < 1)
    throw std::invalid_argument("log_grid: bad range");
  std::vector<double> grid;
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  const int n = static_cast<int>(std::round((lhi - llo) * points_per_decade));
  grid.reserve(n + 1);
  for (int i = 0; i <= n; ++i)
    grid.push_back(std::pow(10.0, llo + (lhi - llo) * i / std::max(n, 1)));
  return grid;
}

std::vector<InfluenceProfile> profile_sweep(
    const std::vector<double>& c_values,
    const std::vector<double>& temperatures, double threshold) {
  std::vector<InfluenceProfile> rows;
  rows.reserve(c_values.size() * temperatures.size());
  for (double c : c_values)
    for (double t : temperatures)
      rows.push_back(influence_profile(c, t, threshold));
  return rows;
}

}  // namespace annealm
