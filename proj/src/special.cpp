#include "annealm/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace annealm {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvE = 0.36787944117144232160;
}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

double halley_w(double w, double x) {
  // Halley steps on w*exp(w) - x = 0.
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step = f / (ew * (w + 1.0) - 0.5 * (w + 2.0) * f / (w + 1.0));
    const double next = w - step;
    if (!std::isfinite(next)) break;
    w = next <= -1.0 ? -1.0 + 0.25 * (w + 1.0) : next;
    if (std::fabs(step) <= 1e-14 * (1.0 + std::fabs(w))) {
      const double ew2 = std::exp(w);
      w -= (w * ew2 - x) / (ew2 * (w + 1.0));
      return w;
    }
  }
  return w;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE)
    throw std::domain_error("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.32) {
    // branch-point expansion around x = -1/e
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    if (w <= -1.0) return -1.0;
  } else if (x < 2.0) {
    w = x < 0.0 ? x * (1.0 - x) : std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley_w(w, x);
}

double lambert_w0_from_log(double log_x) {
  if (std::isnan(log_x)) throw std::domain_error("lambert_w0_from_log: NaN");
  if (log_x < 36.0) return lambert_w0(std::exp(log_x));
  // Solve w + log w = log_x by Newton; w is large, convergence is fast.
  double w = log_x - std::log(log_x);
  for (int it = 0; it < 32; ++it) {
    const double step = (w + std::log(w) - log_x) * w / (w + 1.0);
    w -= step;
    if (std::fabs(step) <= 1e-14 * w) break;
  }
  return w;
}

}  // namespace annealm
