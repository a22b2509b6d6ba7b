#include "annealm/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "annealm/special.hpp"

namespace annealm {

namespace {

// type-7 sample quantile (linear interpolation between order statistics)
double quantile(const std::vector<double>& sorted, double p) {
  const double idx = p * (sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(idx);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = idx - lo;
  return (1.0 - frac) * sorted[lo] + frac * sorted[lo + 1];
}

}  // namespace

double silverman_bandwidth(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("silverman_bandwidth: need n >= 2");
  double mean = 0.0;
  for (double x : data) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1));

  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);

  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0))
    throw std::invalid_argument("silverman_bandwidth: degenerate sample");
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

GaussianKde::GaussianKde(std::span<const double> data)
    : GaussianKde(data, silverman_bandwidth(data)) {}

GaussianKde::GaussianKde(std::span<const double> data, double bandwidth)
    : points_(data.begin(), data.end()), bandwidth_(bandwidth) {
  if (points_.empty()) throw std::invalid_argument("GaussianKde: empty data");
  if (!(bandwidth_ > 0.0))
    throw std::invalid_argument("GaussianKde: bandwidth must be positive");
}

double GaussianKde::operator()(double x) const {
  double sum = 0.0;
  for (double p : points_) sum += norm_pdf((x - p) / bandwidth_);
  return sum / (points_.size() * bandwidth_);
}

}  // namespace annealm
