#include "annealm/scale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace annealm {

namespace {

double sorted_median(const std::vector<double>& v) {
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double median(std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("median: empty sample");
  std::vector<double> v(data.begin(), data.end());
  std::sort(v.begin(), v.end());
  return sorted_median(v);
}

double half_sample_mode(std::span<const double> data) {
  if (data.empty())
    throw std::invalid_argument("half_sample_mode: empty sample");
  std::vector<double> v(data.begin(), data.end());
  std::sort(v.begin(), v.end());
  while (v.size() > 2) {
    const std::size_t n = v.size();
    const std::size_t h = (n + 1) / 2;
    std::size_t best = 0;
    double best_range = v[h - 1] - v[0];
    for (std::size_t i = 1; i + h <= n; ++i) {
      const double range = v[i + h - 1] - v[i];
      if (range < best_range) {
        best_range = range;
        best = i;
      }
    }
    v.assign(v.begin() + best, v.begin() + best + h);
  }
  return v.size() == 1 ? v[0] : 0.5 * (v[0] + v[1]);
}

ScaleEstimate mad_about(std::span<const double> data, double center) {
  if (data.empty()) throw std::invalid_argument("mad_about: empty sample");
  std::vector<double> dev(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    dev[i] = std::fabs(data[i] - center);
  std::sort(dev.begin(), dev.end());
  const double raw = sorted_median(dev);
  return {raw, kMadConsistency * raw, center};
}

}  // namespace annealm
