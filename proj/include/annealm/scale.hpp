#pragma once

#include <span>

namespace annealm {

/// Normal-consistency factor for the median absolute deviation.
inline constexpr double kMadConsistency = 1.4826;

struct ScaleEstimate {
  double raw = 0.0;         // median absolute deviation
  double consistent = 0.0;  // raw * kMadConsistency
  double center = 0.0;      // location the deviations were taken about
};

/// Median with the midpoint convention for even sizes.
double median(std::span<const double> data);

/// Half-sample mode: recursively shrink the sorted sample to its contiguous
/// ceil(n/2)-point window of smallest range (leftmost on ties) until at most
/// two points remain, then average them.
double half_sample_mode(std::span<const double> data);

/// Median absolute deviation about an arbitrary center.
ScaleEstimate mad_about(std::span<const double> data, double center);

}  // namespace annealm
