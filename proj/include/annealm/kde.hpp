#pragma once

#include <span>
#include <vector>

namespace annealm {

/// Silverman's rule of thumb, 0.9 min(sd, IQR/1.34) n^(-1/5).
double silverman_bandwidth(std::span<const double> data);

/// Gaussian kernel density estimate with a fixed bandwidth.
class GaussianKde {
 public:
  explicit GaussianKde(std::span<const double> data);
  GaussianKde(std::span<const double> data, double bandwidth);

  double bandwidth() const { return bandwidth_; }
  double operator()(double x) const;

 private:
  std::vector<double> points_;
  double bandwidth_;
};

}  // namespace annealm
