#pragma once

#include <stdexcept>
#include <string>

namespace annealm {

/// Thrown when an iterative or quadrature routine cannot reach its
/// accuracy target, or when a fit degenerates (all observations rejected,
/// rank-deficient design, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class RankDeficiencyError : public NumericalError {
 public:
  RankDeficiencyError(int deficient_columns, const std::string& what)
      : NumericalError(what), deficient_columns_(deficient_columns) {}
  int deficient_columns() const { return deficient_columns_; }

 private:
  int deficient_columns_;
};

}  // namespace annealm
