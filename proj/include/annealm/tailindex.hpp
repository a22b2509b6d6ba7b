#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace annealm {

/// Pareto quantile plot: x_j = -log(j/(n+1)), y_j = log X_(n-j+1), ordered
/// by j (x strictly decreasing), with per-point scales of y from the
/// asymptotic order-statistic standard error and a kernel density estimate
/// of the log-sample. The largest half percent of the sample is discarded.
struct ParetoPlot {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd sigma;
  int sample_size = 0;  // n before discarding
};

struct HillEstimate {
  int k = 0;
  double inv_alpha = 0.0;
  double alpha = 0.0;
};

/// Hill estimator of 1/alpha from the top k order statistics. By default
/// the tail of |X| is analyzed; zeros are dropped.
HillEstimate hill(const Eigen::VectorXd& sample, int k,
                  bool absolute_values = true);

ParetoPlot pareto_plot(const Eigen::VectorXd& sample,
                       bool absolute_values = true);

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

inline constexpr std::uint64_t kLmsDefaultSeed = 744920;

/// Least-median-of-squares line through candidate point pairs: exhaustive
/// for up to 200 points, 3000 seeded random pairs beyond that.
Line lms_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              std::uint64_t seed = kLmsDefaultSeed);

enum class StopReason { WeightsCollapsed, Exhausted };

struct ForwardSearchConfig {
  int block = 10;                // points added per step
  double cutoff = 2.576;         // 99% quantile of chi^2_1
  double temperature = 1.0;
  double stop_fraction = 0.5;    // fraction of a new block below threshold
  double weight_ratio = 0.99;    // threshold = weight_ratio * w_max
  int max_inner_iterations = 100;
  double tol = 1e-8;
  std::uint64_t lms_seed = kLmsDefaultSeed;
};

struct ForwardSearchResult {
  double slope = 0.0;  // estimate of 1/alpha
  double intercept = 0.0;
  int n_included = 0;
  Eigen::VectorXd frozen_weights;
  StopReason stop_reason = StopReason::Exhausted;
};

/// Maximum N-type weight at T = 1, w(0; c, 1) = 1/(1+exp(-c^2/2)).
double max_weight(double cutoff);

/// Forward search over the Pareto quantile plot: N-type IRLS fit of the
/// largest points, then block-wise extension with frozen weights until the
/// incoming weights collapse. The triggering block is excluded.
ForwardSearchResult forward_search(const ParetoPlot& plot,
                                   const ForwardSearchConfig& config);

struct TailExperimentRow {
  double nu = 0.0;
  double p_opt = 0.0;       // oracle-optimal Hill proportion k/n
  double rmse_opt = 0.0;    // RMSE of the oracle-k Hill estimator
  double p_used_mean = 0.0; // mean proportion included by the search
  double p_used_sd = 0.0;
  double rmse_search = 0.0;
};

/// Replicated t-sample sweep: oracle-optimal Hill baseline against the
/// forward-search estimator, per degree-of-freedom value.
std::vector<TailExperimentRow> tail_experiment(
    const std::vector<double>& nu_grid, int n, int n_reps, std::uint64_t seed,
    const ForwardSearchConfig& fs_config = {});

}  // namespace annealm
