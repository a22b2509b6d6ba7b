#include "annealm/tailindex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "annealm/irls.hpp"
#include "annealm/kde.hpp"
#include "annealm/scale.hpp"

namespace annealm {

namespace {

std::vector<double> positive_values(const Eigen::VectorXd& sample,
                                    bool absolute_values) {
  std::vector<double> v;
  v.reserve(sample.size());
  for (Eigen::Index i = 0; i < sample.size(); ++i) {
    const double x = absolute_values ? std::fabs(sample[i]) : sample[i];
    if (x > 0.0 && std::isfinite(x)) v.push_back(x);
  }
  return v;
}

}  // namespace

HillEstimate hill(const Eigen::VectorXd& sample, int k, bool absolute_values) {
  std::vector<double> v = positive_values(sample, absolute_values);
  const int n = static_cast<int>(v.size());
  if (k < 1 || k >= n)
    throw std::invalid_argument("hill: need 1 <= k < n (positive part)");
  std::sort(v.begin(), v.end());
  const double log_base = std::log(v[n - k - 1]);  // X_(n-k)
  double sum = 0.0;
  for (int j = 1; j <= k; ++j) sum += std::log(v[n - j]) - log_base;
  HillEstimate est;
  est.k = k;
  est.inv_alpha = sum / k;
  est.alpha = est.inv_alpha > 0.0 ? 1.0 / est.inv_alpha
                                  : std::numeric_limits<double>::infinity();
  return est;
}

ParetoPlot pareto_plot(const Eigen::VectorXd& sample, bool absolute_values) {
  std::vector<double> v = positive_values(sample, absolute_values);
  const int n = static_cast<int>(v.size());
  if (n < 50)
    throw std::invalid_argument("pareto_plot: need at least 50 positive values");
  std::sort(v.begin(), v.end());

  std::vector<double> logs(v.size());
  for (int i = 0; i < n; ++i) logs[i] = std::log(v[i]);
  const GaussianKde density(logs);

  const int discard = static_cast<int>(std::ceil(0.005 * n));
  const int kept = n - discard;

  ParetoPlot plot;
  plot.sample_size = n;
  plot.x.resize(kept);
  plot.y.resize(kept);
  plot.sigma.resize(kept);
  for (int idx = 0; idx < kept; ++idx) {
    const int j = discard + idx + 1;  // plot index, 1-based
    const double p = 1.0 - static_cast<double>(j) / (n + 1);
    plot.x[idx] = -std::log(static_cast<double>(j) / (n + 1));
    plot.y[idx] = logs[n - j];  // log X_(n-j+1)
    const double g = std::max(density(plot.y[idx]), 1e-300);
    plot.sigma[idx] = std::sqrt(p * (1.0 - p) / n) / g;
  }
  return plot;
}

Line lms_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              std::uint64_t seed) {
  const Eigen::Index n = x.size();
  if (y.size() != n) throw std::invalid_argument("lms_line: size mismatch");
  if (n < 3) throw std::invalid_argument("lms_line: need at least 3 points");

  std::vector<double> sq(n);
  auto median_sq_residual = [&](double slope, double intercept) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = y[i] - (intercept + slope * x[i]);
      sq[i] = r * r;
    }
    return median(sq);
  };

  Line best;
  double best_med = std::numeric_limits<double>::infinity();
  auto consider = [&](Eigen::Index i, Eigen::Index j) {
    const double dx = x[j] - x[i];
    if (dx == 0.0) return;
    const double slope = (y[j] - y[i]) / dx;
    const double intercept = y[i] - slope * x[i];
    const double med = median_sq_residual(slope, intercept);
    if (med < best_med) {
      best_med = med;
      best = {slope, intercept};
    }
  };

  if (n <= 200) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) consider(i, j);
  } else {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    for (int s = 0; s < 3000; ++s) {
      const Eigen::Index i = pick(gen);
      Eigen::Index j = pick(gen);
      while (j == i) j = pick(gen);
      consider(i, j);
    }
  }
  if (!std::isfinite(best_med))
    throw std::invalid_argument("lms_line: no valid candidate pair");
  return best;
}

double max_weight(double cutoff) {
  return 1.0 / (1.0 + std::exp(-0.5 * cutoff * cutoff));
}

ForwardSearchResult forward_search(const ParetoPlot& plot,
                                   const ForwardSearchConfig& config) {
  const Eigen::Index total = plot.x.size();
  const int m = config.block;
  if (m < 2) throw std::invalid_argument("forward_search: block size too small");
  if (total < 2 * m)
    throw std::invalid_argument("forward_search: need at least 2 blocks of points");
  if (plot.y.size() != total || plot.sigma.size() != total)
    throw std::invalid_argument("forward_search: inconsistent plot");

  const EstimatorKernel kernel{KernelKind::NType, config.cutoff,
                               config.temperature, 3.0};
  const double threshold = config.weight_ratio * max_weight(config.cutoff);

  // A2: IRLS fit at fixed temperature on the m largest points, LMS start.
  const Eigen::VectorXd x0 = plot.x.head(m);
  const Eigen::VectorXd y0 = plot.y.head(m);
  const Line start_line = lms_line(x0, y0, config.lms_seed);

  IrlsConfig irls_cfg;
  irls_cfg.kind = KernelKind::NType;
  irls_cfg.cutoff = config.cutoff;
  irls_cfg.schedule = AnnealingSchedule::fixed(config.temperature);
  irls_cfg.max_inner_iterations = config.max_inner_iterations;
  irls_cfg.tol = config.tol;

  Eigen::MatrixXd design0(m, 2);
  design0.col(0).setOnes();
  design0.col(1) = x0;
  Eigen::VectorXd beta0(2);
  beta0 << start_line.intercept, start_line.slope;
  const FitResult head_fit =
      fit_linear(design0, y0, plot.sigma.head(m), irls_cfg, beta0);

  Eigen::VectorXd beta = head_fit.estimate;
  std::vector<double> frozen(head_fit.weights.data(),
                             head_fit.weights.data() + m);
  Eigen::Index included = m;
  StopReason reason = StopReason::Exhausted;

  // A3/A4: extend block-wise. Incoming points get (frozen) weights from the
  // line current at their arrival and enter one weighted refit; the block is
  // then judged at the refitted line, and a failing block is rolled back and
  // excluded. Judging at the arrival line instead would stop almost
  // immediately on finite heavy-tailed samples, where the short initial fit
  // cannot predict the next block to within its tight quantile scales.
  while (included < total) {
    const Eigen::Index add = std::min<Eigen::Index>(m, total - included);
    std::vector<double> w_new(add);
    for (Eigen::Index i = 0; i < add; ++i) {
      const Eigen::Index idx = included + i;
      const double fitted = beta[0] + beta[1] * plot.x[idx];
      const double r = (plot.y[idx] - fitted) / plot.sigma[idx];
      w_new[i] = weight(kernel, r);
    }

    const Eigen::Index n_try = included + add;
    Eigen::MatrixXd design(n_try, 2);
    design.col(0).setOnes();
    design.col(1) = plot.x.head(n_try);
    Eigen::VectorXd row_weights(n_try);
    for (Eigen::Index i = 0; i < included; ++i)
      row_weights[i] = frozen[i] / (plot.sigma[i] * plot.sigma[i]);
    for (Eigen::Index i = 0; i < add; ++i)
      row_weights[included + i] =
          w_new[i] / (plot.sigma[included + i] * plot.sigma[included + i]);
    const Eigen::VectorXd beta_try =
        weighted_least_squares(design, plot.y.head(n_try), row_weights);

    int low = 0;
    for (Eigen::Index i = 0; i < add; ++i) {
      const Eigen::Index idx = included + i;
      const double fitted = beta_try[0] + beta_try[1] * plot.x[idx];
      const double r = (plot.y[idx] - fitted) / plot.sigma[idx];
      if (weight(kernel, r) < threshold) ++low;
    }
    if (low >= static_cast<int>(std::ceil(config.stop_fraction * add))) {
      reason = StopReason::WeightsCollapsed;
      break;
    }
    frozen.insert(frozen.end(), w_new.begin(), w_new.end());
    included = n_try;
    beta = beta_try;
  }

  ForwardSearchResult result;
  result.intercept = beta[0];
  result.slope = beta[1];
  result.n_included = static_cast<int>(included);
  result.frozen_weights =
      Eigen::Map<const Eigen::VectorXd>(frozen.data(), frozen.size());
  result.stop_reason = reason;
  return result;
}

std::vector<TailExperimentRow> tail_experiment(
    const std::vector<double>& nu_grid, int n, int n_reps, std::uint64_t seed,
    const ForwardSearchConfig& fs_config) {
  if (n < 100 || n_reps < 1)
    throw std::invalid_argument("tail_experiment: bad sizes");

  std::vector<TailExperimentRow> rows;
  rows.reserve(nu_grid.size());
  std::mt19937_64 gen(seed);

  for (double nu : nu_grid) {
    std::student_t_distribution<double> tdist(nu);
    const double truth = 1.0 / nu;

    const int k_max = n - 1;
    std::vector<double> sq_err(k_max + 1, 0.0);
    double search_sq = 0.0;
    double p_sum = 0.0, p_sq_sum = 0.0;

    for (int rep = 0; rep < n_reps; ++rep) {
      Eigen::VectorXd sample(n);
      for (int i = 0; i < n; ++i) sample[i] = tdist(gen);

      // Hill estimates for every k from the sorted |sample|.
      std::vector<double> v = positive_values(sample, true);
      std::sort(v.begin(), v.end());
      const int np = static_cast<int>(v.size());
      double top_log_sum = 0.0;
      for (int k = 1; k <= k_max && k < np; ++k) {
        top_log_sum += std::log(v[np - k]);
        const double inv_alpha = top_log_sum / k - std::log(v[np - k - 1]);
        const double err = inv_alpha - truth;
        sq_err[k] += err * err;
      }

      const ParetoPlot plot = pareto_plot(sample, true);
      const ForwardSearchResult found = forward_search(plot, fs_config);
      const double err = found.slope - truth;
      search_sq += err * err;
      const double p_used = static_cast<double>(found.n_included) / n;
      p_sum += p_used;
      p_sq_sum += p_used * p_used;
    }

    TailExperimentRow row;
    row.nu = nu;
    int best_k = 1;
    for (int k = 2; k <= k_max; ++k)
      if (sq_err[k] < sq_err[best_k]) best_k = k;
    row.p_opt = static_cast<double>(best_k) / n;
    row.rmse_opt = std::sqrt(sq_err[best_k] / n_reps);
    row.rmse_search = std::sqrt(search_sq / n_reps);
    row.p_used_mean = p_sum / n_reps;
    const double var =
        n_reps > 1
            ? (p_sq_sum - n_reps * row.p_used_mean * row.p_used_mean) /
                  (n_reps - 1)
            : 0.0;
    row.p_used_sd = std::sqrt(std::max(var, 0.0));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace annealm
