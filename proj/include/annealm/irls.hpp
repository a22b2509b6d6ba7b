#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "annealm/errors.hpp"
#include "annealm/kernels.hpp"

namespace annealm {

/// Geometric approach to the final temperature:
///   T_{i+1} = t_end + q (T_i - t_end).
/// Iteration stops once T_i - t_end < epsilon_t, followed by one pass at
/// exactly t_end.
struct AnnealingSchedule {
  double t_start = 256.0;
  double t_end = 1.0;
  double q = 0.25;
  double epsilon_t = 1e-3;

  static AnnealingSchedule geometric(double t_start, double t_end,
                                     double q = 0.25, double epsilon_t = 1e-3);
  /// Degenerate single-temperature schedule (plain IRLS at T).
  static AnnealingSchedule fixed(double temperature);

  void validate() const;
  std::vector<double> temperatures() const;
};

struct IrlsConfig {
  KernelKind kind = KernelKind::NType;
  double cutoff = 2.5;
  double nu = 3.0;  // TNuType only
  AnnealingSchedule schedule;
  int max_inner_iterations = 100;
  double tol = 1e-8;

  EstimatorKernel kernel_at(double temperature) const;
};

/// One annealing step: the converged inner IRLS state at a temperature.
/// inner_objectives holds the objective at the start value and after every
/// inner update, so descent can be checked per iteration.
struct AnnealingStep {
  double temperature = 0.0;
  Eigen::VectorXd estimate;
  double objective = 0.0;
  std::vector<double> inner_objectives;
  int inner_iterations = 0;
  bool converged = false;
};

struct FitResult {
  Eigen::VectorXd estimate;
  Eigen::VectorXd weights;  // per observation, evaluated at t_end
  double objective = 0.0;   // sum of rho at t_end
  std::vector<AnnealingStep> trace;
  bool converged = false;
};

/// Sum of rho over a residual vector.
double objective_value(const Eigen::VectorXd& residuals,
                       const EstimatorKernel& kernel);

/// Location objective M(mu) = sum_i rho((x_i - mu)/scale).
double location_objective(const Eigen::VectorXd& data, double scale,
                          double mu, const EstimatorKernel& kernel);

/// Solve min_beta sum_i u_i (y_i - a_i^T beta)^2 with a rank-revealing QR.
/// Throws RankDeficiencyError naming the number of deficient columns.
Eigen::VectorXd weighted_least_squares(const Eigen::MatrixXd& design,
                                       const Eigen::VectorXd& response,
                                       const Eigen::VectorXd& row_weights);

/// Annealed location M-estimate: iterated weighted mean at each temperature
/// of the schedule, warm-started from the previous solution. Default start
/// is the sample mean.
FitResult estimate_location(const Eigen::VectorXd& data, double scale,
                            const IrlsConfig& config,
                            std::optional<double> start = std::nullopt);

/// Annealed robust linear regression with per-observation standard errors:
/// at each temperature, iterate weighted normal equations with row weight
/// w_i / sigma_i^2. Default start is the sigma-weighted LS estimate.
FitResult fit_linear(const Eigen::MatrixXd& design,
                     const Eigen::VectorXd& response,
                     const Eigen::VectorXd& sigmas, const IrlsConfig& config,
                     std::optional<Eigen::VectorXd> start = std::nullopt);

namespace detail {

struct InnerFit {
  Eigen::VectorXd estimate;
  Eigen::VectorXd weights;
  double objective = 0.0;
  std::vector<double> inner_objectives;
  int iterations = 0;
  bool converged = false;
};

}  // namespace detail

/// Run an inner solver to convergence at every temperature of the schedule,
/// passing each solution on as the next start. The solver is called as
/// solver(temperature, start) -> detail::InnerFit.
template <class Solver>
FitResult anneal(Solver&& solver, const AnnealingSchedule& schedule,
                 Eigen::VectorXd start) {
  schedule.validate();
  FitResult result;
  result.converged = true;
  for (double t : schedule.temperatures()) {
    detail::InnerFit inner = solver(t, start);
    AnnealingStep step;
    step.temperature = t;
    step.estimate = inner.estimate;
    step.objective = inner.objective;
    step.inner_objectives = std::move(inner.inner_objectives);
    step.inner_iterations = inner.iterations;
    step.converged = inner.converged;
    result.converged = result.converged && inner.converged;
    result.trace.push_back(std::move(step));
    start = inner.estimate;
    result.estimate = std::move(inner.estimate);
    result.weights = std::move(inner.weights);
    result.objective = inner.objective;
  }
  return result;
}

}  // namespace annealm
