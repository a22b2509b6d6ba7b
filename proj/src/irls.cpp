#include "annealm/irls.hpp"

#include <cmath>
#include <stdexcept>

namespace annealm {

namespace {
constexpr double kWeightSumFloor = 1e-30;
}

AnnealingSchedule AnnealingSchedule::geometric(double t_start, double t_end,
                                               double q, double epsilon_t) {
  AnnealingSchedule s{t_start, t_end, q, epsilon_t};
  s.validate();
  return s;
}

AnnealingSchedule AnnealingSchedule::fixed(double temperature) {
  AnnealingSchedule s{temperature, temperature, 0.25, 1e-3};
  s.validate();
  return s;
}

void AnnealingSchedule::validate() const {
  if (!(t_end > 0.0) || !(t_start >= t_end))
    throw std::invalid_argument("schedule: need t_start >= t_end > 0");
  if (!(q > 0.0) || !(q < 1.0))
    throw std::invalid_argument("schedule: q must be in (0, 1)");
  if (!(epsilon_t > 0.0))
    throw std::invalid_argument("schedule: epsilon_t must be positive");
}

std::vector<double> AnnealingSchedule::temperatures() const {
  validate();
  std::vector<double> seq;
  double t = t_start;
  while (t - t_end >= epsilon_t) {
    seq.push_back(t);
    t = t_end + q * (t - t_end);
  }
  seq.push_back(t_end);
  return seq;
}

EstimatorKernel IrlsConfig::kernel_at(double temperature) const {
  if (max_inner_iterations < 1)
    throw std::invalid_argument("irls: max_inner_iterations must be >= 1");
  if (!(tol > 0.0))
    throw std::invalid_argument("irls: tol must be positive");
  EstimatorKernel k{kind, cutoff, temperature, nu};
  k.validate();
  return k;
}

double objective_value(const Eigen::VectorXd& residuals,
                       const EstimatorKernel& kernel) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < residuals.size(); ++i)
    sum += rho(kernel, residuals[i]);
  return sum;
}

double location_objective(const Eigen::VectorXd& data, double scale,
                          double mu, const EstimatorKernel& kernel) {
  if (!(scale > 0.0))
    throw std::invalid_argument("location_objective: scale must be positive");
  return objective_value((data.array() - mu).matrix() / scale, kernel);
}

Eigen::VectorXd weighted_least_squares(const Eigen::MatrixXd& design,
                                       const Eigen::VectorXd& response,
                                       const Eigen::VectorXd& row_weights) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (response.size() != n || row_weights.size() != n)
    throw std::invalid_argument("weighted_least_squares: size mismatch");
  if (n < p)
    throw std::invalid_argument("weighted_least_squares: fewer rows than columns");

  const Eigen::VectorXd sqrt_w = row_weights.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd scaled = sqrt_w.asDiagonal() * design;
  const Eigen::VectorXd target = sqrt_w.cwiseProduct(response);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  const Eigen::Index rank = qr.rank();
  if (rank < p)
    throw RankDeficiencyError(
        static_cast<int>(p - rank),
        "weighted design rank-deficient: " + std::to_string(p - rank) +
            " of " + std::to_string(p) + " columns unresolved");
  return qr.solve(target);
}

FitResult estimate_location(const Eigen::VectorXd& data, double scale,
                            const IrlsConfig& config,
                            std::optional<double> start) {
  if (data.size() < 1)
    throw std::invalid_argument("estimate_location: empty sample");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("estimate_location: scale must be positive");

  auto solve_at = [&](double temperature,
                      const Eigen::VectorXd& from) -> detail::InnerFit {
    const EstimatorKernel kernel = config.kernel_at(temperature);
    detail::InnerFit fit;
    double mu = from[0];
    Eigen::VectorXd residuals = (data.array() - mu).matrix() / scale;
    fit.inner_objectives.push_back(objective_value(residuals, kernel));
    Eigen::VectorXd weights(data.size());
    for (int it = 0; it < config.max_inner_iterations; ++it) {
      for (Eigen::Index i = 0; i < data.size(); ++i)
        weights[i] = weight(kernel, residuals[i]);
      const double wsum = weights.sum();
      if (wsum < kWeightSumFloor)
        throw NumericalError("all observations rejected");
      const double next = weights.dot(data) / wsum;
      const double delta = std::fabs(next - mu);
      mu = next;
      residuals = (data.array() - mu).matrix() / scale;
      fit.inner_objectives.push_back(objective_value(residuals, kernel));
      fit.iterations = it + 1;
      if (delta < config.tol * scale) {
        fit.converged = true;
        break;
      }
    }
    for (Eigen::Index i = 0; i < data.size(); ++i)
      weights[i] = weight(kernel, residuals[i]);
    fit.estimate = Eigen::VectorXd::Constant(1, mu);
    fit.weights = std::move(weights);
    fit.objective = fit.inner_objectives.back();
    return fit;
  };

  const double mu0 = start ? *start : data.mean();
  return anneal(solve_at, config.schedule,
                Eigen::VectorXd::Constant(1, mu0));
}

FitResult fit_linear(const Eigen::MatrixXd& design,
                     const Eigen::VectorXd& response,
                     const Eigen::VectorXd& sigmas, const IrlsConfig& config,
                     std::optional<Eigen::VectorXd> start) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (n < p) throw std::invalid_argument("fit_linear: need n >= p");
  if (response.size() != n || sigmas.size() != n)
    throw std::invalid_argument("fit_linear: size mismatch");
  if ((sigmas.array() <= 0.0).any())
    throw std::invalid_argument("fit_linear: sigmas must be positive");

  const Eigen::VectorXd inv_var = sigmas.array().square().inverse();

  auto solve_at = [&](double temperature,
                      const Eigen::VectorXd& from) -> detail::InnerFit {
    const EstimatorKernel kernel = config.kernel_at(temperature);
    detail::InnerFit fit;
    Eigen::VectorXd beta = from;
    Eigen::VectorXd residuals =
        (response - design * beta).cwiseQuotient(sigmas);
    fit.inner_objectives.push_back(objective_value(residuals, kernel));
    Eigen::VectorXd weights(n);
    for (int it = 0; it < config.max_inner_iterations; ++it) {
      for (Eigen::Index i = 0; i < n; ++i)
        weights[i] = weight(kernel, residuals[i]);
      if (weights.sum() < kWeightSumFloor)
        throw NumericalError("all observations rejected");
      const Eigen::VectorXd beta_next = weighted_least_squares(
          design, response, weights.cwiseProduct(inv_var));
      const double delta = (beta_next - beta).cwiseAbs().maxCoeff();
      beta = beta_next;
      residuals = (response - design * beta).cwiseQuotient(sigmas);
      fit.inner_objectives.push_back(objective_value(residuals, kernel));
      fit.iterations = it + 1;
      if (delta < config.tol * (1.0 + beta.cwiseAbs().maxCoeff())) {
        fit.converged = true;
        break;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      weights[i] = weight(kernel, residuals[i]);
    fit.estimate = beta;
    fit.weights = std::move(weights);
    fit.objective = fit.inner_objectives.back();
    return fit;
  };

  Eigen::VectorXd beta0;
  if (start) {
    if (start->size() != p)
      throw std::invalid_argument("fit_linear: start size mismatch");
    beta0 = *start;
  } else {
    beta0 = weighted_least_squares(design, response, inv_var);
  }
  return anneal(solve_at, config.schedule, beta0);
}

}  // namespace annealm
