#include "annealm/vertex.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace annealm {

namespace {

Eigen::VectorXd random_unit(std::mt19937_64& gen, int dim,
                            std::normal_distribution<double>& gauss) {
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(gen);
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

}  // namespace

VertexEvent simulate_event(const SimulationConfig& config) {
  if (config.dim != 2 && config.dim != 3)
    throw std::invalid_argument("simulate_event: dim must be 2 or 3");
  if (config.n_primary < config.dim)
    throw std::invalid_argument("simulate_event: need n_primary >= dim");
  if (config.n_secondary < 0 || !(config.sigma_track > 0.0))
    throw std::invalid_argument("simulate_event: bad track parameters");
  if (config.mismeasured_fraction < 0.0 || config.mismeasured_fraction > 1.0 ||
      config.mismeasured_inflation < 1.0)
    throw std::invalid_argument("simulate_event: bad mis-measurement model");

  std::mt19937_64 gen(config.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution mismeasured(config.mismeasured_fraction);

  VertexEvent event;
  event.true_vertex = Eigen::VectorXd(config.dim);
  for (int i = 0; i < config.dim; ++i)
    event.true_vertex[i] = config.vertex_spread * gauss(gen);

  const Eigen::VectorXd displaced =
      event.true_vertex +
      config.secondary_displacement * random_unit(gen, config.dim, gauss);

  event.tracks.reserve(config.n_primary + config.n_secondary);
  for (int i = 0; i < config.n_primary; ++i) {
    Track t;
    t.direction = random_unit(gen, config.dim, gauss);
    const double noise_sigma =
        mismeasured(gen) ? config.mismeasured_inflation * config.sigma_track
                         : config.sigma_track;
    t.offset = -t.direction.dot(event.true_vertex) + noise_sigma * gauss(gen);
    t.sigma = config.sigma_track;
    t.truth_label = TrackLabel::Primary;
    event.tracks.push_back(std::move(t));
  }
  for (int i = 0; i < config.n_secondary; ++i) {
    Track t;
    t.direction = random_unit(gen, config.dim, gauss);
    t.offset = -t.direction.dot(displaced) + config.sigma_track * gauss(gen);
    t.sigma = config.sigma_track;
    t.truth_label = TrackLabel::Secondary;
    event.tracks.push_back(std::move(t));
  }
  return event;
}

TrackClass classify_track(double weight) {
  return weight > 0.5 ? TrackClass::Inlier : TrackClass::Outlier;
}

namespace {

struct DesignData {
  Eigen::MatrixXd design;
  Eigen::VectorXd response;
  Eigen::VectorXd sigmas;
};

// d_i(v) = offset_i + a_i^T v, so the regression form is a_i^T v = -offset_i.
DesignData event_design(const VertexEvent& event) {
  const auto n = static_cast<Eigen::Index>(event.tracks.size());
  if (n == 0) throw std::invalid_argument("vertex fit: no tracks");
  const auto dim = event.tracks.front().direction.size();
  DesignData d{Eigen::MatrixXd(n, dim), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Track& t = event.tracks[i];
    if (t.direction.size() != dim)
      throw std::invalid_argument("vertex fit: mixed track dimensions");
    d.design.row(i) = t.direction.transpose();
    d.response[i] = -t.offset;
    d.sigmas[i] = t.sigma;
  }
  return d;
}

}  // namespace

Eigen::VectorXd least_squares_vertex(const VertexEvent& event) {
  const DesignData d = event_design(event);
  return weighted_least_squares(d.design, d.response,
                                d.sigmas.array().square().inverse());
}

VertexFit fit_vertex(const VertexEvent& event, const IrlsConfig& config) {
  const DesignData d = event_design(event);
  FitResult fit = fit_linear(d.design, d.response, d.sigmas, config);
  VertexFit out;
  out.vertex = std::move(fit.estimate);
  out.track_weights = std::move(fit.weights);
  out.classification.reserve(event.tracks.size());
  for (Eigen::Index i = 0; i < out.track_weights.size(); ++i)
    out.classification.push_back(classify_track(out.track_weights[i]));
  out.trace = std::move(fit.trace);
  out.converged = fit.converged;
  return out;
}

std::vector<SchemeResult> classification_table(int n_events,
                                               const SimulationConfig& base,
                                               double cutoff,
                                               double radius_factor) {
  if (n_events < 1)
    throw std::invalid_argument("classification_table: need n_events >= 1");

  struct Scheme {
    std::string name;
    AnnealingSchedule schedule;
  };
  const std::vector<Scheme> schemes = {
      {"no_annealing_T1", AnnealingSchedule::fixed(1.0)},
      {"no_annealing_T0.01", AnnealingSchedule::fixed(0.01)},
      {"annealing_Tend1", AnnealingSchedule::geometric(256.0, 1.0)},
      {"annealing_Tend0.01", AnnealingSchedule::geometric(256.0, 0.01)},
  };

  const double radius =
      radius_factor * base.sigma_track / std::sqrt(base.n_primary);

  std::vector<SchemeResult> table;
  table.reserve(schemes.size());
  for (const auto& scheme : schemes)
    table.push_back(SchemeResult{scheme.name, 0, 0, 0, 0, 0});

  long n_primary_total = 0;
  long n_secondary_total = 0;
  for (int e = 0; e < n_events; ++e) {
    SimulationConfig cfg = base;
    cfg.rng_seed = base.rng_seed + static_cast<std::uint64_t>(e);
    const VertexEvent event = simulate_event(cfg);
    n_primary_total += cfg.n_primary;
    n_secondary_total += cfg.n_secondary;

    for (std::size_t s = 0; s < schemes.size(); ++s) {
      IrlsConfig fit_cfg;
      fit_cfg.kind = KernelKind::NType;
      fit_cfg.cutoff = cutoff;
      fit_cfg.schedule = schemes[s].schedule;

      SchemeResult& row = table[s];
      bool collapsed = false;
      VertexFit fit;
      try {
        fit = fit_vertex(event, fit_cfg);
      } catch (const NumericalError&) {
        // weight collapse away from the vertex: every track is rejected and
        // no vertex is produced (happens at fixed low T from a biased start)
        collapsed = true;
      }
      for (std::size_t i = 0; i < event.tracks.size(); ++i) {
        const bool inlier =
            !collapsed && fit.classification[i] == TrackClass::Inlier;
        if (event.tracks[i].truth_label == TrackLabel::Primary) {
          (inlier ? row.primary_w_gt : row.primary_w_lt) += 1.0;
        } else {
          (inlier ? row.secondary_w_gt : row.secondary_w_lt) += 1.0;
        }
      }
      if (!collapsed && (fit.vertex - event.true_vertex).norm() <= radius)
        ++row.n_rec;
    }
  }

  for (auto& row : table) {
    if (n_primary_total > 0) {
      row.primary_w_lt /= n_primary_total;
      row.primary_w_gt /= n_primary_total;
    }
    if (n_secondary_total > 0) {
      row.secondary_w_lt /= n_secondary_total;
      row.secondary_w_gt /= n_secondary_total;
    }
  }
  return table;
}

}  // namespace annealm
