#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "annealm/irls.hpp"

namespace annealm {

enum class TrackLabel { Primary, Secondary };
enum class TrackClass { Inlier, Outlier };

/// Affine distance model of a track: the signed distance of the line from a
/// candidate vertex v is d(v) = offset + direction^T v.
struct Track {
  double offset = 0.0;
  Eigen::VectorXd direction;  // unit vector
  double sigma = 0.0;         // standard error of the distance
  TrackLabel truth_label = TrackLabel::Primary;
};

struct VertexEvent {
  std::vector<Track> tracks;
  Eigen::VectorXd true_vertex;
};

/// Synthetic event generator. Primary tracks pass through the true vertex;
/// secondary tracks pass through one displaced point per event. A fraction
/// of the primaries is mis-measured: the offset noise is inflated while the
/// reported sigma stays at sigma_track, as with underestimated track errors.
struct SimulationConfig {
  int n_primary = 20;
  int n_secondary = 8;
  int dim = 3;  // 2 or 3
  double sigma_track = 0.01;
  double secondary_displacement = 0.3;
  double vertex_spread = 0.1;
  double mismeasured_fraction = 0.2;
  double mismeasured_inflation = 3.0;
  std::uint64_t rng_seed = 1;
};

VertexEvent simulate_event(const SimulationConfig& config);

struct VertexFit {
  Eigen::VectorXd vertex;
  Eigen::VectorXd track_weights;
  std::vector<TrackClass> classification;
  std::vector<AnnealingStep> trace;
  bool converged = false;
};

/// Posterior track classification from the final weight. The boundary
/// w = 0.5 goes to Outlier.
TrackClass classify_track(double weight);

/// Plain sigma-weighted least-squares vertex.
Eigen::VectorXd least_squares_vertex(const VertexEvent& event);

/// Annealed N-type vertex fit, started from the LS vertex.
VertexFit fit_vertex(const VertexEvent& event, const IrlsConfig& config);

struct SchemeResult {
  std::string scheme;
  double primary_w_lt = 0.0;   // fraction of primaries with w < 0.5
  double primary_w_gt = 0.0;   // fraction with w > 0.5
  double secondary_w_lt = 0.0;
  double secondary_w_gt = 0.0;
  long n_rec = 0;  // vertices within the tolerance radius of truth
};

/// Runs the four schemes (fixed T = 1, fixed T = 0.01, annealed to
/// t_end = 1, annealed to t_end = 0.01) over n_events common events and
/// tabulates the track classification fractions. The tolerance radius is
/// radius_factor * sigma_track / sqrt(n_primary).
std::vector<SchemeResult> classification_table(int n_events,
                                               const SimulationConfig& base,
                                               double cutoff = 2.5,
                                               double radius_factor = 5.0);

}  // namespace annealm
