#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "annealm/vertex.hpp"

using namespace annealm;

namespace {

IrlsConfig vertex_config(const AnnealingSchedule& schedule) {
  IrlsConfig cfg;
  cfg.kind = KernelKind::NType;
  cfg.cutoff = 2.5;
  cfg.schedule = schedule;
  return cfg;
}

}  // namespace

TEST_CASE("noiseless primaries pin the vertex") {
  SimulationConfig cfg;
  cfg.n_primary = 5;
  cfg.n_secondary = 0;
  cfg.sigma_track = 1e-10;
  cfg.mismeasured_fraction = 0.0;
  cfg.rng_seed = 7;
  const VertexEvent event = simulate_event(cfg);
  CHECK((least_squares_vertex(event) - event.true_vertex).norm() < 1e-8);

  const VertexFit fit =
      fit_vertex(event, vertex_config(AnnealingSchedule::geometric(256.0, 1.0)));
  CHECK((fit.vertex - event.true_vertex).norm() < 1e-8);
  for (double w : fit.track_weights) CHECK(w > 0.5);
}

TEST_CASE("events are reproducible from the seed") {
  SimulationConfig cfg;
  cfg.rng_seed = 99;
  const VertexEvent a = simulate_event(cfg);
  const VertexEvent b = simulate_event(cfg);
  REQUIRE(a.tracks.size() == b.tracks.size());
  CHECK(a.true_vertex == b.true_vertex);
  for (std::size_t i = 0; i < a.tracks.size(); ++i) {
    CHECK(a.tracks[i].offset == b.tracks[i].offset);
    CHECK(a.tracks[i].direction == b.tracks[i].direction);
  }
}

TEST_CASE("track directions are unit vectors") {
  SimulationConfig cfg;
  cfg.rng_seed = 3;
  const VertexEvent event = simulate_event(cfg);
  for (const Track& t : event.tracks)
    CHECK(t.direction.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("secondary tracks miss the true vertex") {
  SimulationConfig cfg;  // defaults: displacement / sigma = 30
  double mean_pull = 0.0;
  int count = 0;
  for (int seed = 0; seed < 50; ++seed) {
    cfg.rng_seed = 100 + seed;
    const VertexEvent event = simulate_event(cfg);
    for (const Track& t : event.tracks) {
      if (t.truth_label != TrackLabel::Secondary) continue;
      mean_pull +=
          std::fabs(t.offset + t.direction.dot(event.true_vertex)) / t.sigma;
      ++count;
    }
  }
  CHECK(mean_pull / count > 3.0);
}

TEST_CASE("three concurrent tracks in the plane") {
  VertexEvent event;
  event.true_vertex = Eigen::Vector2d(0.4, -0.2);
  for (double angle : {0.3, 1.4, 2.6}) {
    Track t;
    t.direction = Eigen::Vector2d(std::cos(angle), std::sin(angle));
    t.offset = -t.direction.dot(event.true_vertex);
    t.sigma = 0.05;
    event.tracks.push_back(t);
  }
  const VertexFit fit =
      fit_vertex(event, vertex_config(AnnealingSchedule::geometric(256.0, 1.0)));
  CHECK((fit.vertex - event.true_vertex).norm() < 1e-10);
  const double w0 = weight(EstimatorKernel::n_type(2.5, 1.0), 0.0);
  for (double w : fit.track_weights)
    CHECK(w == doctest::Approx(w0).epsilon(1e-9));
  for (auto c : fit.classification) CHECK(c == TrackClass::Inlier);
}

TEST_CASE("translation equivariance") {
  SimulationConfig cfg;
  cfg.rng_seed = 21;
  VertexEvent event = simulate_event(cfg);
  const VertexFit base =
      fit_vertex(event, vertex_config(AnnealingSchedule::geometric(256.0, 0.01)));

  Eigen::Vector3d shift(0.7, -0.4, 0.25);
  VertexEvent moved = event;
  for (Track& t : moved.tracks) t.offset -= t.direction.dot(shift);
  moved.true_vertex += shift;
  const VertexFit fit =
      fit_vertex(moved, vertex_config(AnnealingSchedule::geometric(256.0, 0.01)));
  CHECK((fit.vertex - (base.vertex + shift)).norm() < 1e-9);
}

TEST_CASE("classification boundary goes to outlier") {
  CHECK(classify_track(0.6) == TrackClass::Inlier);
  CHECK(classify_track(0.5) == TrackClass::Outlier);
  CHECK(classify_track(0.4) == TrackClass::Outlier);
}

TEST_CASE("degenerate direction sets raise a rank error") {
  VertexEvent event;
  event.true_vertex = Eigen::Vector3d::Zero();
  for (int i = 0; i < 4; ++i) {
    Track t;
    t.direction = Eigen::Vector3d(1.0, 0.0, 0.0);  // all parallel
    t.offset = 0.01 * i;
    t.sigma = 0.01;
    event.tracks.push_back(t);
  }
  CHECK_THROWS_AS(
      fit_vertex(event, vertex_config(AnnealingSchedule::fixed(1.0))),
      RankDeficiencyError);
}

TEST_CASE("invalid simulation configs are rejected") {
  SimulationConfig cfg;
  cfg.dim = 4;
  CHECK_THROWS_AS(simulate_event(cfg), std::invalid_argument);
  cfg.dim = 3;
  cfg.n_primary = 2;
  CHECK_THROWS_AS(simulate_event(cfg), std::invalid_argument);
  cfg.n_primary = 20;
  cfg.sigma_track = 0.0;
  CHECK_THROWS_AS(simulate_event(cfg), std::invalid_argument);
}

TEST_CASE("tolerance radius only affects the vertices-found column") {
  SimulationConfig base;
  base.rng_seed = 17;
  const auto tight = classification_table(30, base, 2.5, 2.0);
  const auto loose = classification_table(30, base, 2.5, 50.0);
  for (std::size_t i = 0; i < tight.size(); ++i) {
    CHECK(tight[i].primary_w_gt == loose[i].primary_w_gt);
    CHECK(tight[i].secondary_w_lt == loose[i].secondary_w_lt);
    CHECK(tight[i].n_rec <= loose[i].n_rec);
  }
}

TEST_CASE("classification table fractions and orderings") {
  SimulationConfig base;
  base.rng_seed = 5;
  const auto table = classification_table(200, base);
  REQUIRE(table.size() == 4);

  for (const auto& row : table) {
    CHECK(row.primary_w_lt + row.primary_w_gt ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.secondary_w_lt + row.secondary_w_gt ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.n_rec >= 0);
    CHECK(row.n_rec <= 200);
  }

  const auto& no_anneal_t1 = table[0];
  const auto& no_anneal_t001 = table[1];
  const auto& anneal_t1 = table[2];
  const auto& anneal_t001 = table[3];

  // annealing dominates both fixed-temperature schemes
  CHECK(anneal_t1.primary_w_gt > no_anneal_t1.primary_w_gt);
  CHECK(anneal_t001.primary_w_gt > no_anneal_t001.primary_w_gt);
  CHECK(anneal_t1.n_rec > no_anneal_t1.n_rec);
  CHECK(anneal_t001.n_rec > no_anneal_t001.n_rec);

  // without annealing, T = 1 beats T = 0.01
  CHECK(no_anneal_t1.primary_w_gt > no_anneal_t001.primary_w_gt);
  CHECK(no_anneal_t1.n_rec > no_anneal_t001.n_rec);

  // annealed schemes classify both classes well
  CHECK(anneal_t1.primary_w_gt >= 0.8);
  CHECK(anneal_t001.primary_w_gt >= 0.8);
  CHECK(anneal_t1.secondary_w_lt >= 0.8);
  CHECK(anneal_t001.secondary_w_lt >= 0.8);
}
