// Command-line front end: influence profiles, kernel tables, the annealed
// location demo, the synthetic vertex experiment and tail-index estimation,
// all emitting CSV/JSON with round-trip numeric formatting.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "annealm/csvio.hpp"
#include "annealm/influence.hpp"
#include "annealm/irls.hpp"
#include "annealm/kernels.hpp"
#include "annealm/scale.hpp"
#include "annealm/tailindex.hpp"
#include "annealm/vertex.hpp"

namespace {

using annealm::format_double;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// "a:step:b" or comma-separated values
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  const auto c1 = text.find(':');
  if (c1 != std::string::npos) {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw CLI::ValidationError("grid", "expected a:step:b, got " + text);
    const double lo = std::stod(text.substr(0, c1));
    const double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double hi = std::stod(text.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo)
      throw CLI::ValidationError("grid", "bad range " + text);
    for (double v = lo; v <= hi + 1e-9 * step; v += step) values.push_back(v);
    return values;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    values.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (values.empty()) throw CLI::ValidationError("grid", "empty grid");
  return values;
}

Eigen::VectorXd mixture_sample(int n, double p_inlier, double shift,
                               double outlier_sigma, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution outlier(1.0 - p_inlier);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    const double z = normal(gen);
    x[i] = outlier(gen) ? shift + outlier_sigma * z : z;
  }
  return x;
}

int cmd_profile(const std::string& c_text, double t_min, double t_max,
                int per_decade, double eps, const std::string& out_path) {
  const std::vector<double> c_values = parse_grid(c_text);
  const std::vector<double> temps = annealm::log_grid(t_min, t_max, per_decade);
  const auto rows = annealm::profile_sweep(c_values, temps, eps);
  auto out = open_output(out_path);
  out << "c,T,K,r_max,gamma_star,rho_eff,V\n";
  for (const auto& row : rows) {
    out << format_double(row.c) << ',' << format_double(row.temperature) << ','
        << format_double(row.normalization) << ','
        << format_double(row.max_influence_point) << ','
        << format_double(row.gross_error_sensitivity) << ','
        << format_double(row.effective_rejection_point) << ','
        << format_double(row.asymptotic_variance) << '\n';
  }
  return 0;
}

int cmd_kernel_dump(const std::string& kind_name, double cutoff, double nu,
                    const std::string& t_text, double r_min, double r_max,
                    double r_step, const std::string& out_path) {
  const annealm::KernelKind kind = annealm::kernel_kind_from_string(kind_name);
  const std::vector<double> temps = parse_grid(t_text);
  auto out = open_output(out_path);
  out << "r,T,w,psi,rho\n";
  for (double t : temps) {
    annealm::EstimatorKernel kernel{kind, cutoff, t, nu};
    kernel.validate();
    for (double r = r_min; r <= r_max + 1e-9 * r_step; r += r_step) {
      const auto v = annealm::evaluate(kernel, r);
      out << format_double(r) << ',' << format_double(t) << ','
          << format_double(v.w) << ',' << format_double(v.psi) << ','
          << format_double(v.rho) << '\n';
    }
  }
  return 0;
}

int cmd_location_demo(double p, double shift, double sigma, int n,
                      double cutoff, double t0, double t_end, double q,
                      double mu_min, double mu_max, double mu_step,
                      std::uint64_t seed, const std::string& out_path,
                      const std::string& summary_path) {
  const Eigen::VectorXd data = mixture_sample(n, p, shift, sigma, seed);
  const std::span<const double> view(data.data(),
                                     static_cast<std::size_t>(data.size()));
  const double hsm = annealm::half_sample_mode(view);
  const annealm::ScaleEstimate mad_hsm = annealm::mad_about(view, hsm);
  const annealm::ScaleEstimate mad_med =
      annealm::mad_about(view, annealm::median(view));
  const double scale = mad_hsm.raw;  // standardizes the demo residuals

  annealm::IrlsConfig cfg;
  cfg.kind = annealm::KernelKind::NType;
  cfg.cutoff = cutoff;
  cfg.schedule = annealm::AnnealingSchedule::geometric(t0, t_end, q);
  const annealm::FitResult fit = annealm::estimate_location(data, scale, cfg);

  auto out = open_output(out_path);
  out << "T,mu,M\n";
  for (const auto& step : fit.trace) {
    const auto kernel = cfg.kernel_at(step.temperature);
    for (double mu = mu_min; mu <= mu_max + 1e-9 * mu_step; mu += mu_step) {
      out << format_double(step.temperature) << ',' << format_double(mu) << ','
          << format_double(annealm::location_objective(data, scale, mu, kernel))
          << '\n';
    }
  }

  int n_inliers = 0;
  for (Eigen::Index i = 0; i < fit.weights.size(); ++i)
    if (fit.weights[i] > 0.5) ++n_inliers;

  nlohmann::json summary{
      {"estimate", fit.estimate[0]},
      {"half_sample_mode", hsm},
      {"scale_used", scale},
      {"mad_about_hsm_raw", mad_hsm.raw},
      {"mad_about_hsm_consistent", mad_hsm.consistent},
      {"mad_about_median_consistent", mad_med.consistent},
      {"n", n},
      {"n_inliers", n_inliers},
      {"n_outliers", n - n_inliers},
      {"converged", fit.converged},
      {"seed", seed},
  };
  auto js = open_output(summary_path);
  js << summary.dump(2) << '\n';
  return 0;
}

int cmd_vertex_sim(int n_events, int n_primary, int n_secondary, int dim,
                   double sigma_track, double displacement,
                   double mismeasured_fraction, double mismeasured_inflation,
                   double cutoff, double radius_factor, std::uint64_t seed,
                   const std::string& out_path) {
  annealm::SimulationConfig base;
  base.n_primary = n_primary;
  base.n_secondary = n_secondary;
  base.dim = dim;
  base.sigma_track = sigma_track;
  base.secondary_displacement = displacement;
  base.mismeasured_fraction = mismeasured_fraction;
  base.mismeasured_inflation = mismeasured_inflation;
  base.rng_seed = seed;
  const auto table =
      annealm::classification_table(n_events, base, cutoff, radius_factor);
  auto out = open_output(out_path);
  out << "scheme,primary_w_lt_05,primary_w_gt_05,secondary_w_lt_05,"
         "secondary_w_gt_05,n_rec\n";
  for (const auto& row : table) {
    out << row.scheme << ',' << format_double(row.primary_w_lt) << ','
        << format_double(row.primary_w_gt) << ','
        << format_double(row.secondary_w_lt) << ','
        << format_double(row.secondary_w_gt) << ',' << row.n_rec << '\n';
  }
  return 0;
}

Eigen::VectorXd read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      // tolerate a header line
      if (!values.empty())
        throw std::runtime_error("unparseable sample line: " + line);
    }
  }
  if (values.empty()) throw std::runtime_error("no sample values in " + path);
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

int cmd_tail_index(const std::string& input_path, const std::string& nu_text,
                   int n, int reps, int block, double cutoff,
                   double temperature, double stop_fraction,
                   double weight_ratio, std::uint64_t seed,
                   const std::string& out_prefix) {
  annealm::ForwardSearchConfig fs;
  fs.block = block;
  fs.cutoff = cutoff;
  fs.temperature = temperature;
  fs.stop_fraction = stop_fraction;
  fs.weight_ratio = weight_ratio;

  if (!input_path.empty()) {
    const Eigen::VectorXd sample = read_sample_csv(input_path);
    const auto plot = annealm::pareto_plot(sample);
    const auto found = annealm::forward_search(plot, fs);
    nlohmann::json result{
        {"slope", found.slope},
        {"alpha", found.slope > 0.0 ? 1.0 / found.slope : 0.0},
        {"intercept", found.intercept},
        {"n_included", found.n_included},
        {"proportion",
         static_cast<double>(found.n_included) / plot.sample_size},
        {"stop_reason", found.stop_reason == annealm::StopReason::Exhausted
                            ? "exhausted"
                            : "weights_collapsed"},
        {"n", plot.sample_size},
    };
    auto out = open_output(out_prefix + ".json");
    out << result.dump(2) << '\n';
    return 0;
  }

  const std::vector<double> nu_grid = parse_grid(nu_text);
  const auto rows = annealm::tail_experiment(nu_grid, n, reps, seed, fs);
  auto hill_out = open_output(out_prefix + "_hill.csv");
  hill_out << "nu,p_opt,rmse_opt\n";
  for (const auto& row : rows)
    hill_out << format_double(row.nu) << ',' << format_double(row.p_opt) << ','
             << format_double(row.rmse_opt) << '\n';
  auto alg_out = open_output(out_prefix + "_alga.csv");
  alg_out << "nu,p_used_mean,p_used_sd,rmse_algA\n";
  for (const auto& row : rows)
    alg_out << format_double(row.nu) << ',' << format_double(row.p_used_mean)
            << ',' << format_double(row.p_used_sd) << ','
            << format_double(row.rmse_search) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealing redescending M-estimators: profiles, demos and "
               "experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "optional config file; flags take precedence");

  // profile
  auto* profile = app.add_subcommand(
      "profile", "influence profile sweep over (c, T), CSV output");
  std::string profile_c = "1.5,2,2.5,3";
  double profile_tmin = 1e-4, profile_tmax = 1e4, profile_eps = 1e-3;
  int profile_ppd = 20;
  std::string profile_out = "profile.csv";
  profile->add_option("--c", profile_c, "cutoff list or a:step:b");
  profile->add_option("--t-min", profile_tmin, "lowest temperature");
  profile->add_option("--t-max", profile_tmax, "highest temperature");
  profile->add_option("--points-per-decade", profile_ppd,
                      "temperature grid density");
  profile->add_option("--eps", profile_eps,
                      "influence threshold for the rejection point");
  profile->add_option("--out", profile_out, "output CSV path");

  // kernel-dump
  auto* dump = app.add_subcommand(
      "kernel-dump", "tabulate w, psi, rho over a residual grid, CSV output");
  std::string dump_kind = "ntype", dump_t = "10,1,0.01",
              dump_out = "kernels.csv";
  double dump_cutoff = 2.5, dump_nu = 3.0;
  double dump_rmin = -10.0, dump_rmax = 10.0, dump_rstep = 0.1;
  dump->add_option("--kind", dump_kind, "ntype|hstype|tnu|welsch");
  dump->add_option("--cutoff", dump_cutoff, "cutoff c");
  dump->add_option("--nu", dump_nu, "degrees of freedom for tnu");
  dump->add_option("--t-list", dump_t, "temperature list");
  dump->add_option("--r-min", dump_rmin, "grid start");
  dump->add_option("--r-max", dump_rmax, "grid end");
  dump->add_option("--r-step", dump_rstep, "grid step");
  dump->add_option("--out", dump_out, "output CSV path");

  // location-demo
  auto* demo = app.add_subcommand(
      "location-demo",
      "annealed location fit on a two-component mixture, CSV + JSON output");
  double demo_p = 0.7, demo_m = 6.0, demo_sigma = 1.0, demo_cutoff = 2.5;
  double demo_t0 = 256.0, demo_tend = 0.1, demo_q = 0.25;
  double demo_mu_min = -4.0, demo_mu_max = 10.0, demo_mu_step = 0.05;
  int demo_n = 500;
  std::uint64_t demo_seed = 1;
  std::string demo_out = "location_demo.csv";
  std::string demo_summary = "location_demo.json";
  demo->add_option("--p", demo_p, "inlier fraction");
  demo->add_option("--m", demo_m, "outlier mean shift");
  demo->add_option("--sigma", demo_sigma, "outlier component scale");
  demo->add_option("--n", demo_n, "sample size");
  demo->add_option("--cutoff", demo_cutoff, "cutoff c");
  demo->add_option("--t0", demo_t0, "start temperature");
  demo->add_option("--t-end", demo_tend, "final temperature");
  demo->add_option("--q", demo_q, "annealing factor");
  demo->add_option("--mu-min", demo_mu_min, "objective grid start");
  demo->add_option("--mu-max", demo_mu_max, "objective grid end");
  demo->add_option("--mu-step", demo_mu_step, "objective grid step");
  demo->add_option("--seed", demo_seed, "RNG seed");
  demo->add_option("--out", demo_out, "objective grid CSV path");
  demo->add_option("--summary", demo_summary, "JSON summary path");

  // vertex-sim
  auto* vsim = app.add_subcommand(
      "vertex-sim", "synthetic vertex classification table, CSV output");
  int vs_events = 1000, vs_primary = 20, vs_secondary = 8, vs_dim = 3;
  double vs_sigma = 0.01, vs_disp = 0.3, vs_mf = 0.2, vs_mi = 3.0;
  double vs_cutoff = 2.5, vs_radius = 5.0;
  std::uint64_t vs_seed = 1;
  std::string vs_out = "vertex_table.csv";
  vsim->add_option("--events", vs_events, "number of events");
  vsim->add_option("--n-primary", vs_primary, "primary tracks per event");
  vsim->add_option("--n-secondary", vs_secondary, "secondary tracks per event");
  vsim->add_option("--dim", vs_dim, "vertex dimension, 2 or 3");
  vsim->add_option("--sigma-track", vs_sigma, "track distance standard error");
  vsim->add_option("--displacement", vs_disp, "secondary point displacement");
  vsim->add_option("--mismeasured-fraction", vs_mf,
                   "fraction of primaries with inflated true error");
  vsim->add_option("--mismeasured-inflation", vs_mi,
                   "true-error inflation of mis-measured primaries");
  vsim->add_option("--cutoff", vs_cutoff, "cutoff c");
  vsim->add_option("--radius-factor", vs_radius,
                   "vertex tolerance radius in ideal-LS standard errors");
  vsim->add_option("--seed", vs_seed, "RNG seed");
  vsim->add_option("--out", vs_out, "output CSV path");

  // tail-index
  auto* tail = app.add_subcommand(
      "tail-index",
      "tail-index estimation: t-sweep experiment or a single sample file");
  std::string tail_input, tail_nu = "1:0.5:10", tail_out = "tail";
  int tail_n = 1000, tail_reps = 50, tail_block = 10;
  double tail_cutoff = 2.576, tail_temp = 1.0, tail_stop = 0.5,
         tail_ratio = 0.99;
  std::uint64_t tail_seed = 1;
  tail->add_option("--input", tail_input,
                   "one-column CSV of sample values (single-sample mode)");
  tail->add_option("--nu-grid", tail_nu, "t degrees-of-freedom grid");
  tail->add_option("--n", tail_n, "sample size per replication");
  tail->add_option("--reps", tail_reps, "replications per nu");
  tail->add_option("--block", tail_block, "points added per search step");
  tail->add_option("--cutoff", tail_cutoff, "cutoff c");
  tail->add_option("--temperature", tail_temp, "search temperature");
  tail->add_option("--stop-fraction", tail_stop,
                   "fraction of a new block below threshold that stops");
  tail->add_option("--weight-ratio", tail_ratio,
                   "threshold as a fraction of the maximum weight");
  tail->add_option("--seed", tail_seed, "RNG seed");
  tail->add_option("--out", tail_out,
                   "output prefix (sweep) or JSON basename (single sample)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (profile->parsed())
      return cmd_profile(profile_c, profile_tmin, profile_tmax, profile_ppd,
                         profile_eps, profile_out);
    if (dump->parsed())
      return cmd_kernel_dump(dump_kind, dump_cutoff, dump_nu, dump_t,
                             dump_rmin, dump_rmax, dump_rstep, dump_out);
    if (demo->parsed())
      return cmd_location_demo(demo_p, demo_m, demo_sigma, demo_n, demo_cutoff,
                               demo_t0, demo_tend, demo_q, demo_mu_min,
                               demo_mu_max, demo_mu_step, demo_seed, demo_out,
                               demo_summary);
    if (vsim->parsed())
      return cmd_vertex_sim(vs_events, vs_primary, vs_secondary, vs_dim,
                            vs_sigma, vs_disp, vs_mf, vs_mi, vs_cutoff,
                            vs_radius, vs_seed, vs_out);
    if (tail->parsed())
      return cmd_tail_index(tail_input, tail_nu, tail_n, tail_reps, tail_block,
                            tail_cutoff, tail_temp, tail_stop, tail_ratio,
                            tail_seed, tail_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
