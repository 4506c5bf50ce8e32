#pragma once

// Disorder-averaged quench experiments across the three engines.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mblent/fitting.hpp"
#include "mblent/lbit.hpp"
#include "mblent/model.hpp"
#include "mblent/observables.hpp"
#include "mblent/propagator.hpp"

namespace mblent {

enum class Engine { Exact, FreeFermion, Lbit };
enum class Spacing { Linear, Log };

std::string to_string(Engine engine);
Engine parse_engine(const std::string& name);
std::string to_string(Spacing spacing);
Spacing parse_spacing(const std::string& name);

struct TimeGrid {
  double start = 0.1;
  double stop = 1000.0;
  std::size_t points = 60;
  Spacing spacing = Spacing::Log;

  void validate() const;
  std::vector<double> values() const;
};

struct ObservableSelection {
  bool concurrence = true;
  bool bound = true;
  bool imbalance = true;
  bool entropy = false;
};

struct ExperimentConfig {
  Engine engine = Engine::Exact;
  ModelParams model;  // phi is resampled per realization
  LbitParams lbit;
  TimeGrid grid;
  std::size_t realizations = 30;
  std::uint64_t seed = 1;
  ObservableSelection observables;
  std::optional<BulkWindow> bulk;  // defaults to bulk_window(L)
  int r_max = 2;
  KrylovConfig krylov;
  std::string output_dir;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool keep_realizations = false;  // retain per-realization pair concurrence

  int sites() const { return engine == Engine::Lbit ? lbit.L : model.L; }
  BulkWindow resolved_bulk() const { return bulk ? *bulk : bulk_window(sites()); }
  // Throws std::invalid_argument on inconsistent settings, CapacityError on oversize.
  void validate() const;
};

// Mean and sample variance across realizations for one site pair.
struct PairSeries {
  SitePair pair;
  std::vector<double> mean;
  std::vector<double> variance;
};

struct RunRecord {
  ExperimentConfig config;
  std::vector<double> times;
  std::vector<ObservableSeries> series;
  std::vector<PairSeries> pairs;        // concurrence
  std::vector<PairSeries> bound_pairs;  // lower bound, exact and free-fermion engines
  std::vector<Eigen::MatrixXd> realization_concurrence;  // times x pairs, if kept
  double wall_seconds = 0.0;

  const ObservableSeries& get(const std::string& name) const;
  bool has(const std::string& name) const;
};

// Sample phi (or an l-bit instance and product state) per realization, evolve,
// measure on the grid and aggregate. Deterministic for a fixed seed.
RunRecord run_experiment(const ExperimentConfig& cfg);

// Propagated variance of the aggregate concurrence:
// sum over pairs of (2 mean)^2 * variance_of_mean.
double variance_of_aggregate(std::span<const double> pair_means,
                             std::span<const double> pair_variance_of_mean);

// Variance of sum_p mean_p^2 that keeps cross-pair covariances, for Gaussian
// pair means: 4 m^T S m / n + 2 tr(S^2) / n^2, with m the column means and S the
// sample covariance of the rows (realizations x pairs).
double variance_of_aggregate_full(const Eigen::MatrixXd& samples);

// Mean over bulk pairs of (C - C_bound) at a grid index.
double mean_bound_gap(const RunRecord& run, std::size_t time_index);

// Arithmetic mean of a series over grid times in [t1, t2].
double time_average(const ObservableSeries& series, double t1, double t2);
// Linear interpolation of a series at time t inside the grid.
double value_at(const ObservableSeries& series, double t);

struct InteractionTimeStudy {
  std::vector<double> vs;
  std::vector<std::optional<double>> t_int;
  std::optional<InteractionTimeFit> fit;
  RunRecord baseline;
  std::vector<RunRecord> runs;
};

// Runs the V = 0 baseline (free-fermion engine) and every V with the same phase
// samples, extracts t_int from the aggregate concurrence and fits c V^-a + b.
InteractionTimeStudy run_interaction_time_study(const ExperimentConfig& base,
                                                std::span<const double> vs, double eps,
                                                int debounce = 3);

}  // namespace mblent
