#include "mblent/ensemble.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mblent/errors.hpp"
#include "mblent/freefermion.hpp"
#include "mblent/parallel.hpp"

namespace mblent {

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::Exact: return "exact";
    case Engine::FreeFermion: return "freefermion";
    case Engine::Lbit: return "lbit";
  }
  return "unknown";
}

Engine parse_engine(const std::string& name) {
  if (name == "exact") return Engine::Exact;
  if (name == "freefermion") return Engine::FreeFermion;
  if (name == "lbit") return Engine::Lbit;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

std::string to_string(Spacing spacing) { return spacing == Spacing::Log ? "log" : "linear"; }

Spacing parse_spacing(const std::string& name) {
  if (name == "log") return Spacing::Log;
  if (name == "linear") return Spacing::Linear;
  throw std::invalid_argument("unknown grid spacing '" + name + "'");
}

void TimeGrid::validate() const {
  if (points < 2) throw std::invalid_argument("TimeGrid: need at least two points");
  if (!(stop > start) || start < 0.0) {
    throw std::invalid_argument("TimeGrid: need 0 <= start < stop");
  }
  if (spacing == Spacing::Log && !(start > 0.0)) {
    throw std::invalid_argument("TimeGrid: logarithmic spacing needs start > 0");
  }
}

std::vector<double> TimeGrid::values() const {
  validate();
  std::vector<double> t(points);
  const double n = static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    const double f = static_cast<double>(k) / n;
    t[k] = spacing == Spacing::Linear ? start + (stop - start) * f
                                      : start * std::pow(stop / start, f);
  }
  t.front() = start;
  t.back() = stop;
  return t;
}

void ExperimentConfig::validate() const {
  grid.validate();
  if (realizations == 0) throw std::invalid_argument("ExperimentConfig: realizations must be >= 1");
  if (r_max < 1) throw std::invalid_argument("ExperimentConfig: r_max must be >= 1");
  const int L = sites();
  switch (engine) {
    case Engine::Exact:
      model.validate();
      if (L > kMaxSectorSites) {
        throw CapacityError("ExperimentConfig: exact engine limited to L <= " +
                            std::to_string(kMaxSectorSites));
      }
      break;
    case Engine::FreeFermion:
      model.validate();
      if (model.V != 0.0) {
        throw std::invalid_argument("ExperimentConfig: freefermion engine requires V = 0");
      }
      if (r_max > 2) {
        throw UnsupportedRange("ExperimentConfig: freefermion engine supports r_max <= 2");
      }
      break;
    case Engine::Lbit:
      lbit.validate();
      if (observables.bound || observables.imbalance || observables.entropy) {
        throw std::invalid_argument(
            "ExperimentConfig: lbit engine only provides the concurrence observable");
      }
      break;
  }
  const BulkWindow w = resolved_bulk();
  if (w.first < 0 || w.last >= L || w.size() < 2) {
    throw std::invalid_argument("ExperimentConfig: bulk window must hold >= 2 sites of the chain");
  }
}

const ObservableSeries& RunRecord::get(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("RunRecord: no series named '" + name + "'");
}

bool RunRecord::has(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return true;
  }
  return false;
}

double variance_of_aggregate(std::span<const double> pair_means,
                             std::span<const double> pair_variance_of_mean) {
  if (pair_means.size() != pair_variance_of_mean.size()) {
    throw std::invalid_argument("variance_of_aggregate: length mismatch");
  }
  double var = 0.0;
  for (std::size_t p = 0; p < pair_means.size(); ++p) {
    const double d = 2.0 * pair_means[p];
    var += d * d * pair_variance_of_mean[p];
  }
  return var;
}

double variance_of_aggregate_full(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.rows();
  if (n < 2) throw std::invalid_argument("variance_of_aggregate_full: need >= 2 realizations");
  const Eigen::RowVectorXd mean = samples.colwise().mean();
  const Eigen::MatrixXd centered = samples.rowwise() - mean;
  const double nn = static_cast<double>(n);
  const Eigen::MatrixXd cov = centered.transpose() * centered / (nn - 1.0);
  const double first = 4.0 * (mean * cov * mean.transpose())(0, 0) / nn;
  const double second = 2.0 * cov.cwiseAbs2().sum() / (nn * nn);
  return first + second;
}

namespace {

struct RealizationResult {
  Eigen::MatrixXd conc;   // times x pairs
  Eigen::MatrixXd bound;  // times x pairs
  std::vector<double> imbalance;
  std::vector<double> entropy;
};

double sample_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  return phase(rng);
}

RealizationResult allocate(std::size_t nt, std::size_t np) {
  RealizationResult r;
  r.conc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(np));
  r.bound = r.conc;
  r.imbalance.assign(nt, 0.0);
  r.entropy.assign(nt, 0.0);
  return r;
}

void record_rdm(RealizationResult& r, std::size_t k, std::size_t p, const TwoSiteRDM& rho) {
  const RdmBlocks b = rho.blocks();
  r.conc(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p)) = sector_concurrence(b);
  r.bound(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p)) = concurrence_bound(rho);
}

RealizationResult run_exact(const ExperimentConfig& cfg, const std::shared_ptr<const SectorBasis>& basis,
                            std::span<const double> times, std::span<const SitePair> pairs,
                            std::mt19937_64& rng) {
  ModelParams p = cfg.model;
  p.phi = sample_phase(rng);
  const SparseHamiltonian H = build_hamiltonian(p, *basis);
  const BulkWindow w = cfg.resolved_bulk();
  RealizationResult r = allocate(times.size(), pairs.size());
  evolve(H, neel_state(basis), times, cfg.krylov, [&](std::size_t k, double, const SectorState& psi) {
    if (cfg.observables.concurrence || cfg.observables.bound) {
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        record_rdm(r, k, q, two_site_rdm(psi, pairs[q].i, pairs[q].j));
      }
    }
    if (cfg.observables.imbalance) r.imbalance[k] = imbalance(psi.sz_profile(), w);
    if (cfg.observables.entropy) r.entropy[k] = half_chain_entropy(psi);
  });
  return r;
}

RealizationResult run_freefermion(const ExperimentConfig& cfg, std::span<const double> times,
                                  std::span<const SitePair> pairs, std::mt19937_64& rng) {
  ModelParams p = cfg.model;
  p.phi = sample_phase(rng);
  const CorrelationPropagator prop(SingleParticleHamiltonian::from_params(p));
  const CorrelationMatrix g0 = neel_correlations(p.L);
  const BulkWindow w = cfg.resolved_bulk();
  RealizationResult r = allocate(times.size(), pairs.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const CorrelationMatrix G = prop.evolve(g0, times[k]);
    if (cfg.observables.concurrence || cfg.observables.bound) {
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        record_rdm(r, k, q, rdm_from_correlations(G, pairs[q].i, pairs[q].j));
      }
    }
    if (cfg.observables.imbalance) r.imbalance[k] = imbalance(sz_profile(G), w);
    if (cfg.observables.entropy) r.entropy[k] = block_entropy_from_correlations(G, 0, p.L / 2);
  }
  return r;
}

RealizationResult run_lbit(const ExperimentConfig& cfg, std::span<const double> times,
                           std::span<const SitePair> pairs, std::mt19937_64& rng) {
  const LbitInstance inst = sample_instance(cfg.lbit, rng);
  const LbitProductState state = sample_product_state(cfg.lbit.L, rng);
  RealizationResult r = allocate(times.size(), pairs.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const TwoSiteRDM rho = lbit_two_site_rdm(inst, state, pairs[q].i, pairs[q].j, times[k]);
      r.conc(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) = wootters_concurrence(rho);
    }
  }
  return r;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // sample variance, 0 for a single realization
};

template <typename Get>
Moments moments(std::size_t n, Get&& get) {
  Moments m;
  for (std::size_t k = 0; k < n; ++k) m.mean += get(k);
  m.mean /= static_cast<double>(n);
  if (n > 1) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = get(k) - m.mean;
      m.variance += d * d;
    }
    m.variance /= static_cast<double>(n - 1);
  }
  return m;
}

std::vector<PairSeries> aggregate_pairs(const std::vector<RealizationResult>& results,
                                        std::span<const SitePair> pairs, std::size_t nt,
                                        bool use_bound) {
  std::vector<PairSeries> out;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    PairSeries ps{pairs[q], std::vector<double>(nt), std::vector<double>(nt)};
    for (std::size_t k = 0; k < nt; ++k) {
      const Moments m = moments(results.size(), [&](std::size_t r) {
        const auto& mat = use_bound ? results[r].bound : results[r].conc;
        return mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q));
      });
      ps.mean[k] = m.mean;
      ps.variance[k] = m.variance;
    }
    out.push_back(std::move(ps));
  }
  return out;
}

ObservableSeries aggregate_concurrence_series(const std::string& name, std::span<const double> times,
                                              const std::vector<PairSeries>& pairs, std::size_t n) {
  ObservableSeries s{name, {times.begin(), times.end()}, {}, {}, n};
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> means, var_of_mean;
    for (const PairSeries& p : pairs) {
      means.push_back(p.mean[k]);
      var_of_mean.push_back(p.variance[k] / static_cast<double>(n));
    }
    s.mean.push_back(aggregate_concurrence(means));
    s.variance.push_back(variance_of_aggregate(means, var_of_mean));
  }
  return s;
}

ObservableSeries scalar_series(const std::string& name, std::span<const double> times,
                               const std::vector<RealizationResult>& results,
                               std::vector<double> RealizationResult::*field) {
  ObservableSeries s{name, {times.begin(), times.end()}, {}, {}, results.size()};
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Moments m =
        moments(results.size(), [&](std::size_t r) { return (results[r].*field)[k]; });
    s.mean.push_back(m.mean);
    s.variance.push_back(m.variance);
  }
  return s;
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::vector<double> times = cfg.grid.values();
  const std::vector<SitePair> pairs = bulk_pairs(cfg.resolved_bulk(), cfg.r_max);
  std::shared_ptr<const SectorBasis> basis;
  if (cfg.engine == Engine::Exact) basis = build_sector_basis(cfg.model.L);

  std::vector<RealizationResult> results(cfg.realizations);
  parallel_for(
      cfg.realizations,
      [&](std::size_t k) {
        auto rng = realization_rng(cfg.seed, k);
        try {
          switch (cfg.engine) {
            case Engine::Exact: results[k] = run_exact(cfg, basis, times, pairs, rng); break;
            case Engine::FreeFermion: results[k] = run_freefermion(cfg, times, pairs, rng); break;
            case Engine::Lbit: results[k] = run_lbit(cfg, times, pairs, rng); break;
          }
        } catch (const NumericalError& e) {
          throw NumericalError("realization " + std::to_string(k) + ": " + e.what());
        } catch (const CapacityError& e) {
          throw CapacityError("realization " + std::to_string(k) + ": " + e.what());
        }
      },
      cfg.workers);

  RunRecord run;
  run.config = cfg;
  run.times = times;
  const std::size_t nt = times.size();
  const std::size_t n = cfg.realizations;
  if (cfg.observables.concurrence) {
    run.pairs = aggregate_pairs(results, pairs, nt, false);
    run.series.push_back(aggregate_concurrence_series("concurrence", times, run.pairs, n));
  }
  if (cfg.observables.bound) {
    run.bound_pairs = aggregate_pairs(results, pairs, nt, true);
    run.series.push_back(
        aggregate_concurrence_series("concurrence_bound", times, run.bound_pairs, n));
  }
  if (cfg.observables.imbalance) {
    run.series.push_back(scalar_series("imbalance", times, results, &RealizationResult::imbalance));
  }
  if (cfg.observables.entropy) {
    run.series.push_back(scalar_series("entropy", times, results, &RealizationResult::entropy));
  }
  if (cfg.keep_realizations) {
    for (auto& r : results) run.realization_concurrence.push_back(std::move(r.conc));
  }
  run.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return run;
}

double mean_bound_gap(const RunRecord& run, std::size_t time_index) {
  if (run.pairs.empty() || run.pairs.size() != run.bound_pairs.size()) {
    throw std::invalid_argument("mean_bound_gap: run lacks concurrence or bound pairs");
  }
  double gap = 0.0;
  for (std::size_t p = 0; p < run.pairs.size(); ++p) {
    gap += std::abs(run.pairs[p].mean[time_index] - run.bound_pairs[p].mean[time_index]);
  }
  return gap / static_cast<double>(run.pairs.size());
}

double time_average(const ObservableSeries& series, double t1, double t2) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    if (series.times[k] >= t1 && series.times[k] <= t2) {
      sum += series.mean[k];
      ++count;
    }
  }
  if (count == 0) throw InvalidWindow("time_average: no grid points inside the window");
  return sum / static_cast<double>(count);
}

double value_at(const ObservableSeries& series, double t) {
  const auto& ts = series.times;
  if (ts.empty() || t < ts.front() || t > ts.back()) {
    throw std::out_of_range("value_at: time outside the series grid");
  }
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (t <= ts[k]) {
      const double f = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
      return series.mean[k - 1] + f * (series.mean[k] - series.mean[k - 1]);
    }
  }
  return series.mean.back();
}

InteractionTimeStudy run_interaction_time_study(const ExperimentConfig& base,
                                                std::span<const double> vs, double eps,
                                                int debounce) {
  if (vs.empty()) throw std::invalid_argument("run_interaction_time_study: no V values");
  InteractionTimeStudy study;
  ExperimentConfig zero = base;
  zero.engine = Engine::FreeFermion;
  zero.model.V = 0.0;
  zero.observables = {true, false, false, false};
  study.baseline = run_experiment(zero);
  const ObservableSeries& reference = study.baseline.get("concurrence");

  std::vector<double> found_v, found_t;
  for (double v : vs) {
    ExperimentConfig cfg = base;
    cfg.model.V = v;
    cfg.observables = {true, false, false, false};
    study.runs.push_back(run_experiment(cfg));
    const auto t = extract_t_int(study.runs.back().get("concurrence"), reference, eps, debounce);
    study.vs.push_back(v);
    study.t_int.push_back(t);
    if (t) {
      found_v.push_back(v);
      found_t.push_back(*t);
    }
  }
  if (found_v.size() >= 3) study.fit = fit_interaction_time(found_v, found_t);
  return study;
}

}  // namespace mblent
