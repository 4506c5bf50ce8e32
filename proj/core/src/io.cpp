#include "mblent/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mblent/errors.hpp"

#ifndef MBLENT_VERSION
#define MBLENT_VERSION "unknown"
#endif

namespace mblent {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_series_csv(std::ostream& os, const ObservableSeries& s) {
  s.validate();
  os << "time,mean,variance,n_real\n";
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    os << format_double(s.times[k]) << ',' << format_double(s.mean[k]) << ','
       << format_double(s.variance[k]) << ',' << s.n_realizations << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("CSV: cannot parse number '" + text + "'");
  }
  return v;
}

}  // namespace

ObservableSeries read_series_csv(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("CSV '" + name + "': empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "time,mean,variance,n_real") {
    throw std::invalid_argument("CSV '" + name + "': unexpected header '" + line + "'");
  }
  ObservableSeries s;
  s.name = name;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 4) throw std::invalid_argument("CSV '" + name + "': expected 4 columns");
    s.times.push_back(parse_double(cells[0]));
    s.mean.push_back(parse_double(cells[1]));
    s.variance.push_back(parse_double(cells[2]));
    s.n_realizations = static_cast<std::size_t>(parse_double(cells[3]));
  }
  s.validate();
  return s;
}

ObservableSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_series_csv(in, path.stem().string());
}

void write_pairs_csv(std::ostream& os, std::span<const double> times,
                     std::span<const PairSeries> pairs) {
  os << "time,i,j,mean,variance\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (const PairSeries& p : pairs) {
      os << format_double(times[k]) << ',' << p.pair.i + 1 << ',' << p.pair.j + 1 << ','
         << format_double(p.mean[k]) << ',' << format_double(p.variance[k]) << '\n';
    }
  }
}

namespace {

ordered_json config_object(const ExperimentConfig& cfg) {
  ordered_json j;
  j["engine"] = to_string(cfg.engine);
  if (cfg.engine == Engine::Lbit) {
    j["lbit"] = {{"L", cfg.lbit.L},
                 {"W", cfg.lbit.W},
                 {"alpha", cfg.lbit.alpha},
                 {"h_scale", cfg.lbit.h_scale}};
  } else {
    j["model"] = {{"L", cfg.model.L},
                  {"J", cfg.model.J},
                  {"V", cfg.model.V},
                  {"delta", cfg.model.delta},
                  {"beta", {cfg.model.beta.num, cfg.model.beta.den}}};
  }
  j["grid"] = {{"start", cfg.grid.start},
               {"stop", cfg.grid.stop},
               {"points", cfg.grid.points},
               {"spacing", to_string(cfg.grid.spacing)}};
  j["realizations"] = cfg.realizations;
  j["seed"] = cfg.seed;
  ordered_json obs = ordered_json::array();
  if (cfg.observables.concurrence) obs.push_back("concurrence");
  if (cfg.observables.bound) obs.push_back("concurrence_bound");
  if (cfg.observables.imbalance) obs.push_back("imbalance");
  if (cfg.observables.entropy) obs.push_back("entropy");
  j["observables"] = obs;
  const BulkWindow w = cfg.resolved_bulk();
  j["bulk_window"] = {w.first + 1, w.last + 1};
  j["r_max"] = cfg.r_max;
  if (cfg.engine == Engine::Exact) {
    j["krylov"] = {{"dt", cfg.krylov.dt}, {"m", cfg.krylov.m}, {"tol", cfg.krylov.tol}};
  }
  return j;
}

}  // namespace

std::string config_json(const ExperimentConfig& cfg) { return config_object(cfg).dump(); }

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config_json(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string metadata_json(const RunRecord& run) {
  ordered_json j;
  j["code_version"] = MBLENT_VERSION;
  j["config"] = config_object(run.config);
  j["config_hash"] = config_hash(run.config);
  j["seed"] = run.config.seed;
  j["site_convention"] = "1-based lattice coordinates; site 1 starts spin up";
  ordered_json files = ordered_json::array();
  for (const auto& s : run.series) files.push_back(s.name + ".csv");
  if (!run.pairs.empty()) files.push_back("pairs.csv");
  if (!run.bound_pairs.empty()) files.push_back("pairs_bound.csv");
  j["files"] = files;
  j["wall_time_seconds"] = run.wall_seconds;
  return j.dump(2) + "\n";
}

std::string fit_json(const FitResult& fit, const std::string& series_name) {
  ordered_json j;
  j["series"] = series_name;
  j["model"] = to_string(fit.model);
  j["exponent"] = fit.exponent;
  j["amplitude"] = fit.amplitude;
  j["offset"] = fit.offset;
  j["window"] = {fit.window.t1, fit.window.t2};
  j["r2"] = fit.r2;
  j["stderr_exponent"] = fit.stderr_exponent;
  j["stderr_amplitude"] = fit.stderr_amplitude;
  j["points"] = fit.points;
  return j.dump(2) + "\n";
}

void write_run(const RunRecord& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  for (const auto& s : run.series) {
    auto out = open(s.name + ".csv");
    write_series_csv(out, s);
  }
  if (!run.pairs.empty()) {
    auto out = open("pairs.csv");
    write_pairs_csv(out, run.times, run.pairs);
  }
  if (!run.bound_pairs.empty()) {
    auto out = open("pairs_bound.csv");
    write_pairs_csv(out, run.times, run.bound_pairs);
  }
  auto meta = open("metadata.json");
  meta << metadata_json(run);
}

}  // namespace mblent
