#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mblent/ensemble.hpp"
#include "mblent/fitting.hpp"

namespace mblent {

// Shortest round-trip decimal representation, independent of the locale.
std::string format_double(double value);

// Columns: time, mean, variance, n_real.
void write_series_csv(std::ostream& os, const ObservableSeries& series);
ObservableSeries read_series_csv(std::istream& is, const std::string& name);
ObservableSeries read_series_csv(const std::filesystem::path& path);

// Columns: time, i, j, mean, variance with 1-based lattice coordinates.
void write_pairs_csv(std::ostream& os, std::span<const double> times,
                     std::span<const PairSeries> pairs);

std::string config_json(const ExperimentConfig& cfg);
// FNV-1a 64 of config_json, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);
std::string metadata_json(const RunRecord& run);
std::string fit_json(const FitResult& fit, const std::string& series_name);

// Writes <name>.csv for every series, pairs.csv (and pairs_bound.csv), metadata.json.
void write_run(const RunRecord& run, const std::filesystem::path& dir);

}  // namespace mblent
