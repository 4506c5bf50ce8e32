#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mblent/model.hpp"

namespace mblent {

// r_n = min(d_n, d_{n+1}) / max(d_n, d_{n+1}) over consecutive gaps of an
// ascending spectrum; two vanishing gaps give r = 0.
std::vector<double> gap_ratios(std::span<const double> spectrum);
double mean_of(std::span<const double> values);

struct GapRatioStats {
  std::vector<double> per_realization;  // spectrum-averaged r for each phase sample
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t realizations = 0;
};

// Full dense spectrum for n_phi phase samples (phi uniform in [0, 2pi), drawn
// from seed); params.phi is ignored.
GapRatioStats mean_gap_ratio(const ModelParams& params, std::size_t n_phi, std::uint64_t seed);

struct PhasePoint {
  double delta = 0.0;
  double V = 0.0;
  GapRatioStats stats;
};

// One mean_gap_ratio per (delta, V); every point reuses the same phase samples.
std::vector<PhasePoint> phase_scan(std::span<const double> deltas, std::span<const double> vs,
                                   const ModelParams& base, std::size_t n_phi,
                                   std::uint64_t seed);

// Columns: delta, v, r_mean, r_stderr, n_real.
void write_phase_scan_csv(std::ostream& os, std::span<const PhasePoint> points);

}  // namespace mblent
