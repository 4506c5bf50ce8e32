#include "mblent/spectral.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "mblent/errors.hpp"
#include "mblent/io.hpp"
#include "mblent/parallel.hpp"
#include "mblent/propagator.hpp"

namespace mblent {

std::vector<double> gap_ratios(std::span<const double> spectrum) {
  if (spectrum.size() < 3) throw std::invalid_argument("gap_ratios: need at least 3 levels");
  for (std::size_t n = 1; n < spectrum.size(); ++n) {
    if (spectrum[n] < spectrum[n - 1]) {
      throw std::invalid_argument("gap_ratios: spectrum is not ascending");
    }
  }
  std::vector<double> r(spectrum.size() - 2);
  for (std::size_t n = 0; n + 2 < spectrum.size(); ++n) {
    const double d0 = spectrum[n + 1] - spectrum[n];
    const double d1 = spectrum[n + 2] - spectrum[n + 1];
    const double hi = std::max(d0, d1);
    r[n] = hi > 0.0 ? std::min(d0, d1) / hi : 0.0;
  }
  return r;
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

GapRatioStats mean_gap_ratio(const ModelParams& params, std::size_t n_phi, std::uint64_t seed) {
  if (n_phi == 0) throw std::invalid_argument("mean_gap_ratio: need at least one realization");
  auto basis = build_sector_basis(params.L);
  if (basis->size() > kMaxDenseDimension) {
    // Fail before spawning any work.
    throw CapacityError("mean_gap_ratio: sector dimension exceeds the dense limit");
  }
  GapRatioStats stats;
  stats.per_realization.assign(n_phi, 0.0);
  parallel_for(n_phi, [&](std::size_t k) {
    auto rng = realization_rng(seed, k);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    ModelParams p = params;
    p.phi = phase(rng);
    const DenseSpectrum spec = dense_spectrum(build_hamiltonian(p, *basis));
    const auto& ev = spec.eigenvalues;
    const std::vector<double> r = gap_ratios(std::span<const double>(ev.data(), ev.size()));
    stats.per_realization[k] = mean_of(r);
  });
  stats.realizations = n_phi;
  stats.mean = mean_of(stats.per_realization);
  if (n_phi > 1) {
    double ss = 0.0;
    for (double v : stats.per_realization) ss += (v - stats.mean) * (v - stats.mean);
    stats.stderr_mean = std::sqrt(ss / static_cast<double>(n_phi - 1) / static_cast<double>(n_phi));
  }
  return stats;
}

std::vector<PhasePoint> phase_scan(std::span<const double> deltas, std::span<const double> vs,
                                   const ModelParams& base, std::size_t n_phi,
                                   std::uint64_t seed) {
  if (deltas.empty() || vs.empty()) throw std::invalid_argument("phase_scan: empty grid");
  std::vector<PhasePoint> out;
  out.reserve(deltas.size() * vs.size());
  for (double d : deltas) {
    for (double v : vs) {
      ModelParams p = base;
      p.delta = d;
      p.V = v;
      out.push_back({d, v, mean_gap_ratio(p, n_phi, seed)});
    }
  }
  return out;
}

void write_phase_scan_csv(std::ostream& os, std::span<const PhasePoint> points) {
  os << "delta,v,r_mean,r_stderr,n_real\n";
  for (const PhasePoint& pt : points) {
    os << format_double(pt.delta) << ',' << format_double(pt.V) << ','
       << format_double(pt.stats.mean) << ',' << format_double(pt.stats.stderr_mean) << ','
       << pt.stats.realizations << '\n';
  }
}

}  // namespace mblent
