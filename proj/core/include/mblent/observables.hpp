#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "mblent/model.hpp"
#include "mblent/two_site_rdm.hpp"

namespace mblent {

// Reduced density matrix of sites i < j (0-based) by partial trace.
TwoSiteRDM two_site_rdm(const SectorState& psi, int i, int j);

// Wootters concurrence max{0, l1 - l2 - l3 - l4}; the l's are the singular
// values of W^T (sy x sy) W for any factor rho = W W^H, i.e. the square roots of
// the eigenvalues of rho * rho_tilde.
double wootters_concurrence(const TwoSiteRDM& rho);

// Closed form for S^z-conserving states: 2 max[0, |coherence| - sqrt(p_uu p_dd)].
double sector_concurrence(double p_uu, double p_dd, Complex coherence);
double sector_concurrence(const RdmBlocks& blocks);

// Lower bound that only keeps Re(coherence), accessible with global pulses.
double concurrence_bound(const TwoSiteRDM& rho);

// Inclusive 0-based site range of the bulk, lattice coordinates [ceil(L/3), floor(2L/3)].
struct BulkWindow {
  int first = 0;
  int last = -1;

  bool contains(int site) const { return site >= first && site <= last; }
  int size() const { return last - first + 1; }
};
BulkWindow bulk_window(int L);

struct SitePair {
  int i = 0;
  int j = 0;
  int distance() const { return j - i; }
  friend bool operator==(const SitePair&, const SitePair&) = default;
};

// Unordered bulk pairs i < j with j - i <= r_max, in lexicographic order.
std::vector<SitePair> bulk_pairs(const BulkWindow& window, int r_max);

// Sum over unordered bulk pairs of the squared disorder-averaged concurrence.
// avg_c is an L x L symmetric matrix; entries outside the bulk are ignored.
double aggregate_concurrence(const Eigen::MatrixXd& avg_c, int L);
double aggregate_concurrence(std::span<const double> pair_means);

// Pairwise concurrence values on a time grid, one column per pair.
struct ConcurrenceField {
  std::vector<double> times;
  std::vector<SitePair> pairs;
  Eigen::MatrixXd values;  // times x pairs

  double at(std::size_t time_index, int i, int j) const;
};

// Even/odd sublattice imbalance over the bulk window, sign fixed so that the
// Neel state (site 0 up) gives +1. zprofile holds <S^z> per 0-based site.
double imbalance(std::span<const double> zprofile, int L);
double imbalance(std::span<const double> zprofile, const BulkWindow& window);

// -sum p ln p over a probability vector; entries below 1e-300 are skipped.
double shannon_entropy(std::span<const double> probabilities);

// Von Neumann entropy (nats) of the left half of the chain.
double half_chain_entropy(const SectorState& psi);

}  // namespace mblent
