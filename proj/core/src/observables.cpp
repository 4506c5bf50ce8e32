#include "mblent/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mblent/errors.hpp"

namespace mblent {

namespace {

constexpr double kNegativeTol = 1e-9;

int local_index(bool up_i, bool up_j) { return 2 * (up_i ? 0 : 1) + (up_j ? 0 : 1); }

void check_blocks(double p_uu, double p_dd) {
  if (p_uu < -kNegativeTol || p_dd < -kNegativeTol) {
    throw std::invalid_argument("sector concurrence: negative population");
  }
}

}  // namespace

TwoSiteRDM two_site_rdm(const SectorState& psi, int i, int j) {
  const int L = psi.sites();
  if (i < 0 || j >= L || i >= j) {
    throw std::out_of_range("two_site_rdm: need 0 <= i < j < L, got i=" + std::to_string(i) +
                            " j=" + std::to_string(j));
  }
  const SectorBasis& basis = psi.basis();
  const Eigen::VectorXcd& c = psi.amplitudes();
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const Pattern swap_mask = (Pattern{1} << i) | (Pattern{1} << j);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const Complex amp = c[static_cast<Eigen::Index>(s)];
    if (amp == Complex{}) continue;
    const Pattern p = basis.state(s);
    const bool up_i = (p >> i) & 1U;
    const bool up_j = (p >> j) & 1U;
    const int a = local_index(up_i, up_j);
    rho(a, a) += std::norm(amp);
    if (up_i && !up_j) {
      // <ud| rho |du> = sum_rest c(ud, rest) conj(c(du, rest))
      const std::size_t partner = basis.index(p ^ swap_mask);
      const Complex coh = amp * std::conj(c[static_cast<Eigen::Index>(partner)]);
      rho(1, 2) += coh;
      rho(2, 1) += std::conj(coh);
    }
  }
  return TwoSiteRDM(rho);
}

double wootters_concurrence(const TwoSiteRDM& rdm) {
  if (rdm.hermiticity_error() > TwoSiteRDM::kHermitianTol) {
    throw std::invalid_argument("wootters_concurrence: matrix is not Hermitian");
  }
  const Eigen::Matrix4cd herm = 0.5 * (rdm.matrix() + rdm.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(herm);
  const double scale = std::max(std::abs(herm.trace()), 1e-300);
  Eigen::Matrix4cd factor = eig.eigenvectors();
  for (int k = 0; k < 4; ++k) {
    const double w = eig.eigenvalues()[k];
    // Eigenvalues at round-off level carry no weight.
    factor.col(k) *= (w > 1e-14 * scale) ? std::sqrt(w) : 0.0;
  }
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4cd tau = factor.transpose() * flip * factor;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double sector_concurrence(double p_uu, double p_dd, Complex coherence) {
  check_blocks(p_uu, p_dd);
  const double prod = std::max(p_uu, 0.0) * std::max(p_dd, 0.0);
  return 2.0 * std::max(0.0, std::abs(coherence) - std::sqrt(prod));
}

double sector_concurrence(const RdmBlocks& b) { return sector_concurrence(b.p_uu, b.p_dd, b.coherence); }

double concurrence_bound(const TwoSiteRDM& rho) {
  const RdmBlocks b = rho.blocks();
  return sector_concurrence(b.p_uu, b.p_dd, Complex{b.coherence.real(), 0.0});
}

BulkWindow bulk_window(int L) {
  if (L < 1) throw std::invalid_argument("bulk_window: L must be positive");
  const int lo = (L + 2) / 3;  // ceil(L/3)
  const int hi = (2 * L) / 3;  // floor(2L/3)
  return {lo - 1, hi - 1};
}

std::vector<SitePair> bulk_pairs(const BulkWindow& window, int r_max) {
  std::vector<SitePair> pairs;
  for (int i = window.first; i <= window.last; ++i) {
    for (int j = i + 1; j <= window.last && j - i <= r_max; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

double aggregate_concurrence(const Eigen::MatrixXd& avg_c, int L) {
  if (avg_c.rows() != L || avg_c.cols() != L) {
    throw std::invalid_argument("aggregate_concurrence: matrix must be L x L");
  }
  const BulkWindow w = bulk_window(L);
  double total = 0.0;
  for (int i = w.first; i <= w.last; ++i) {
    for (int j = i + 1; j <= w.last; ++j) total += avg_c(i, j) * avg_c(i, j);
  }
  return total;
}

double aggregate_concurrence(std::span<const double> pair_means) {
  double total = 0.0;
  for (double c : pair_means) total += c * c;
  return total;
}

double ConcurrenceField::at(std::size_t time_index, int i, int j) const {
  if (i > j) std::swap(i, j);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k].i == i && pairs[k].j == j) {
      return values(static_cast<Eigen::Index>(time_index), static_cast<Eigen::Index>(k));
    }
  }
  return 0.0;
}

double imbalance(std::span<const double> zprofile, const BulkWindow& window) {
  double even = 0.0;
  double odd = 0.0;
  int n_even = 0;
  int n_odd = 0;
  for (int site = window.first; site <= window.last; ++site) {
    // Lattice coordinate is site + 1.
    if ((site + 1) % 2 == 0) {
      even += zprofile[site];
      ++n_even;
    } else {
      odd += zprofile[site];
      ++n_odd;
    }
  }
  if (n_even == 0 || n_odd == 0) throw DegenerateInput("imbalance: bulk lacks a sublattice");
  even /= n_even;
  odd /= n_odd;
  const double denom = 1.0 + even + odd;
  if (std::abs(denom) < 1e-9) throw DegenerateInput("imbalance: vanishing normalisation");
  return (odd - even) / denom;
}

double imbalance(std::span<const double> zprofile, int L) {
  if (static_cast<int>(zprofile.size()) != L) {
    throw std::invalid_argument("imbalance: profile length differs from L");
  }
  return imbalance(zprofile, bulk_window(L));
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

double half_chain_entropy(const SectorState& psi) {
  const int L = psi.sites();
  const int half = L / 2;
  const Pattern mask = (Pattern{1} << half) - 1;
  const std::size_t n_half = std::size_t{1} << half;

  // Rank of each half-chain pattern among those with equal particle number.
  std::vector<int> rank(n_half);
  std::vector<int> count(half + 1, 0);
  for (std::size_t p = 0; p < n_half; ++p) rank[p] = count[std::popcount(p)]++;

  std::vector<Eigen::MatrixXcd> blocks(half + 1);
  for (int n = 0; n <= half; ++n) blocks[n] = Eigen::MatrixXcd::Zero(count[n], count[half - n]);
  const SectorBasis& basis = psi.basis();
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const Pattern p = basis.state(s);
    const Pattern left = p & mask;
    const Pattern right = p >> half;
    blocks[std::popcount(left)](rank[left], rank[right]) = psi.amplitudes()[static_cast<Eigen::Index>(s)];
  }
  std::vector<double> schmidt_weights;
  for (const Eigen::MatrixXcd& m : blocks) {
    if (m.size() == 0) continue;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      const double sv = svd.singularValues()[k];
      schmidt_weights.push_back(sv * sv);
    }
  }
  return std::max(0.0, shannon_entropy(schmidt_weights));
}

}  // namespace mblent
