#include "mblent/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mblent/errors.hpp"

namespace mblent {

Rational Rational::reduced() const {
  const std::int64_t g = std::gcd(num, den);
  if (g == 0) return *this;
  return {num / g, den / g};
}

void ModelParams::validate() const {
  if (L < 2 || L % 2 != 0) {
    throw std::invalid_argument("ModelParams: L must be even and >= 2, got " + std::to_string(L));
  }
  if (!(J > 0.0)) throw std::invalid_argument("ModelParams: J must be positive");
  if (beta.den <= 0 || beta.num <= 0 || beta.num >= beta.den) {
    throw std::invalid_argument("ModelParams: beta must be a rational in (0, 1)");
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw std::invalid_argument("ModelParams: phi must lie in [0, 2pi)");
  }
  if (!std::isfinite(V) || !std::isfinite(delta)) {
    throw std::invalid_argument("ModelParams: V and delta must be finite");
  }
}

double quasiperiodic_field(const ModelParams& params, int j) {
  if (j < 1 || j > params.L) {
    throw std::out_of_range("quasiperiodic_field: lattice coordinate " + std::to_string(j) +
                            " outside [1, " + std::to_string(params.L) + "]");
  }
  const Rational b = params.beta.reduced();
  // (p * j) mod q keeps the argument exact for arbitrarily large j.
  const std::int64_t residue = (b.num % b.den) * static_cast<std::int64_t>(j) % b.den;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double arg =
      two_pi * static_cast<long double>(residue) / static_cast<long double>(b.den) +
      static_cast<long double>(params.phi);
  return params.delta * static_cast<double>(std::cos(arg));
}

std::vector<double> field_profile(const ModelParams& params) {
  std::vector<double> h(static_cast<std::size_t>(params.L));
  for (int site = 0; site < params.L; ++site) h[site] = quasiperiodic_field(params, site + 1);
  return h;
}

SectorBasis::SectorBasis(int L) : L_(L) {
  if (L < 2 || L % 2 != 0) {
    throw std::invalid_argument("SectorBasis: L must be even and >= 2, got " + std::to_string(L));
  }
  if (L > kMaxSectorSites) {
    throw CapacityError("SectorBasis: L=" + std::to_string(L) + " exceeds the limit of " +
                        std::to_string(kMaxSectorSites) + " sites");
  }
  const int k = L / 2;
  binom_.assign(L + 1, std::vector<std::size_t>(k + 2, 0));
  for (int n = 0; n <= L; ++n) {
    binom_[n][0] = 1;
    for (int r = 1; r <= std::min(n, k + 1); ++r) {
      binom_[n][r] = binom_[n - 1][r - 1] + (r <= n - 1 ? binom_[n - 1][r] : 0);
    }
  }
  states_.reserve(binom_[L][k]);
  // Gosper's hack walks the k-subsets in increasing numeric order.
  Pattern v = (Pattern{1} << k) - 1;
  const Pattern limit = Pattern{1} << L;
  while (v < limit) {
    states_.push_back(v);
    const Pattern c = v & (~v + 1);
    const Pattern r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

bool SectorBasis::contains(Pattern pattern) const {
  return (pattern >> L_) == 0 && std::popcount(pattern) == L_ / 2;
}

std::size_t SectorBasis::index(Pattern pattern) const {
  if (!contains(pattern)) throw std::out_of_range("SectorBasis::index: pattern not in sector");
  // Combinatorial number system: rank in colex order equals rank in numeric order.
  std::size_t rank = 0;
  int seen = 0;
  while (pattern != 0) {
    const int pos = std::countr_zero(pattern);
    ++seen;
    rank += binom_[pos][seen];
    pattern &= pattern - 1;
  }
  return rank;
}

std::shared_ptr<const SectorBasis> build_sector_basis(int L) {
  return std::make_shared<const SectorBasis>(L);
}

SectorState::SectorState(std::shared_ptr<const SectorBasis> basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("SectorState: null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw std::invalid_argument("SectorState: amplitude vector does not match basis dimension");
  }
}

std::vector<double> SectorState::sz_profile() const {
  const int L = basis_->sites();
  std::vector<double> up(static_cast<std::size_t>(L), 0.0);
  for (std::size_t s = 0; s < basis_->size(); ++s) {
    const double w = std::norm(amplitudes_[static_cast<Eigen::Index>(s)]);
    if (w == 0.0) continue;
    Pattern p = basis_->state(s);
    while (p != 0) {
      up[std::countr_zero(p)] += w;
      p &= p - 1;
    }
  }
  const double total = amplitudes_.squaredNorm();
  std::vector<double> sz(up.size());
  for (std::size_t i = 0; i < up.size(); ++i) sz[i] = up[i] - 0.5 * total;
  return sz;
}

SparseHamiltonian::SparseHamiltonian(std::size_t dim, std::vector<std::size_t> row_ptr,
                                     std::vector<std::uint32_t> cols, std::vector<double> values)
    : dim_(dim), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values)) {
  if (row_ptr_.size() != dim_ + 1 || cols_.size() != values_.size() ||
      row_ptr_.back() != values_.size()) {
    throw std::invalid_argument("SparseHamiltonian: inconsistent CSR arrays");
  }
}

void SparseHamiltonian::apply(const Eigen::Ref<const Eigen::VectorXcd>& in,
                              Eigen::VectorXcd& out) const {
  out.resize(static_cast<Eigen::Index>(dim_));
  const Complex* x = in.data();
  Complex* y = out.data();
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

Eigen::MatrixXd SparseHamiltonian::to_dense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                                static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      dense(static_cast<Eigen::Index>(r), cols_[k]) += values_[k];
    }
  }
  return dense;
}

double SparseHamiltonian::coefficient(std::size_t row, std::size_t col) const {
  double v = 0.0;
  for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
    if (cols_[k] == col) v += values_[k];
  }
  return v;
}

double SparseHamiltonian::norm_bound() const {
  double best = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[k]);
    best = std::max(best, s);
  }
  return best;
}

double SparseHamiltonian::trace() const {
  double t = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) t += coefficient(r, r);
  return t;
}

Complex SparseHamiltonian::expectation(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd hpsi;
  apply(psi, hpsi);
  return psi.dot(hpsi);
}

SparseHamiltonian build_hamiltonian(const ModelParams& params, const SectorBasis& basis) {
  params.validate();
  if (basis.sites() != params.L) {
    throw std::invalid_argument("build_hamiltonian: basis built for L=" +
                                std::to_string(basis.sites()) + " but params.L=" +
                                std::to_string(params.L));
  }
  const int L = params.L;
  const std::vector<double> field = field_profile(params);
  const std::size_t dim = basis.size();

  std::vector<std::size_t> row_ptr;
  std::vector<std::uint32_t> cols;
  std::vector<double> values;
  row_ptr.reserve(dim + 1);
  cols.reserve(dim * static_cast<std::size_t>(L / 2 + 1));
  values.reserve(cols.capacity());
  row_ptr.push_back(0);

  for (std::size_t s = 0; s < dim; ++s) {
    const Pattern p = basis.state(s);
    double diag = 0.0;
    for (int j = 0; j < L; ++j) {
      const double sz = ((p >> j) & 1U) ? 0.5 : -0.5;
      diag += field[j] * sz;
      if (j + 1 < L) {
        const double sz_next = ((p >> (j + 1)) & 1U) ? 0.5 : -0.5;
        diag -= params.V * sz * sz_next;
      }
    }
    // Entries of one row are emitted in column order for cache-friendly products.
    struct Entry {
      std::uint32_t col;
      double value;
    };
    std::vector<Entry> row;
    row.push_back({static_cast<std::uint32_t>(s), diag});
    for (int j = 0; j + 1 < L; ++j) {
      const Pattern pair = (p >> j) & 3U;
      if (pair == 1U || pair == 2U) {
        const Pattern flipped = p ^ (Pattern{3} << j);
        row.push_back({static_cast<std::uint32_t>(basis.index(flipped)), -params.J});
      }
    }
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (const Entry& e : row) {
      cols.push_back(e.col);
      values.push_back(e.value);
    }
    row_ptr.push_back(cols.size());
  }
  return SparseHamiltonian(dim, std::move(row_ptr), std::move(cols), std::move(values));
}

Pattern neel_pattern(int L) {
  Pattern p = 0;
  for (int site = 0; site < L; site += 2) p |= Pattern{1} << site;
  return p;
}

SectorState neel_state(std::shared_ptr<const SectorBasis> basis) {
  if (!basis) throw std::invalid_argument("neel_state: null basis");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  amps[static_cast<Eigen::Index>(basis->index(neel_pattern(basis->sites())))] = 1.0;
  return SectorState(std::move(basis), std::move(amps));
}

}  // namespace mblent
