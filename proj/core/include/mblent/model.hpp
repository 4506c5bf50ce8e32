#pragma once

// Lattice model of an XXZ chain in a quasi-periodic (Aubry-Andre) field,
// restricted to the zero-magnetisation sector.
//
// Sites are 0-based in every API except quasiperiodic_field(), which takes
// the 1-based lattice coordinate j entering cos(2*pi*beta*j + phi).
// Bit k of a basis pattern describes site k: set = spin up = occupied.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace mblent {

using Complex = std::complex<double>;
using Pattern = std::uint32_t;

// Exact rational p/q, used for the inverse wavelength of the potential.
struct Rational {
  std::int64_t num = 532;
  std::int64_t den = 738;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational reduced() const;
};

struct ModelParams {
  int L = 16;
  double J = 1.0;
  double V = 0.0;
  double delta = 0.0;
  Rational beta{};
  double phi = 0.0;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

// Delta * cos(2*pi*beta*j + phi) for lattice coordinate j in [1, L].
// The phase 2*pi*(p*j mod q)/q is reduced exactly in integers before the cosine.
double quasiperiodic_field(const ModelParams& params, int j);

// Fields for all sites, indexed by 0-based site.
std::vector<double> field_profile(const ModelParams& params);

inline constexpr int kMaxSectorSites = 24;

class SectorBasis {
 public:
  // Half-filling patterns of an L-site chain in ascending numeric order.
  explicit SectorBasis(int L);

  int sites() const { return L_; }
  std::size_t size() const { return states_.size(); }
  Pattern state(std::size_t index) const { return states_[index]; }
  std::span<const Pattern> states() const { return states_; }

  // Ordinal of a half-filling pattern; throws std::out_of_range otherwise.
  std::size_t index(Pattern pattern) const;
  bool contains(Pattern pattern) const;

 private:
  int L_;
  std::vector<Pattern> states_;
  // binom_[n][k] for n <= L, k <= L/2
  std::vector<std::vector<std::size_t>> binom_;
};

std::shared_ptr<const SectorBasis> build_sector_basis(int L);

class SectorState {
 public:
  SectorState(std::shared_ptr<const SectorBasis> basis, Eigen::VectorXcd amplitudes);

  const SectorBasis& basis() const { return *basis_; }
  const std::shared_ptr<const SectorBasis>& basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }
  int sites() const { return basis_->sites(); }

  double norm() const { return amplitudes_.norm(); }

  // <S^z_site> for every site.
  std::vector<double> sz_profile() const;

 private:
  std::shared_ptr<const SectorBasis> basis_;
  Eigen::VectorXcd amplitudes_;
};

// Real symmetric sector Hamiltonian in compressed sparse row form.
// All matrix elements are real in the S^z basis, so Hermiticity is symmetry.
class SparseHamiltonian {
 public:
  SparseHamiltonian(std::size_t dim, std::vector<std::size_t> row_ptr,
                    std::vector<std::uint32_t> cols, std::vector<double> values);

  std::size_t dimension() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }
  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::uint32_t> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }

  // out = H * in
  void apply(const Eigen::Ref<const Eigen::VectorXcd>& in, Eigen::VectorXcd& out) const;
  Eigen::MatrixXd to_dense() const;
  double coefficient(std::size_t row, std::size_t col) const;
  // Upper bound on the spectral radius (maximum absolute row sum).
  double norm_bound() const;
  double trace() const;
  Complex expectation(const Eigen::VectorXcd& psi) const;

 private:
  std::size_t dim_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
};

// H = -sum_j [J (S+_j S-_{j+1} + h.c.) + V S^z_j S^z_{j+1}] + sum_j h_j S^z_j, open chain.
SparseHamiltonian build_hamiltonian(const ModelParams& params, const SectorBasis& basis);

// Staggered product state with site 0 up.
SectorState neel_state(std::shared_ptr<const SectorBasis> basis);
Pattern neel_pattern(int L);

}  // namespace mblent
