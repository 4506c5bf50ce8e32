#pragma once

#include <functional>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "mblent/model.hpp"

namespace mblent {

// Lanczos exponential propagation settings. dt is the largest substep; a
// substep is halved whenever m Krylov vectors do not reach tol.
struct KrylovConfig {
  double dt = 0.05;
  int m = 30;
  double tol = 1e-10;

  void validate(std::size_t dimension) const;
};

struct KrylovStats {
  std::size_t substeps = 0;
  std::size_t matvecs = 0;
  std::size_t rejected = 0;
};

// Advances psi by exp(-i H tau) for a signed duration tau.
KrylovStats propagate(const SparseHamiltonian& H, Eigen::VectorXcd& psi, double tau,
                      const KrylovConfig& cfg);

using StateObserver = std::function<void(std::size_t index, double time, const SectorState&)>;

// Evolves psi0 from t = 0 and reports the state at each time of an ascending
// grid with times >= 0.
KrylovStats evolve(const SparseHamiltonian& H, const SectorState& psi0,
                   std::span<const double> times, const KrylovConfig& cfg,
                   const StateObserver& observer);

std::vector<SectorState> evolve_states(const SparseHamiltonian& H, const SectorState& psi0,
                                       std::span<const double> times,
                                       const KrylovConfig& cfg = {});

inline constexpr std::size_t kMaxDenseDimension = 3432;  // binomial(14, 7)

struct DenseSpectrum {
  Eigen::VectorXd eigenvalues;                 // ascending
  std::optional<Eigen::MatrixXd> eigenvectors;  // columns, when requested
};

DenseSpectrum dense_spectrum(const SparseHamiltonian& H, bool with_vectors = false);

}  // namespace mblent
