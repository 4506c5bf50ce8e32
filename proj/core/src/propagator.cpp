#include "mblent/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mblent/errors.hpp"

namespace mblent {

void KrylovConfig::validate(std::size_t dimension) const {
  if (!(dt > 0.0)) throw std::invalid_argument("KrylovConfig: dt must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("KrylovConfig: tol must be positive");
  if (m < 2) throw std::invalid_argument("KrylovConfig: m must be at least 2");
  (void)dimension;  // m above the dimension is clipped, breakdown ends the recursion
}

namespace {

constexpr int kMaxHalvings = 40;

struct Workspace {
  Eigen::MatrixXcd basis;  // Krylov vectors as columns
  Eigen::VectorXcd w;
  Eigen::VectorXcd overlap;
  std::vector<double> alpha;
  std::vector<double> beta;
};

// Returns false when m vectors were not enough to reach cfg.tol.
bool krylov_substep(const SparseHamiltonian& H, Eigen::VectorXcd& psi, double tau,
                    const KrylovConfig& cfg, Workspace& ws, KrylovStats& stats) {
  const double beta0 = psi.norm();
  if (beta0 == 0.0) return true;
  const auto dim = static_cast<Eigen::Index>(H.dimension());
  const int m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.m),
                                                       H.dimension()));
  if (ws.basis.rows() != dim || ws.basis.cols() < m) ws.basis.resize(dim, m);
  ws.alpha.assign(m, 0.0);
  ws.beta.assign(m, 0.0);
  ws.basis.col(0) = psi / beta0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  Eigen::VectorXcd coeffs;
  for (int k = 0; k < m; ++k) {
    H.apply(ws.basis.col(k), ws.w);
    ++stats.matvecs;
    const double a = ws.basis.col(k).dot(ws.w).real();
    ws.w -= a * ws.basis.col(k);
    if (k > 0) ws.w -= ws.beta[k - 1] * ws.basis.col(k - 1);
    // Full reorthogonalisation keeps the small problem faithful.
    const auto V = ws.basis.leftCols(k + 1);
    ws.overlap.noalias() = V.adjoint() * ws.w;
    ws.w.noalias() -= V * ws.overlap;
    const double b = ws.w.norm();
    ws.alpha[k] = a;

    const int n = k + 1;
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag[i] = ws.alpha[i];
    for (int i = 0; i + 1 < n; ++i) sub[i] = ws.beta[i];
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& Q = tri.eigenvectors();
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) {
      phases[i] = std::polar(1.0, -tri.eigenvalues()[i] * tau) * Q(0, i);
    }
    coeffs = Q.cast<Complex>() * phases;

    const bool breakdown = b <= 1e-13 * (1.0 + std::abs(a));
    const double err = b * std::abs(coeffs[n - 1]);
    if (breakdown || err < cfg.tol || n == dim) {
      psi.noalias() = ws.basis.leftCols(n) * coeffs;
      psi *= beta0;
      ++stats.substeps;
      return true;
    }
    ws.beta[k] = b;
    if (k + 1 < m) ws.basis.col(k + 1) = ws.w / b;
  }
  return false;
}

void advance(const SparseHamiltonian& H, Eigen::VectorXcd& psi, double tau,
             const KrylovConfig& cfg, Workspace& ws, KrylovStats& stats, int depth) {
  if (krylov_substep(H, psi, tau, cfg, ws, stats)) return;
  ++stats.rejected;
  if (depth >= kMaxHalvings) {
    throw NumericalError("propagate: Krylov step did not converge after repeated halving");
  }
  advance(H, psi, 0.5 * tau, cfg, ws, stats, depth + 1);
  advance(H, psi, 0.5 * tau, cfg, ws, stats, depth + 1);
}

void propagate_with(const SparseHamiltonian& H, Eigen::VectorXcd& psi, double tau,
                    const KrylovConfig& cfg, Workspace& ws, KrylovStats& stats) {
  if (tau == 0.0) return;
  const auto substeps = static_cast<long>(std::ceil(std::abs(tau) / cfg.dt - 1e-9));
  const double h = tau / static_cast<double>(std::max(substeps, 1L));
  for (long s = 0; s < std::max(substeps, 1L); ++s) advance(H, psi, h, cfg, ws, stats, 0);
}

}  // namespace

KrylovStats propagate(const SparseHamiltonian& H, Eigen::VectorXcd& psi, double tau,
                      const KrylovConfig& cfg) {
  cfg.validate(H.dimension());
  if (static_cast<std::size_t>(psi.size()) != H.dimension()) {
    throw std::invalid_argument("propagate: state dimension does not match the Hamiltonian");
  }
  Workspace ws;
  KrylovStats stats;
  propagate_with(H, psi, tau, cfg, ws, stats);
  return stats;
}

KrylovStats evolve(const SparseHamiltonian& H, const SectorState& psi0,
                   std::span<const double> times, const KrylovConfig& cfg,
                   const StateObserver& observer) {
  cfg.validate(H.dimension());
  if (psi0.basis().size() != H.dimension()) {
    throw std::invalid_argument("evolve: state dimension does not match the Hamiltonian");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
      throw std::invalid_argument("evolve: time grid must be ascending and non-negative");
    }
  }
  Workspace ws;
  KrylovStats stats;
  SectorState state = psi0;
  double now = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    propagate_with(H, state.amplitudes(), times[k] - now, cfg, ws, stats);
    now = times[k];
    observer(k, now, state);
  }
  return stats;
}

std::vector<SectorState> evolve_states(const SparseHamiltonian& H, const SectorState& psi0,
                                       std::span<const double> times, const KrylovConfig& cfg) {
  std::vector<SectorState> out;
  out.reserve(times.size());
  evolve(H, psi0, times, cfg,
         [&](std::size_t, double, const SectorState& s) { out.push_back(s); });
  return out;
}

DenseSpectrum dense_spectrum(const SparseHamiltonian& H, bool with_vectors) {
  if (H.dimension() > kMaxDenseDimension) {
    throw CapacityError("dense_spectrum: dimension " + std::to_string(H.dimension()) +
                        " exceeds the dense limit of " + std::to_string(kMaxDenseDimension));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      H.to_dense(), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense_spectrum: eigen-decomposition failed");
  }
  DenseSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  if (with_vectors) out.eigenvectors = solver.eigenvectors();
  return out;
}

}  // namespace mblent
