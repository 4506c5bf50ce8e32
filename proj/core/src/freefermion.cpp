#include "mblent/freefermion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "mblent/errors.hpp"

namespace mblent {

SingleParticleHamiltonian SingleParticleHamiltonian::from_params(const ModelParams& params) {
  params.validate();
  if (params.V != 0.0) {
    throw std::invalid_argument("SingleParticleHamiltonian: requires V = 0");
  }
  const int L = params.L;
  const std::vector<double> field = field_profile(params);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L, L);
  for (int j = 0; j < L; ++j) {
    h(j, j) = field[j];
    if (j + 1 < L) h(j, j + 1) = h(j + 1, j) = -params.J;
  }
  return {h};
}

CorrelationMatrix neel_correlations(int L) {
  if (L < 2 || L % 2 != 0) {
    throw std::invalid_argument("neel_correlations: L must be even and >= 2, got " +
                                std::to_string(L));
  }
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(L, L);
  for (int j = 0; j < L; j += 2) G(j, j) = 1.0;
  return {G};
}

CorrelationPropagator::CorrelationPropagator(const SingleParticleHamiltonian& h) {
  if (h.h.rows() != h.h.cols()) {
    throw std::invalid_argument("CorrelationPropagator: hopping matrix must be square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("CorrelationPropagator: eigen-decomposition failed");
  }
  energies_ = solver.eigenvalues();
  modes_ = solver.eigenvectors();
}

CorrelationMatrix CorrelationPropagator::evolve(const CorrelationMatrix& G0, double t) const {
  if (G0.sites() != sites() || G0.G.cols() != G0.G.rows()) {
    throw std::invalid_argument("evolve_correlations: shape mismatch");
  }
  if (t == 0.0) return G0;
  const Eigen::MatrixXcd modes = modes_.cast<Complex>();
  Eigen::MatrixXcd U = modes;
  for (int k = 0; k < sites(); ++k) U.col(k) *= std::polar(1.0, energies_[k] * t);
  U = U * modes.transpose();
  CorrelationMatrix out{U * G0.G * U.adjoint()};
  // Restore exact Hermiticity lost to round-off.
  out.G = 0.5 * (out.G + out.G.adjoint()).eval();
  return out;
}

CorrelationMatrix evolve_correlations(const CorrelationMatrix& G0,
                                      const SingleParticleHamiltonian& h, double t) {
  if (G0.sites() != h.sites()) throw std::invalid_argument("evolve_correlations: shape mismatch");
  return CorrelationPropagator(h).evolve(G0, t);
}

TwoSiteRDM rdm_from_correlations(const CorrelationMatrix& G, int i, int j) {
  const int L = G.sites();
  if (i < 0 || j >= L || i >= j) {
    throw std::out_of_range("rdm_from_correlations: need 0 <= i < j < L");
  }
  const int r = j - i;
  if (r > 2) {
    throw UnsupportedRange("rdm_from_correlations: pair distance " + std::to_string(r) +
                           " exceeds the supported range of 2");
  }
  const double ni = G.occupation(i);
  const double nj = G.occupation(j);
  const double hop2 = std::norm(G(i, j));
  RdmBlocks b;
  b.p_uu = ni * nj - hop2;
  b.p_ud = ni * (1.0 - nj) + hop2;
  b.p_du = (1.0 - ni) * nj + hop2;
  b.p_dd = (1.0 - ni) * (1.0 - nj) - hop2;
  // <S+_i S-_j> = <a^dag_i (1 - 2 n_k) a_j> for the middle site k when r = 2.
  Complex raise_lower = G(i, j);
  if (r == 2) {
    const int k = i + 1;
    raise_lower -= 2.0 * (G(i, j) * G(k, k) - G(i, k) * G(k, j));
  }
  // <ud| rho |du> = <S-_i S+_j> = conj(<S+_i S-_j>)
  b.coherence = std::conj(raise_lower);
  return TwoSiteRDM::from_blocks(b);
}

std::vector<double> sz_profile(const CorrelationMatrix& G) {
  std::vector<double> sz(static_cast<std::size_t>(G.sites()));
  for (int j = 0; j < G.sites(); ++j) sz[j] = G.occupation(j) - 0.5;
  return sz;
}

double block_entropy_from_correlations(const CorrelationMatrix& G, int first, int count) {
  if (count <= 0) throw std::invalid_argument("block_entropy_from_correlations: empty block");
  if (first < 0 || first + count > G.sites()) {
    throw std::out_of_range("block_entropy_from_correlations: block outside the lattice");
  }
  const Eigen::MatrixXcd sub = G.G.block(first, first, count, count);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double nu = std::clamp(solver.eigenvalues()[k], 0.0, 1.0);
    if (nu > 1e-300) s -= nu * std::log(nu);
    if (1.0 - nu > 1e-300) s -= (1.0 - nu) * std::log1p(-nu);
  }
  return std::max(0.0, s);
}

}  // namespace mblent
