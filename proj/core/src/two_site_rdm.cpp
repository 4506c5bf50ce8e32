#include "mblent/two_site_rdm.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mblent {

TwoSiteRDM TwoSiteRDM::from_blocks(const RdmBlocks& b) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = b.p_uu;
  rho(1, 1) = b.p_ud;
  rho(2, 2) = b.p_du;
  rho(3, 3) = b.p_dd;
  rho(1, 2) = b.coherence;
  rho(2, 1) = std::conj(b.coherence);
  return TwoSiteRDM(rho);
}

double TwoSiteRDM::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double TwoSiteRDM::min_eigenvalue() const {
  const Eigen::Matrix4cd herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[0];
}

double TwoSiteRDM::off_block_magnitude() const {
  // Magnetisation of {uu, ud, du, dd} is {+1, 0, 0, -1}.
  constexpr int block[4] = {1, 0, 0, -1};
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (block[a] != block[b]) worst = std::max(worst, std::abs(rho_(a, b)));
    }
  }
  return worst;
}

RdmBlocks TwoSiteRDM::blocks() const {
  if (!is_block_diagonal()) {
    throw std::invalid_argument("TwoSiteRDM::blocks: matrix is not S^z block-diagonal");
  }
  return {rho_(0, 0).real(), rho_(1, 1).real(), rho_(2, 2).real(), rho_(3, 3).real(), rho_(1, 2)};
}

bool TwoSiteRDM::is_valid() const {
  return hermiticity_error() <= kHermitianTol && std::abs(trace() - 1.0) <= kTraceTol &&
         min_eigenvalue() >= -kPositivityTol;
}

}  // namespace mblent
