#pragma once

#include <Eigen/Core>

#include "mblent/model.hpp"

namespace mblent {

// Populations and coherence of an S^z-conserving two-site density matrix.
struct RdmBlocks {
  double p_uu = 0.0;
  double p_ud = 0.0;
  double p_du = 0.0;
  double p_dd = 0.0;
  Complex coherence{0.0, 0.0};  // <up,down| rho |down,up>
};

// Density matrix of two spins in the basis {uu, ud, du, dd}; the first label
// refers to the lower site. Entries are rho(a, b) = <a| rho |b>.
class TwoSiteRDM {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = 1e-9;
  static constexpr double kBlockTol = 1e-10;

  TwoSiteRDM() : rho_(Eigen::Matrix4cd::Zero()) {}
  explicit TwoSiteRDM(const Eigen::Matrix4cd& rho) : rho_(rho) {}
  static TwoSiteRDM from_blocks(const RdmBlocks& blocks);

  const Eigen::Matrix4cd& matrix() const { return rho_; }
  Complex operator()(int a, int b) const { return rho_(a, b); }

  double hermiticity_error() const;
  Complex trace() const { return rho_.trace(); }
  double min_eigenvalue() const;
  // Largest modulus among entries coupling different S^z blocks.
  double off_block_magnitude() const;

  bool is_block_diagonal() const { return off_block_magnitude() < kBlockTol; }
  // Throws std::invalid_argument when the state carries off-block weight.
  RdmBlocks blocks() const;
  // Hermitian, unit trace, and positive within the class tolerances.
  bool is_valid() const;

 private:
  Eigen::Matrix4cd rho_;
};

}  // namespace mblent
