#pragma once

#include <Eigen/Core>

#include "mblent/model.hpp"
#include "mblent/two_site_rdm.hpp"

namespace mblent {

// Hopping matrix of the quadratic (V = 0) chain: -J off-diagonal, fields on the diagonal.
struct SingleParticleHamiltonian {
  Eigen::MatrixXd h;

  int sites() const { return static_cast<int>(h.rows()); }
  static SingleParticleHamiltonian from_params(const ModelParams& params);
};

// G_ij = <a^dag_i a_j>.
struct CorrelationMatrix {
  Eigen::MatrixXcd G;

  int sites() const { return static_cast<int>(G.rows()); }
  Complex operator()(int i, int j) const { return G(i, j); }
  double occupation(int i) const { return G(i, i).real(); }
};

CorrelationMatrix neel_correlations(int L);

// G(t) = U G0 U^dag with U = exp(i h t).
CorrelationMatrix evolve_correlations(const CorrelationMatrix& G0,
                                      const SingleParticleHamiltonian& h, double t);

// Reuses one eigendecomposition of h for many evolution times.
class CorrelationPropagator {
 public:
  explicit CorrelationPropagator(const SingleParticleHamiltonian& h);

  CorrelationMatrix evolve(const CorrelationMatrix& G0, double t) const;
  int sites() const { return static_cast<int>(energies_.size()); }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd modes_;
};

// Two-site reduced density matrix by Wick contraction. Supports j - i in {1, 2};
// the distance-2 coherence includes the Jordan-Wigner parity of the middle site.
TwoSiteRDM rdm_from_correlations(const CorrelationMatrix& G, int i, int j);

// <S^z> per site from the diagonal of G.
std::vector<double> sz_profile(const CorrelationMatrix& G);

// Entanglement entropy (nats) of sites [first, first + count) from the
// eigenvalues of the restricted correlation matrix.
double block_entropy_from_correlations(const CorrelationMatrix& G, int first, int count);

}  // namespace mblent
