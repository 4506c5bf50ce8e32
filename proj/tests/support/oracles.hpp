#pragma once

// Brute-force reference implementations in the full 2^L Hilbert space.
//
// Convention here is deliberately different from the library: the full basis is
// the Kronecker product O_0 (x) O_1 (x) ... (x) O_{L-1}, site 0 being the most
// significant factor, with local index 0 = up and 1 = down.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "mblent/lbit.hpp"
#include "mblent/model.hpp"

namespace oracle {

using cd = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline int digit(std::size_t f, int L, int site) {
  return static_cast<int>((f >> (L - 1 - site)) & 1u);
}

inline std::size_t set_digit(std::size_t f, int L, int site, int d) {
  const std::size_t bit = std::size_t{1} << (L - 1 - site);
  return d ? (f | bit) : (f & ~bit);
}

inline std::size_t full_index(mblent::Pattern p, int L) {
  std::size_t f = 0;
  for (int k = 0; k < L; ++k) f = 2 * f + (((p >> k) & 1u) ? 0 : 1);
  return f;
}

inline Matrix2cd pauli(char a) {
  Matrix2cd m = Matrix2cd::Zero();
  switch (a) {
    case 'i': m << 1, 0, 0, 1; break;
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
  }
  return m;
}

// Operator with ops[k] acting on site k.
inline MatrixXcd kron_chain(const std::vector<Matrix2cd>& ops) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (const auto& op : ops) {
    MatrixXcd next = Eigen::kroneckerProduct(out, op).eval();
    out = std::move(next);
  }
  return out;
}

inline MatrixXcd two_site_op(int L, int i, char a, int j, char b) {
  std::vector<Matrix2cd> ops(static_cast<std::size_t>(L), pauli('i'));
  ops[static_cast<std::size_t>(i)] = pauli(a);
  ops[static_cast<std::size_t>(j)] = pauli(b);
  return kron_chain(ops);
}

inline MatrixXcd one_site_op(int L, int i, char a) {
  std::vector<Matrix2cd> ops(static_cast<std::size_t>(L), pauli('i'));
  ops[static_cast<std::size_t>(i)] = pauli(a);
  return kron_chain(ops);
}

// Spin Hamiltonian in the full space from Pauli products, S = sigma / 2.
inline MatrixXcd xxz_full(const mblent::ModelParams& p) {
  const int L = p.L;
  const std::size_t dim = std::size_t{1} << L;
  MatrixXcd H = MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const double beta = static_cast<double>(p.beta.num) / static_cast<double>(p.beta.den);
  for (int k = 0; k + 1 < L; ++k) {
    H -= 0.5 * p.J * (two_site_op(L, k, 'x', k + 1, 'x') + two_site_op(L, k, 'y', k + 1, 'y'));
    H -= 0.25 * p.V * two_site_op(L, k, 'z', k + 1, 'z');
  }
  for (int k = 0; k < L; ++k) {
    const double h = p.delta * std::cos(2.0 * std::numbers::pi * beta * (k + 1) + p.phi);
    H += 0.5 * h * one_site_op(L, k, 'z');
  }
  return H;
}

// Rows/columns of a full operator restricted to the sector, in library basis order.
inline MatrixXcd restrict_to_sector(const MatrixXcd& full, const mblent::SectorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  MatrixXcd out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const std::size_t fa = full_index(basis.state(static_cast<std::size_t>(a)), basis.sites());
    for (Eigen::Index b = 0; b < n; ++b) {
      out(a, b) = full(static_cast<Eigen::Index>(fa),
                       static_cast<Eigen::Index>(
                           full_index(basis.state(static_cast<std::size_t>(b)), basis.sites())));
    }
  }
  return out;
}

inline VectorXcd embed(const mblent::SectorState& psi) {
  const int L = psi.sites();
  VectorXcd out = VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << L));
  for (std::size_t a = 0; a < psi.basis().size(); ++a) {
    out(static_cast<Eigen::Index>(full_index(psi.basis().state(a), L))) =
        psi.amplitudes()(static_cast<Eigen::Index>(a));
  }
  return out;
}

// <a| rho_ij |b> with a = 2 d_i + d_j in {uu, ud, du, dd}.
inline Matrix4cd reduced_two_site(const VectorXcd& psi, int L, int i, int j) {
  Matrix4cd rho = Matrix4cd::Zero();
  for (std::size_t f = 0; f < static_cast<std::size_t>(psi.size()); ++f) {
    const int a = 2 * digit(f, L, i) + digit(f, L, j);
    for (int b = 0; b < 4; ++b) {
      const std::size_t g = set_digit(set_digit(f, L, i, b / 2), L, j, b % 2);
      rho(a, b) += psi(static_cast<Eigen::Index>(f)) * std::conj(psi(static_cast<Eigen::Index>(g)));
    }
  }
  return rho;
}

// Von Neumann entropy of sites [0, L/2) from the Schmidt values.
inline double half_chain_entropy(const VectorXcd& psi, int L) {
  const int left = L / 2;
  const Eigen::Index rows = Eigen::Index{1} << left;
  const Eigen::Index cols = Eigen::Index{1} << (L - left);
  MatrixXcd M(rows, cols);
  for (Eigen::Index f = 0; f < psi.size(); ++f) M(f / cols, f % cols) = psi(f);
  Eigen::JacobiSVD<MatrixXcd> svd(M);
  double s = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double p = svd.singularValues()(k) * svd.singularValues()(k);
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

// a_k |psi> with Jordan-Wigner string over occupied (up) sites left of k.
inline VectorXcd annihilate(const VectorXcd& psi, int L, int k) {
  VectorXcd out = VectorXcd::Zero(psi.size());
  for (std::size_t f = 0; f < static_cast<std::size_t>(psi.size()); ++f) {
    if (digit(f, L, k) != 0) continue;
    int parity = 0;
    for (int s = 0; s < k; ++s) parity += digit(f, L, s) == 0;
    const std::size_t g = set_digit(f, L, k, 1);
    out(static_cast<Eigen::Index>(g)) += (parity % 2 ? -1.0 : 1.0) * psi(static_cast<Eigen::Index>(f));
  }
  return out;
}

// G_ij = <a^dag_i a_j> = <a_i psi | a_j psi>.
inline MatrixXcd fermion_correlations(const VectorXcd& psi, int L) {
  std::vector<VectorXcd> a;
  for (int k = 0; k < L; ++k) a.push_back(annihilate(psi, L, k));
  MatrixXcd G(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) G(i, j) = a[static_cast<std::size_t>(i)].dot(a[static_cast<std::size_t>(j)]);
  }
  return G;
}

// exp(-i H t) psi by dense diagonalisation of a Hermitian matrix.
inline VectorXcd dense_evolve(const MatrixXcd& H, const VectorXcd& psi, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  const MatrixXcd& U = es.eigenvectors();
  VectorXcd c = U.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(cd(0, -es.eigenvalues()(k) * t));
  return U * c;
}

// Product state evolved under the diagonal l-bit Hamiltonian, tau^z = +1 for up.
inline VectorXcd lbit_state(const mblent::LbitInstance& inst, const mblent::LbitProductState& st,
                            double t) {
  const int L = inst.sites();
  const std::size_t dim = std::size_t{1} << L;
  VectorXcd psi(static_cast<Eigen::Index>(dim));
  for (std::size_t f = 0; f < dim; ++f) {
    cd amp = 1.0;
    double energy = 0.0;
    for (int j = 0; j < L; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      const int d = digit(f, L, j);
      amp *= d == 0 ? cd(std::cos(st.phi[sj]), 0.0)
                    : std::exp(cd(0, st.theta[sj])) * std::sin(st.phi[sj]);
      const double zj = d == 0 ? 1.0 : -1.0;
      energy += inst.h(j) * zj;
      for (int l = 0; l < L; ++l) {
        if (l == j) continue;
        const double zl = digit(f, L, l) == 0 ? 1.0 : -1.0;
        energy += inst.couplings(j, l) * zj * zl;
      }
    }
    psi(static_cast<Eigen::Index>(f)) = amp * std::exp(cd(0, -energy * t));
  }
  return psi;
}

inline cd expectation(const VectorXcd& psi, const MatrixXcd& op) { return psi.dot(op * psi); }

}  // namespace oracle
