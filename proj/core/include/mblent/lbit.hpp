#pragma once

// Phenomenological l-bit model
//   H = sum_j h_j tz_j + sum_{j != l} J_jl tz_j tz_l,   J_jl = W_jl exp(-alpha |j - l|),
// with closed-form correlators for an initial product state
//   prod_j [cos(phi_j) |up> + exp(i theta_j) sin(phi_j) |down>].
// The double sum runs over ordered pairs, so each bond enters twice.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "mblent/model.hpp"
#include "mblent/two_site_rdm.hpp"

namespace mblent {

struct LbitParams {
  int L = 72;
  double W = 1.0;
  double alpha = 1.0;
  double h_scale = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LbitInstance {
  Eigen::VectorXd h;
  Eigen::MatrixXd couplings;  // symmetric, zero diagonal

  int sites() const { return static_cast<int>(h.size()); }
};

struct LbitProductState {
  std::vector<double> phi;    // [0, pi/2]
  std::vector<double> theta;  // [0, 2 pi)

  int sites() const { return static_cast<int>(phi.size()); }
  void validate() const;
};

enum class Axis { I, X, Y, Z };

// Throws std::invalid_argument for anything but "x", "y", "z" (or "i").
Axis parse_axis(char c);

LbitInstance sample_instance(const LbitParams& params, std::mt19937_64& rng);
LbitProductState sample_product_state(int L, std::mt19937_64& rng);

// K_{m,n}(t) = prod_{j != m} [exp(-4i J_nj t) cos^2 phi_j + exp(4i J_nj t) sin^2 phi_j]
Complex kernel_k(const LbitInstance& inst, const LbitProductState& state, int m, int n, double t);

// F_t(m,n,b_m,b_n) = prod_{j != m,n} [exp(-4i x_j t) cos^2 phi_j + exp(4i x_j t) sin^2 phi_j]
// with x_j = b_m J_mj + b_n J_nj and b in {-1, 0, +1}.
Complex kernel_f(const LbitInstance& inst, const LbitProductState& state, int m, int n, int b_m,
                 int b_n, double t);

double local_expectation(const LbitInstance& inst, const LbitProductState& state, int m,
                         Axis axis, double t);

// <tau^a_m(t) tau^b_n(t)> for m != n.
Complex two_point(const LbitInstance& inst, const LbitProductState& state, int m, int n, Axis a,
                  Axis b, double t);

// rho_mn(t) = (1/4) sum_{a,b in {I,x,y,z}} <tau^a_m tau^b_n> sigma^a (x) sigma^b
TwoSiteRDM lbit_two_site_rdm(const LbitInstance& inst, const LbitProductState& state, int m,
                             int n, double t);

}  // namespace mblent
