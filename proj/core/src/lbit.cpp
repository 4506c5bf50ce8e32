#include "mblent/lbit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mblent {

namespace {

using namespace std::complex_literals;

// Single-site operators in which every Pauli matrix decomposes:
// raise = |up><down|, lower = |down><up|, and the two projectors.
enum Elementary { kRaise = 0, kLower = 1, kUp = 2, kDown = 3 };

constexpr int flip_of(int op) { return op == kRaise ? 1 : (op == kLower ? -1 : 0); }
constexpr int spin_of(int op) { return op == kUp ? 1 : (op == kDown ? -1 : 0); }

// Coefficients of sigma^axis on {raise, lower, up, down}.
std::array<Complex, 4> pauli_coefficients(Axis axis) {
  switch (axis) {
    case Axis::I: return {0.0, 0.0, 1.0, 1.0};
    case Axis::X: return {1.0, 1.0, 0.0, 0.0};
    case Axis::Y: return {-1i, 1i, 0.0, 0.0};
    case Axis::Z: return {0.0, 0.0, 1.0, -1.0};
  }
  throw std::invalid_argument("invalid axis");
}

Eigen::Matrix2cd pauli_matrix(Axis axis) {
  Eigen::Matrix2cd s;
  switch (axis) {
    case Axis::I: s << 1.0, 0.0, 0.0, 1.0; break;
    case Axis::X: s << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::Y: s << 0.0, -1i, 1i, 0.0; break;
    case Axis::Z: s << 1.0, 0.0, 0.0, -1.0; break;
  }
  return s;
}

// <chi| op |chi> at t = 0 for chi = cos(phi)|up> + exp(i theta) sin(phi)|down>.
Complex initial_amplitude(const LbitProductState& state, int site, int op) {
  const double c = std::cos(state.phi[site]);
  const double s = std::sin(state.phi[site]);
  switch (op) {
    case kRaise: return c * s * std::polar(1.0, state.theta[site]);
    case kLower: return c * s * std::polar(1.0, -state.theta[site]);
    case kUp: return c * c;
    default: return s * s;
  }
}

void check_site(const LbitInstance& inst, const LbitProductState& state, int m) {
  if (state.sites() != inst.sites()) {
    throw std::invalid_argument("l-bit: state and instance sizes differ");
  }
  if (m < 0 || m >= inst.sites()) {
    throw std::out_of_range("l-bit: site " + std::to_string(m) + " outside the chain");
  }
}

void check_pair(const LbitInstance& inst, const LbitProductState& state, int m, int n) {
  check_site(inst, state, m);
  check_site(inst, state, n);
  if (m == n) throw std::invalid_argument("l-bit: two-point functions need m != n");
}

// <op_m(t)> for a single site.
Complex local_elementary(const LbitInstance& inst, const LbitProductState& state, int m, int op,
                         double t) {
  const int b = flip_of(op);
  Complex value = initial_amplitude(state, m, op);
  if (b == 0) return value;
  value *= std::polar(1.0, 2.0 * b * inst.h[m] * t);
  // K_{m,m} for a lowering operator, its conjugate for raising.
  const Complex k = kernel_k(inst, state, m, m, t);
  return value * (b < 0 ? k : std::conj(k));
}

// <op_m(t) op'_n(t)> for m != n.
Complex pair_elementary(const LbitInstance& inst, const LbitProductState& state, int m, int op_m,
                        int n, int op_n, double t) {
  const int bm = flip_of(op_m);
  const int bn = flip_of(op_n);
  Complex value = initial_amplitude(state, m, op_m) * initial_amplitude(state, n, op_n);
  if (bm == 0 && bn == 0) return value;
  value *= std::polar(1.0, 2.0 * (bm * inst.h[m] + bn * inst.h[n]) * t);
  // A flipped site picks up the Ising phase of a frozen partner; two flips cancel it.
  const double jmn = inst.couplings(m, n);
  if (bn == 0) value *= std::polar(1.0, 4.0 * bm * jmn * spin_of(op_n) * t);
  if (bm == 0) value *= std::polar(1.0, 4.0 * bn * jmn * spin_of(op_m) * t);
  return value * kernel_f(inst, state, m, n, -bm, -bn, t);
}

}  // namespace

void LbitParams::validate() const {
  if (L < 2) throw std::invalid_argument("LbitParams: L must be at least 2");
  if (!(W >= 0.0)) throw std::invalid_argument("LbitParams: W must be non-negative");
  if (!(alpha > 0.0)) throw std::invalid_argument("LbitParams: alpha must be positive");
  if (!(h_scale >= 0.0)) throw std::invalid_argument("LbitParams: h_scale must be non-negative");
}

void LbitProductState::validate() const {
  if (phi.size() != theta.size()) throw std::invalid_argument("LbitProductState: size mismatch");
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (!(phi[j] >= 0.0 && phi[j] <= 0.5 * std::numbers::pi) ||
        !(theta[j] >= 0.0 && theta[j] < 2.0 * std::numbers::pi)) {
      throw std::invalid_argument("LbitProductState: angle out of range");
    }
  }
}

Axis parse_axis(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::X;
    case 'y': case 'Y': return Axis::Y;
    case 'z': case 'Z': return Axis::Z;
    case 'i': case 'I': return Axis::I;
    default: throw std::invalid_argument(std::string("unknown axis '") + c + "'");
  }
}

LbitInstance sample_instance(const LbitParams& params, std::mt19937_64& rng) {
  params.validate();
  const int L = params.L;
  std::uniform_real_distribution<double> field(-params.h_scale, params.h_scale);
  std::uniform_real_distribution<double> coupling(-params.W, params.W);
  LbitInstance inst;
  inst.h.resize(L);
  for (int j = 0; j < L; ++j) inst.h[j] = params.h_scale > 0.0 ? field(rng) : 0.0;
  inst.couplings = Eigen::MatrixXd::Zero(L, L);
  for (int j = 0; j < L; ++j) {
    for (int l = j + 1; l < L; ++l) {
      const double w = params.W > 0.0 ? coupling(rng) : 0.0;
      inst.couplings(j, l) = inst.couplings(l, j) = w * std::exp(-params.alpha * (l - j));
    }
  }
  return inst;
}

LbitProductState sample_product_state(int L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> polar(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  LbitProductState state;
  state.phi.resize(L);
  state.theta.resize(L);
  for (int j = 0; j < L; ++j) {
    state.phi[j] = polar(rng);
    state.theta[j] = azimuth(rng);
  }
  return state;
}

Complex kernel_k(const LbitInstance& inst, const LbitProductState& state, int m, int n, double t) {
  check_site(inst, state, m);
  check_site(inst, state, n);
  Complex prod{1.0, 0.0};
  for (int j = 0; j < inst.sites(); ++j) {
    if (j == m) continue;
    const double c2 = std::pow(std::cos(state.phi[j]), 2);
    const Complex ph = std::polar(1.0, -4.0 * inst.couplings(n, j) * t);
    prod *= c2 * ph + (1.0 - c2) * std::conj(ph);
  }
  return prod;
}

Complex kernel_f(const LbitInstance& inst, const LbitProductState& state, int m, int n, int b_m,
                 int b_n, double t) {
  check_site(inst, state, m);
  check_site(inst, state, n);
  Complex prod{1.0, 0.0};
  for (int j = 0; j < inst.sites(); ++j) {
    if (j == m || j == n) continue;
    const double x = b_m * inst.couplings(m, j) + b_n * inst.couplings(n, j);
    const double c2 = std::pow(std::cos(state.phi[j]), 2);
    const Complex ph = std::polar(1.0, -4.0 * x * t);
    prod *= c2 * ph + (1.0 - c2) * std::conj(ph);
  }
  return prod;
}

double local_expectation(const LbitInstance& inst, const LbitProductState& state, int m,
                         Axis axis, double t) {
  check_site(inst, state, m);
  const auto coef = pauli_coefficients(axis);
  Complex sum{0.0, 0.0};
  for (int op = 0; op < 4; ++op) {
    if (coef[op] != Complex{}) sum += coef[op] * local_elementary(inst, state, m, op, t);
  }
  return sum.real();
}

Complex two_point(const LbitInstance& inst, const LbitProductState& state, int m, int n, Axis a,
                  Axis b, double t) {
  check_pair(inst, state, m, n);
  const auto ca = pauli_coefficients(a);
  const auto cb = pauli_coefficients(b);
  Complex sum{0.0, 0.0};
  for (int om = 0; om < 4; ++om) {
    if (ca[om] == Complex{}) continue;
    for (int on = 0; on < 4; ++on) {
      if (cb[on] == Complex{}) continue;
      sum += ca[om] * cb[on] * pair_elementary(inst, state, m, om, n, on, t);
    }
  }
  return sum;
}

TwoSiteRDM lbit_two_site_rdm(const LbitInstance& inst, const LbitProductState& state, int m,
                             int n, double t) {
  check_pair(inst, state, m, n);
  // All sixteen elementary correlators, then every Pauli pair as a linear combination.
  Complex table[4][4];
  for (int om = 0; om < 4; ++om) {
    for (int on = 0; on < 4; ++on) table[om][on] = pair_elementary(inst, state, m, om, n, on, t);
  }
  constexpr Axis axes[4] = {Axis::I, Axis::X, Axis::Y, Axis::Z};
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (Axis a : axes) {
    const auto ca = pauli_coefficients(a);
    for (Axis b : axes) {
      const auto cb = pauli_coefficients(b);
      Complex corr{0.0, 0.0};
      for (int om = 0; om < 4; ++om) {
        for (int on = 0; on < 4; ++on) corr += ca[om] * cb[on] * table[om][on];
      }
      // Basis order {uu, ud, du, dd} is the Kronecker order with site m first.
      const Eigen::Matrix2cd sa = pauli_matrix(a);
      const Eigen::Matrix2cd sb = pauli_matrix(b);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) rho(r, c) += 0.25 * corr * sa(r / 2, c / 2) * sb(r % 2, c % 2);
      }
    }
  }
  if (m > n) {
    // Keep the lower site first in the basis labels.
    Eigen::Matrix4cd swapped;
    constexpr int perm[4] = {0, 2, 1, 3};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) swapped(r, c) = rho(perm[r], perm[c]);
    }
    rho = swapped;
  }
  return TwoSiteRDM(rho);
}

}  // namespace mblent
