#include "pitangle/pi_tangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pitangle {

namespace {

constexpr double kArccosSlack = 1e-12;
constexpr double kTwoOverSqrt3 = 1.1547005383792515290182975610039;

double clamped(double v) { return v > 0.0 ? v : 0.0; }

double arccos_argument(double q, double s) {
  // 3 sqrt(3) q / (2 s^{3/2}) for the trigonometric root formula
  double g = 3.0 * std::sqrt(3.0) * q / (2.0 * s * std::sqrt(s));
  if (g > 1.0 || g < -1.0) {
    if (std::abs(g) > 1.0 + kArccosSlack)
      throw std::runtime_error("pi_tangle: cubic root argument outside [-1, 1]");
    g = g > 0.0 ? 1.0 : -1.0;
  }
  return g;
}

// Candidate-negative eigenvalues of the 3x3 block
//   [[P, c, x2], [c, P, x1], [conj(x2), conj(x1), P]]
// are P + nu with nu the two lower roots of nu^3 - s nu - q = 0,
//   s = c^2 + |x1|^2 + |x2|^2,  q = 2 c Re(x1 conj(x2)).
// Returns the clamped branch values (amp*cos(pi/3+phi/3) - P and
// amp*sin(pi/6+phi/3) - P), whose sum is the block's negativity share.
struct BranchPair {
  double cos_branch = 0.0;
  double sin_branch = 0.0;
};

BranchPair cubic_branches(double p, double c_opp, std::complex<double> x1,
                          std::complex<double> x2) {
  const double s = c_opp * c_opp + std::norm(x1) + std::norm(x2);
  if (s == 0.0) return {};
  const double q = 2.0 * c_opp * (x1 * std::conj(x2)).real();
  const double phi = std::acos(arccos_argument(q, s));
  const double amp = kTwoOverSqrt3 * std::sqrt(s);
  return {amp * std::cos(M_PI / 3.0 + phi / 3.0) - p,
          amp * std::sin(M_PI / 6.0 + phi / 3.0) - p};
}

double one_vs_rest_negativity(double p, double c_opp, std::complex<double> x1,
                              std::complex<double> x2) {
  const BranchPair b = cubic_branches(p, c_opp, x1, x2);
  return clamped(b.cos_branch) + clamped(b.sin_branch);
}

void assemble_pi(PiTangleResult& r) {
  r.pi_a = r.n_a_bc * r.n_a_bc - r.n_ab * r.n_ab - r.n_ac * r.n_ac;
  r.pi_b = r.n_b_ac * r.n_b_ac - r.n_ab * r.n_ab - r.n_bc * r.n_bc;
  r.pi_c = r.n_c_ab * r.n_c_ab - r.n_ac * r.n_ac - r.n_bc * r.n_bc;
  r.pi = (r.pi_a + r.pi_b + r.pi_c) / 3.0;
}

}  // namespace

double one_vs_rest_negativity_single_branch(double p, double c_opp,
                                            std::complex<double> x1,
                                            std::complex<double> x2) {
  return clamped(cubic_branches(p, c_opp, x1, x2).cos_branch);
}

PiTangleResult pi_tangle_general(const DensityMatrix& rho) {
  if (rho.dim() != 8) throw std::invalid_argument("pi_tangle_general: need an 8x8 state");
  PiTangleResult r;
  r.n_a_bc = negativity(rho, Site::A);
  r.n_b_ac = negativity(rho, Site::B);
  r.n_c_ab = negativity(rho, Site::C);
  r.n_ab = negativity(partial_trace(rho, Site::C), Site::A);
  r.n_ac = negativity(partial_trace(rho, Site::B), Site::A);
  r.n_bc = negativity(partial_trace(rho, Site::A), Site::A);
  assemble_pi(r);
  return r;
}

double pi_equilateral_closed(double p, double c, double abs_x) {
  if (p < 0.0) throw std::invalid_argument("pi_equilateral_closed: P must be >= 0");
  const double tri = clamped(0.5 * std::sqrt(c * c + 8.0 * abs_x * abs_x) - 0.5 * c - p);
  const double pair = clamped(abs_x - p);
  return tri * tri - 2.0 * pair * pair;
}

double pi_linear_closed(double p, double c_l, double c_2l, std::complex<double> x_l,
                        std::complex<double> x_2l) {
  if (p < 0.0) throw std::invalid_argument("pi_linear_closed: P must be >= 0");
  const double n_end = one_vs_rest_negativity(p, c_l, x_l, x_2l);
  const double n_mid = one_vs_rest_negativity(p, c_2l, x_l, x_l);
  const double pair_l = clamped(std::abs(x_l) - p);
  const double pair_2l = clamped(std::abs(x_2l) - p);
  return (2.0 / 3.0) * n_end * n_end + (1.0 / 3.0) * n_mid * n_mid -
         (4.0 / 3.0) * pair_l * pair_l - (2.0 / 3.0) * pair_2l * pair_2l;
}

PiTangleResult pi_scalene_closed(double p, double c_ab, double c_ac, double c_bc,
                                 std::complex<double> x_ab, std::complex<double> x_ac,
                                 std::complex<double> x_bc) {
  if (p < 0.0) throw std::invalid_argument("pi_scalene_closed: P must be >= 0");
  PiTangleResult r;
  r.n_a_bc = one_vs_rest_negativity(p, c_bc, x_ab, x_ac);
  r.n_b_ac = one_vs_rest_negativity(p, c_ac, x_ab, x_bc);
  r.n_c_ab = one_vs_rest_negativity(p, c_ab, x_ac, x_bc);
  r.n_ab = clamped(std::abs(x_ab) - p);
  r.n_ac = clamped(std::abs(x_ac) - p);
  r.n_bc = clamped(std::abs(x_bc) - p);
  assemble_pi(r);
  return r;
}

}  // namespace pitangle
