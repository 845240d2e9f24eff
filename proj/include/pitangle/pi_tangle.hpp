#pragma once

#include <complex>

#include "pitangle/qubit_algebra.hpp"

namespace pitangle {

/// The pi-tangle together with every negativity entering it. pi may be
/// negative; the individual negativities never are.
struct PiTangleResult {
  double pi = 0.0;
  double pi_a = 0.0, pi_b = 0.0, pi_c = 0.0;
  double n_a_bc = 0.0, n_b_ac = 0.0, n_c_ab = 0.0;  // one detector vs the rest
  double n_ab = 0.0, n_ac = 0.0, n_bc = 0.0;        // reduced pair states
};

/// Generic route: all nine negativities from partial-transpose spectra of
/// the 8x8 state and its three reduced 4x4 states, then
/// pi_D = N_{D(rest)}^2 - sum of the two pair negativities squared and
/// pi = (pi_A + pi_B + pi_C) / 3.
PiTangleResult pi_tangle_general(const DensityMatrix& rho);

/// Closed form for three equal separations:
/// pi = max[0, sqrt(C^2+8|X|^2)/2 - C/2 - P]^2 - 2 max[0, |X| - P]^2.
double pi_equilateral_closed(double p, double c, double abs_x);

/// Closed form for the equally-spaced line (end spacing L, full length 2L).
/// The end-detector cut keeps both candidate-negative roots of its cubic
/// block, matching the general triangle form below.
double pi_linear_closed(double p, double c_l, double c_2l,
                        std::complex<double> x_l, std::complex<double> x_2l);

/// Closed form for arbitrary pairwise separations, with all nine
/// negativities. Each one-vs-rest negativity is the clamped sum of the two
/// candidate-negative roots of a 3x3 block, written in trigonometric form.
PiTangleResult pi_scalene_closed(double p, double c_ab, double c_ac, double c_bc,
                                 std::complex<double> x_ab,
                                 std::complex<double> x_ac,
                                 std::complex<double> x_bc);

/// One-vs-rest negativity keeping only the cos-root branch. The sin-root
/// branch it drops is the more negative one whenever |X| dominates C, so
/// this variant undercounts there; kept for the selftest comparison.
double one_vs_rest_negativity_single_branch(double p, double c_opp,
                                            std::complex<double> x1,
                                            std::complex<double> x2);

}  // namespace pitangle
