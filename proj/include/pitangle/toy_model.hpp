#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pitangle/qubit_algebra.hpp"

namespace pitangle {

/// Exact (non-perturbative) eight-level state: ground weight
/// 1 - 3P - 3E - Sigma, P and C on the single-excitation sector, E on the
/// double excitations, Sigma on the triple, X linking ground to doubles.
/// Only |X| enters any derived quantity; the phase is carried along.
struct ToyParams {
  double p = 0.0;
  double c = 0.0;
  double e = 0.0;
  double sigma = 0.0;
  std::complex<double> x;

  double xi() const { return 1.0 - 3.0 * p - 2.0 * e - sigma; }
};

/// Leading perturbative coefficients: P = l^2 P2, C = l^2 C2, X = l^2 X2,
/// E = l^4 E4, Sigma = l^6 Sigma6.
struct PerturbativeToyParams {
  double lambda = 0.1;
  double p2 = 0.0;
  double c2 = 0.0;
  double e4 = 0.0;
  double sigma6 = 0.0;
  std::complex<double> x2;

  ToyParams assemble() const;
};

DensityMatrix build_toy_rho(const ToyParams& p);

/// Labels of the positivity constraints the parameters violate; empty means
/// the matrix is a valid state. The labels name the failed inequality.
std::vector<std::string> validity_check(const ToyParams& p);

/// The four partial-transpose eigenvalues that can go negative for a valid
/// state: two from the 8x8 transpose (exchange block and ground block) and
/// two from the reduced pair's 4x4 transpose.
struct ToyPtEigenvalues {
  double tri_exchange = 0.0;  ///< (2P + C - sqrt(C^2 + 8|X|^2)) / 2
  double tri_ground = 0.0;    ///< ground/double-excitation sector of the 8x8 PT
  double pair_exchange = 0.0; ///< E + P - |X|
  double pair_ground = 0.0;   ///< ground sector of the 4x4 PT
};

ToyPtEigenvalues toy_pt_eigenvalues(const ToyParams& p);

/// Case 1: the pair-exchange eigenvalue drives the pair negativity.
/// pi = [ (sqrt(C^2+8|X|^2) - 2P - C)/2 ]^2 - 2 (|X| - P - E)^2.
/// Pure formula; whether the parameters actually sit in this regime is
/// reported by toy_case1_regime.
double toy_pi_case1(const ToyParams& p);

/// Leading order of case 1 in the coupling:
/// lambda^4 [ (sqrt(C2^2+8|X2|^2) - 2P2 - C2)^2 / 4 - 2 (|X2| - P2)^2 ].
double toy_pi_case1_pert(const PerturbativeToyParams& p);

/// True iff the case-1 closing-form assumptions hold at these parameters
/// (pair-exchange negative, tri-ground non-negative).
bool toy_case1_regime(const ToyParams& p);

/// Case 2: the pair-ground eigenvalue drives the pair negativity.
double toy_pi_case2(const ToyParams& p);

/// Leading order of case 2: lambda^8 [ 2 (C2^2+|X2|^2)^2 - (E4+|X2|^2)^2 ].
double toy_pi_case2_pert(const PerturbativeToyParams& p);

bool toy_case2_regime(const ToyParams& p);

/// Sign test of the case-1 perturbative pi-tangle written as a polynomial
/// inequality (no square roots): returns the quartic expression whose
/// non-negativity coincides with pi >= 0 for |X2| > P2 > 0.
double toy_case1_nonneg_quartic(const PerturbativeToyParams& p);

/// Grid scan of the case-1 perturbative pi-tangle over (P2, |X2|) with
/// C2 = c2_ratio * P2. Cells with P2 >= |X2| sit outside the regime and are
/// marked excluded.
struct CkwScanConfig {
  double p2_min = 0.1, p2_max = 5.0;
  int p2_steps = 100;
  double x2_min = 0.1, x2_max = 5.0;
  int x2_steps = 100;
  double c2_ratio = 0.9;
  double lambda = 0.1;
  int threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

struct CkwCell {
  double p2 = 0.0, x2 = 0.0, pi = 0.0;
  bool excluded = false;
};

std::vector<CkwCell> ckw_scan(const CkwScanConfig& cfg);

}  // namespace pitangle
