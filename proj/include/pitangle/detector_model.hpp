#pragma once

#include <array>
#include <complex>

namespace pitangle {

/// Detector parameters for three identical inertial detectors with Gaussian
/// switching chi(tau) = e^{-tau^2 / 2 sigma^2}. The switching width sigma is
/// the unit of length and time throughout: gap means Omega*sigma and every
/// distance is measured in units of sigma.
struct DetectorParams {
  double coupling = 0.1;  ///< lambda
  double gap = 1.0;       ///< Omega*sigma; negative = initially excited

  /// Throws std::invalid_argument unless coupling > 0 and both fields finite.
  void validate() const;

  /// The state is a second-order truncation in the coupling; above ~0.3 the
  /// truncation is no longer meaningful. Advisory only, never enforced.
  bool weak_coupling() const { return coupling <= 0.3; }
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Positions of detectors A, B, C in their common rest frame at t = 0.
struct Geometry {
  std::array<Vec3, 3> positions;

  double distance(int i, int j) const;
  double dist_ab() const { return distance(0, 1); }
  double dist_ac() const { return distance(0, 2); }
  double dist_bc() const { return distance(1, 2); }

  /// Throws std::invalid_argument if any pairwise distance vanishes.
  void validate() const;
};

/// The scalars that fully determine the three-detector state at leading
/// order: the shared transition probability P, the single-excitation
/// correlations C per pair, and the vacuum-excitation coherences X per pair.
struct MatrixElements {
  double p = 0.0;
  double c_ab = 0.0, c_ac = 0.0, c_bc = 0.0;
  std::complex<double> x_ab, x_ac, x_bc;
};

/// P = (lambda^2 / 4 pi) (e^{-gap^2} - sqrt(pi) gap erfc(gap)).
/// Strictly positive and strictly decreasing in the gap.
double transition_probability(const DetectorParams& params);

/// C(L) for a detector pair at separation L > 0 (units of sigma).
/// Evaluated through the Faddeeva function so the Gaussian prefactor and the
/// growing complex error function never meet at finite size.
double cross_correlation_C(const DetectorParams& params, double L);

/// X(L) for a detector pair at separation L > 0. The textbook form
/// e^{-L^2/4} [1 + erf(iL/2)] is evaluated as e^{-L^2/4} + 2i D(L/2)/sqrt(pi),
/// which is finite for every L.
std::complex<double> cross_correlation_X(const DetectorParams& params, double L);

/// Assembles P and the three pairwise C, X from a geometry. Pairs at equal
/// distance receive bit-identical values.
MatrixElements matrix_elements(const DetectorParams& params, const Geometry& geom);

}  // namespace pitangle
