#pragma once

#include <complex>

namespace pitangle {

/// Complementary error function erfc(x) = 1 - erf(x).
/// Relative accuracy ~1e-15 over the full double range; underflows to 0
/// for large positive x instead of raising.
double erfc_real(double x);

/// Scaled complement erfcx(x) = e^{x^2} erfc(x).
double erfcx(double x);

/// Dawson integral D(x) = e^{-x^2} \int_0^x e^{t^2} dt.
double dawson(double x);

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
///
/// Evaluated directly for Im z >= 0; the lower half-plane uses the
/// reflection w(z) = 2 e^{-z^2} - conj(w(conj z)), which throws
/// std::overflow_error once e^{-z^2} leaves the double range.
std::complex<double> faddeeva_w(std::complex<double> z);

/// Error function of a complex argument. Throws std::overflow_error when
/// the result magnitude (~e^{Im(z)^2 - Re(z)^2}) exceeds the double range.
std::complex<double> complex_erf(std::complex<double> z);

/// e^{-x^2} with the squaring carried out in double-double so the result
/// stays correctly rounded even for large |x|.
double exp_neg_squared(double x);

/// e^{-z^2}, magnitude computed via exp_neg_squared-style splitting.
std::complex<double> exp_neg_squared(std::complex<double> z);

namespace detail {
// Region boundaries of the Faddeeva evaluator. The summation formula is
// used inside |z| < kWSeriesRadius, the continued fraction outside; both
// are exercised on either side of the seam by the reference-table tests.
inline constexpr double kWSeriesRadius = 7.0;
inline constexpr double kWNodeSpacing = 0.45;
inline constexpr int kWNodeCount = 17;
inline constexpr int kWContinuedFractionDepth = 24;
// Below this |Im z| the continued fraction misses the e^{-z^2} component
// of Re w near the real axis; it is restored explicitly.
inline constexpr double kWAxisBand = 1e-4;
}  // namespace detail

}  // namespace pitangle
