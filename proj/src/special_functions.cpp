#include "pitangle/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace pitangle {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;
constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215;

using detail::kWAxisBand;
using detail::kWContinuedFractionDepth;
using detail::kWNodeCount;
using detail::kWNodeSpacing;
using detail::kWSeriesRadius;

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite input");
}

// a + b = s + err exactly (Knuth two-sum).
inline void two_sum(double a, double b, double& s, double& err) {
  s = a + b;
  const double bp = s - a;
  err = (a - (s - bp)) + (b - bp);
}

// Gauss-type continued fraction for w, truncated at fixed depth. Shares its
// coefficient sequence with the Dawson and erfcx fractions below.
std::complex<double> w_continued_fraction(std::complex<double> z) {
  std::complex<double> r = 0.0;
  for (int k = kWContinuedFractionDepth; k >= 1; --k) r = (0.5 * k) / (z - r);
  return std::complex<double>(0.0, 1.0 / kSqrtPi) / (z - r);
}

struct NodeTable {
  std::array<double, kWNodeCount> mid_t, mid_w;  // t = (k+1/2)h
  std::array<double, kWNodeCount> int_t, int_w;  // t = k h (k >= 1 used in pairs)
  NodeTable() {
    for (int k = 0; k < kWNodeCount; ++k) {
      mid_t[k] = (k + 0.5) * kWNodeSpacing;
      mid_w[k] = std::exp(-mid_t[k] * mid_t[k]);
      int_t[k] = k * kWNodeSpacing;
      int_w[k] = std::exp(-int_t[k] * int_t[k]);
    }
  }
};

const NodeTable& nodes() {
  static const NodeTable t;
  return t;
}

// Sampled-Gaussian representation of w on the upper half-plane: a sum of
// simple poles at the sample nodes plus a correction that carries the
// e^{-z^2} part. Two interleaved node grids are available so the evaluation
// point is never closer than h/4 to a pole of the formula in use.
std::complex<double> w_pole_sum(std::complex<double> z) {
  const double h = kWNodeSpacing;
  const double x = z.real();
  const double u = x / h;
  const double dist_int = std::abs(u - std::round(u));
  const double dist_mid = std::abs(u - std::floor(u) - 0.5);
  const std::complex<double> i_h_over_pi(0.0, h / M_PI);
  const std::complex<double> two_z = 2.0 * z;
  const NodeTable& nt = nodes();

  std::complex<double> s;
  std::complex<double> corr_denom;
  if (dist_mid >= dist_int) {
    s = 0.0;
    for (int k = 0; k < kWNodeCount; ++k) {
      const double t = nt.mid_t[k];
      s += nt.mid_w[k] * two_z / ((z - t) * (z + t));
    }
    corr_denom = 1.0 + std::exp(std::complex<double>(0.0, -2.0 * M_PI / h) * z);
  } else {
    s = 1.0 / z;
    for (int k = 1; k < kWNodeCount; ++k) {
      const double t = nt.int_t[k];
      s += nt.int_w[k] * two_z / ((z - t) * (z + t));
    }
    corr_denom = 1.0 - std::exp(std::complex<double>(0.0, -2.0 * M_PI / h) * z);
  }
  return i_h_over_pi * s + 2.0 * exp_neg_squared(z) / corr_denom;
}

std::complex<double> w_upper(std::complex<double> z) {
  const double x = z.real(), y = z.imag();
  if (x * x + y * y >= kWSeriesRadius * kWSeriesRadius) {
    std::complex<double> w = w_continued_fraction(z);
    if (y <= kWAxisBand) w += exp_neg_squared(z);
    return w;
  }
  return w_pole_sum(z);
}

}  // namespace

double exp_neg_squared(double x) {
  const double hi = x * x;
  if (hi > 750.0) return 0.0;
  const double lo = std::fma(x, x, -hi);
  return std::exp(-hi) * (1.0 - lo);
}

std::complex<double> exp_neg_squared(std::complex<double> z) {
  const double x = z.real(), y = z.imag();
  // exponent y^2 - x^2 assembled in double-double to keep e^{...} accurate
  const double hx = x * x, lx = std::fma(x, x, -hx);
  const double hy = y * y, ly = std::fma(y, y, -hy);
  double s, err;
  two_sum(hy, -hx, s, err);
  err += ly - lx;
  if (s > 709.0) throw std::overflow_error("exp_neg_squared: overflow");
  const double mag = std::exp(s) * (1.0 + err);
  const double phase = -2.0 * x * y;
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

double erfcx(double x) {
  require_finite(x, "erfcx");
  if (x < 0.0) {
    if (x < -26.5) throw std::overflow_error("erfcx: overflow for large negative x");
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x >= kWSeriesRadius) {
    // Laplace continued fraction, all-positive tail
    double r = 0.0;
    for (int k = kWContinuedFractionDepth; k >= 1; --k) r = (0.5 * k) / (x + r);
    return 1.0 / (kSqrtPi * (x + r));
  }
  // pure-imaginary specialisation of the pole sum: every term is positive
  const double h = kWNodeSpacing;
  const NodeTable& nt = nodes();
  double s = 0.0;
  for (int k = 0; k < kWNodeCount; ++k)
    s += nt.mid_w[k] / (x * x + nt.mid_t[k] * nt.mid_t[k]);
  s *= 2.0 * h * x / M_PI;
  return s + 2.0 * std::exp(x * x) / (1.0 + std::exp(2.0 * M_PI * x / h));
}

double erfc_real(double x) {
  require_finite(x, "erfc_real");
  if (x < 0.0) return 2.0 - erfc_real(-x);
  return exp_neg_squared(x) * erfcx(x);
}

double dawson(double x) {
  require_finite(x, "dawson");
  const double ax = std::abs(x);
  double v;
  if (ax <= kWSeriesRadius) {
    // D(x) = e^{-x^2} sum_k x^{2k+1} / (k! (2k+1)); all terms positive
    double term = ax, sum = 0.0;
    const double x2 = ax * ax;
    for (int k = 0; k < 400; ++k) {
      const double add = term / (2 * k + 1);
      sum += add;
      if (add < 1e-18 * sum) break;
      term *= x2 / (k + 1);
    }
    v = exp_neg_squared(ax) * sum;
  } else {
    double r = 0.0;
    for (int k = kWContinuedFractionDepth; k >= 1; --k) r = (0.5 * k) / (ax - r);
    v = 0.5 / (ax - r);
  }
  return x < 0.0 ? -v : v;
}

std::complex<double> faddeeva_w(std::complex<double> z) {
  require_finite(z.real(), "faddeeva_w");
  require_finite(z.imag(), "faddeeva_w");
  if (z.imag() >= 0.0) return w_upper(z);
  if (z.imag() * z.imag() - z.real() * z.real() > 709.0)
    throw std::overflow_error("faddeeva_w: reflection term overflows");
  return 2.0 * exp_neg_squared(z) - std::conj(w_upper(std::conj(z)));
}

std::complex<double> complex_erf(std::complex<double> z) {
  require_finite(z.real(), "complex_erf");
  require_finite(z.imag(), "complex_erf");
  const double x = z.real(), y = z.imag();
  if (x * x + y * y <= 1.0) {
    // Maclaurin series; alternation is mild inside the unit disc
    std::complex<double> term = z, sum = 0.0;
    const std::complex<double> z2 = z * z;
    for (int n = 0; n < 40; ++n) {
      const std::complex<double> add = term / double(2 * n + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      term *= -z2 / double(n + 1);
    }
    return kTwoOverSqrtPi * sum;
  }
  // erf(z) = 1 - e^{-z^2} w(iz), sign-reflected so Re(arg) >= 0
  const bool flip = x < 0.0;
  const std::complex<double> zz = flip ? -z : z;
  if (zz.imag() * zz.imag() - zz.real() * zz.real() > 705.0)
    throw std::overflow_error("complex_erf: result exceeds double range");
  const std::complex<double> iz(-zz.imag(), zz.real());  // Im >= 0 by construction
  const std::complex<double> v = 1.0 - exp_neg_squared(zz) * w_upper(iz);
  return flip ? -v : v;
}

}  // namespace pitangle
