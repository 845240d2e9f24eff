#include "pitangle/detector_model.hpp"

#include <cmath>
#include <stdexcept>

#include "pitangle/special_functions.hpp"

namespace pitangle {

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215;
}  // namespace

void DetectorParams::validate() const {
  if (!std::isfinite(coupling) || !std::isfinite(gap))
    throw std::invalid_argument("DetectorParams: non-finite parameter");
  if (coupling <= 0.0) throw std::invalid_argument("DetectorParams: coupling must be > 0");
}

double Geometry::distance(int i, int j) const {
  const Vec3& a = positions[i];
  const Vec3& b = positions[j];
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void Geometry::validate() const {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(distance(i, j) > 0.0))
        throw std::invalid_argument("Geometry: coincident detectors");
}

double transition_probability(const DetectorParams& params) {
  params.validate();
  const double a = params.gap;
  const double pref = params.coupling * params.coupling / (4.0 * M_PI);
  double bracket;  // e^{-a^2}-scaled residue (1 - sqrt(pi) a erfcx(a))
  if (a >= 3.0) {
    // 1 - a/(a+r) = r/(a+r) with r the erfcx continued-fraction tail;
    // avoids the cancellation that grows like a^2 in the direct form
    double r = 0.0;
    for (int k = 32; k >= 1; --k) r = (0.5 * k) / (a + r);
    bracket = r / (a + r);
  } else if (a >= 0.0) {
    bracket = 1.0 - kSqrtPi * a * erfcx(a);
  } else {
    // both contributions positive for negative gaps
    return pref * (exp_neg_squared(a) - kSqrtPi * a * erfc_real(a));
  }
  return pref * exp_neg_squared(a) * bracket;
}

namespace {

void check_separation(double L) {
  if (!std::isfinite(L) || L <= 0.0)
    throw std::domain_error("cross correlation: detectors coincident (need L > 0)");
}

}  // namespace

double cross_correlation_C(const DetectorParams& params, double L) {
  params.validate();
  check_separation(L);
  const double a = params.gap;
  const double b = 0.5 * L;
  const double pref = params.coupling * params.coupling / (4.0 * kSqrtPi * L);
  // e^{-L^2/4} [Im(e^{i gap L} erf(iL/2 + gap)) - sin(gap L)]
  //   = -e^{-gap^2} Im w(-L/2 + i gap),
  // which is bounded for every gap and separation.
  if (a >= 0.0)
    return -pref * exp_neg_squared(a) * faddeeva_w({-b, a}).imag();
  return -pref * (2.0 * exp_neg_squared(b) * std::sin(params.gap * L) +
                  exp_neg_squared(a) * faddeeva_w({-b, -a}).imag());
}

std::complex<double> cross_correlation_X(const DetectorParams& params, double L) {
  params.validate();
  check_separation(L);
  const double b = 0.5 * L;
  const double pref =
      params.coupling * params.coupling / (4.0 * kSqrtPi * L) * exp_neg_squared(params.gap);
  return {-pref * kTwoOverSqrtPi * dawson(b), pref * exp_neg_squared(b)};
}

MatrixElements matrix_elements(const DetectorParams& params, const Geometry& geom) {
  params.validate();
  geom.validate();
  MatrixElements me;
  me.p = transition_probability(params);
  me.c_ab = cross_correlation_C(params, geom.dist_ab());
  me.c_ac = cross_correlation_C(params, geom.dist_ac());
  me.c_bc = cross_correlation_C(params, geom.dist_bc());
  me.x_ab = cross_correlation_X(params, geom.dist_ab());
  me.x_ac = cross_correlation_X(params, geom.dist_ac());
  me.x_bc = cross_correlation_X(params, geom.dist_bc());
  return me;
}

}  // namespace pitangle
