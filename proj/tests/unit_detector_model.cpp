#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pitangle/detector_model.hpp"
#include "pitangle/special_functions.hpp"
#include "pitangle/sweep.hpp"
#include "test_util.hpp"

using namespace pitangle;
using testutil::rel_err;

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
}

TEST_CASE("reference table: P, C, X against the verbatim closed forms") {
  const auto rows = testutil::read_csv(testutil::data_path("detector_reference.csv"));
  REQUIRE(rows.size() >= 60);
  for (const auto& row : rows) {
    DetectorParams p{std::stod(row[0]), std::stod(row[1])};
    const double L = std::stod(row[2]);
    INFO("gap=", p.gap, " L=", L);
    CHECK(rel_err(transition_probability(p), std::stod(row[3])) <= 1e-12);
    CHECK(rel_err(cross_correlation_C(p, L), std::stod(row[4])) <= 1e-12);
    const auto x = cross_correlation_X(p, L);
    CHECK(rel_err(x.real(), std::stod(row[5])) <= 1e-10);
    CHECK(rel_err(x.imag(), std::stod(row[6])) <= 1e-10);
  }
}

TEST_CASE("transition probability basics") {
  DetectorParams p{0.1, 0.0};
  CHECK(rel_err(transition_probability(p), 0.01 / (4.0 * M_PI)) <= 1e-15);

  p.gap = 10.0;
  CHECK(transition_probability(p) <= 1e-8 * p.coupling * p.coupling);
  CHECK(transition_probability(p) > 0.0);

  // strictly decreasing in the gap, positive throughout
  double prev = std::numeric_limits<double>::infinity();
  for (double gap = -5.0; gap <= 8.0; gap += 0.25) {
    p.gap = gap;
    const double val = transition_probability(p);
    CHECK(val > 0.0);
    CHECK(val < prev);
    prev = val;
  }

  CHECK_THROWS_AS(transition_probability({-0.1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(transition_probability({0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("C: zero-gap Dawson reduction and Gaussian falloff") {
  DetectorParams p{0.1, 0.0};
  for (double L : {0.4, 1.0, 3.0, 6.0}) {
    const double expect =
        p.coupling * p.coupling / (4.0 * kSqrtPi * L) * (2.0 / kSqrtPi) * dawson(0.5 * L);
    CHECK(rel_err(cross_correlation_C(p, L), expect) <= 1e-13);
  }
  p.gap = 1.3;
  CHECK(std::abs(cross_correlation_C(p, 40.0)) <= 1e-300);
  CHECK_THROWS_AS(cross_correlation_C(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(cross_correlation_C(p, -1.0), std::domain_error);
}

TEST_CASE("X: gap enters only through the Gaussian factor") {
  DetectorParams plus{0.1, 1.7}, minus{0.1, -1.7};
  for (double L : {0.5, 2.0, 9.0}) {
    CHECK(std::abs(cross_correlation_X(plus, L)) ==
          std::abs(cross_correlation_X(minus, L)));
  }

  // |X| at zero gap and L = 2: prefactor times |e^{-1} + 2i D(1)/sqrt(pi)|
  DetectorParams p0{0.1, 0.0};
  const double expect = 0.01 / (4.0 * kSqrtPi * 2.0) *
                        std::abs(std::complex<double>(std::exp(-1.0),
                                                      2.0 / kSqrtPi * dawson(1.0)));
  CHECK(rel_err(std::abs(cross_correlation_X(p0, 2.0)), expect) <= 1e-13);

  // far separation: finite, no overflow from the error-function growth
  const auto far = cross_correlation_X(p0, 20.0);
  CHECK(std::isfinite(far.real()));
  CHECK(std::isfinite(far.imag()));

  // phase structure: X = i e^{-gap^2} (positive imag, negative real part)
  for (double gap : {-1.0, 0.0, 2.0})
    for (double L : {0.3, 1.0, 5.0}) {
      const auto x = cross_correlation_X({0.1, gap}, L);
      CHECK(x.imag() > 0.0);
      CHECK(x.real() < 0.0);
    }
}

TEST_CASE("X small-separation scaling: |X| L -> lambda^2 e^{-gap^2} / 4 sqrt(pi)") {
  DetectorParams p{0.1, 0.8};
  const double L = 1e-4;
  const double limit = p.coupling * p.coupling / (4.0 * kSqrtPi) * exp_neg_squared(p.gap);
  CHECK(rel_err(std::abs(cross_correlation_X(p, L)) * L, limit) <= 1e-6);
}

TEST_CASE("P dominates |C| over the sampled parameter window") {
  for (double gap = -2.0; gap <= 5.0; gap += 0.5) {
    DetectorParams p{0.1, gap};
    const double prob = transition_probability(p);
    for (double L = 0.1; L <= 20.0; L *= 1.6)
      CHECK(prob > std::abs(cross_correlation_C(p, L)));
  }
}

TEST_CASE("pair symmetry: C and X depend only on the distance") {
  DetectorParams p{0.1, 1.1};
  Geometry g;
  g.positions = {Vec3{0.0, 0.0, 0.0}, Vec3{0.0, 3.0, 0.0}, Vec3{0.0, 0.0, 3.0}};
  const MatrixElements me = matrix_elements(p, g);
  CHECK(me.c_ab == me.c_ac);  // equal distances, bit-identical elements
  CHECK(me.x_ab == me.x_ac);
  CHECK(me.c_ab != me.c_bc);  // |BC| = 3 sqrt(2)
}

TEST_CASE("geometry builders") {
  const Geometry eq = build_geometry(GeometryKind::Equilateral, 5.0);
  CHECK(rel_err(eq.dist_ab(), 5.0) <= 1e-15);
  CHECK(rel_err(eq.dist_ac(), 5.0) <= 1e-15);
  CHECK(rel_err(eq.dist_bc(), 5.0) <= 1e-15);

  const Geometry lin = build_geometry(GeometryKind::Linear, 2.5);
  CHECK(lin.dist_ab() == 2.5);
  CHECK(lin.dist_bc() == 2.5);
  CHECK(lin.dist_ac() == 5.0);

  // zero displacement recovers the equilateral triangle exactly
  const Geometry sc0 = build_geometry(GeometryKind::Scalene, 0.0, 7.0);
  CHECK(sc0.dist_ab() == 7.0);
  CHECK(sc0.dist_bc() == 7.0);
  CHECK(sc0.dist_ac() == 7.0);

  // displaced apex against the plane-geometry expressions
  const double base = 7.0, d = 2.3;
  const Geometry sc = build_geometry(GeometryKind::Scalene, d, base);
  const double lab = std::sqrt((base / 2 + d) * (base / 2 + d) + 3.0 * base * base / 4.0);
  const double lbc = std::sqrt((base / 2 - d) * (base / 2 - d) + 3.0 * base * base / 4.0);
  CHECK(rel_err(sc.dist_ab(), lab) <= 1e-15);
  CHECK(rel_err(sc.dist_bc(), lbc) <= 1e-15);
  CHECK(rel_err(sc.dist_ac(), base) <= 1e-15);

  CHECK_THROWS_AS(build_geometry(GeometryKind::Equilateral, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_geometry(GeometryKind::Linear, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(build_geometry(GeometryKind::Scalene, 1.0, 0.0), std::invalid_argument);

  const MatrixElements me =
      matrix_elements({0.1, 2.0}, build_geometry(GeometryKind::Linear, 3.0));
  CHECK(me.c_ab == me.c_bc);
  CHECK(me.x_ab == me.x_bc);
}
