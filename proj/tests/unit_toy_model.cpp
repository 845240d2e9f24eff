#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "pitangle/pi_tangle.hpp"
#include "pitangle/toy_model.hpp"
#include "test_util.hpp"

using namespace pitangle;
using cd = std::complex<double>;
using testutil::rel_err;

namespace {

std::map<std::string, double> reference() {
  std::map<std::string, double> out;
  for (const auto& row : testutil::read_csv(testutil::data_path("toy_reference.csv")))
    out[row[0]] = std::stod(row[1]);
  return out;
}

ToyParams nonpert_case1() {
  ToyParams t;
  t.p = 0.01;
  t.c = 0.009;
  t.x = 0.04;
  t.e = 0.00011;
  return t;
}

ToyParams nonpert_case2() {
  ToyParams t;
  t.p = 0.01;
  t.c = 0.009;
  t.x = 0.008;
  t.e = 0.00015;
  t.sigma = 1e-6;
  return t;
}

std::mt19937_64 rng(4242);

double uni(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Samples inside the validity region: X capped by the ground-sector
// constraint E*xi >= E^2 + 3|X|^2.
ToyParams random_valid() {
  for (;;) {
    ToyParams t;
    t.p = uni(0.0, 0.05);
    t.c = t.p * uni(-0.5, 1.0);
    t.e = uni(0.0, 0.01);
    t.sigma = uni(0.0, 1.0) * std::min(t.p, 0.005);
    const double cap2 = (t.e * t.xi() - t.e * t.e) / 3.0;
    if (cap2 < 0.0) continue;
    t.x = std::polar(std::sqrt(cap2) * uni(0.0, 1.0), uni(0.0, 2 * M_PI));
    if (validity_check(t).empty()) return t;
  }
}

}  // namespace

TEST_CASE("build_toy_rho structure and trace") {
  ToyParams t = nonpert_case2();
  const DensityMatrix rho = build_toy_rho(t);
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-15);
  CHECK(rho.hermiticity_error() == 0.0);
  CHECK(rho(0, 0) == cd(1.0 - 3 * t.p - 3 * t.e - t.sigma));
  CHECK(rho(4, 4) == cd(t.e));
  CHECK(rho(7, 7) == cd(t.sigma));
  CHECK(rho(1, 2) == cd(t.c));
  CHECK(rho(5, 0) == t.x);

  // E = Sigma = 0 coincides with the harvested equilateral structure
  MatrixElements me;
  me.p = t.p;
  me.c_ab = me.c_ac = me.c_bc = t.c;
  me.x_ab = me.x_ac = me.x_bc = t.x;
  ToyParams t0 = t;
  t0.e = t0.sigma = 0.0;
  CHECK(build_toy_rho(t0) == build_rho(me));
}

TEST_CASE("validity_check labels") {
  CHECK(validity_check(ToyParams{}).empty());  // pure ground state

  ToyParams bad;
  bad.p = 0.01;
  bad.c = 0.02;
  auto v = validity_check(bad);
  CHECK(std::find(v.begin(), v.end(), "P >= C") != v.end());

  bad = ToyParams{};
  bad.p = -0.01;
  v = validity_check(bad);
  CHECK(std::find(v.begin(), v.end(), "P >= 0") != v.end());
  CHECK(std::find(v.begin(), v.end(), "P >= C") != v.end());

  bad = ToyParams{};
  bad.p = 0.01;
  bad.c = -0.009;
  bad.x = 0.001;  // E = 0 forces the ground-sector constraint to fail
  v = validity_check(bad);
  CHECK(std::find(v.begin(), v.end(), "E*xi >= E^2 + 3|X|^2") != v.end());
}

TEST_CASE("the printed example parameter sets are not valid states") {
  // Both example sets violate the ground-sector constraint; the numeric
  // spectrum confirms the flag both times.
  for (const ToyParams& t : {nonpert_case1(), nonpert_case2()}) {
    const auto v = validity_check(t);
    CHECK(std::find(v.begin(), v.end(), "E*xi >= E^2 + 3|X|^2") != v.end());
    const auto spec = hermitian_eigenvalues(build_toy_rho(t));
    CHECK(spec.front() < -1e-13);
  }
}

TEST_CASE("validity flag agrees with the numeric spectrum") {
  int valid_seen = 0;
  for (int i = 0; i < 300; ++i) {
    ToyParams t;
    t.p = uni(0.0, 0.05);
    t.c = t.p * uni(-1.2, 1.2);
    t.e = uni(0.0, 0.005);
    t.sigma = uni(0.0, 0.002);
    t.x = std::polar(uni(0.0, 0.01), uni(0.0, 2 * M_PI));
    const bool flagged_valid = validity_check(t).empty();
    const auto spec = hermitian_eigenvalues(build_toy_rho(t));
    if (flagged_valid) {
      ++valid_seen;
      CHECK(spec.front() >= -1e-13);
    }
  }
  CHECK(valid_seen > 10);
}

TEST_CASE("closed-form eigenvalues sit in the numeric PT spectra") {
  auto nearest = [](const std::vector<double>& sp, double v) {
    double best = 1e300;
    for (double s : sp) best = std::min(best, std::abs(s - v));
    return best;
  };

  SUBCASE("all correlations zero") {
    ToyParams t;
    t.p = 0.013;
    t.e = 0.0002;
    const ToyPtEigenvalues ev = toy_pt_eigenvalues(t);
    CHECK(ev.tri_exchange == doctest::Approx(t.p).epsilon(1e-14));
    CHECK(ev.pair_exchange == doctest::Approx(t.e + t.p).epsilon(1e-14));
  }

  SUBCASE("case-1 assembled parameters have a negative pair-exchange eigenvalue") {
    PerturbativeToyParams p;
    p.lambda = 0.1;
    p.p2 = 1.0;
    p.c2 = 0.9;
    p.x2 = 4.0;
    const ToyPtEigenvalues ev = toy_pt_eigenvalues(p.assemble());
    CHECK(ev.pair_exchange < 0.0);
    CHECK(ev.pair_exchange == doctest::Approx(0.01 + 0.0 - 0.04).epsilon(1e-12));
  }

  SUBCASE("500 random valid parameter sets") {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const ToyParams t = random_valid();
      const ToyPtEigenvalues ev = toy_pt_eigenvalues(t);
      const DensityMatrix rho = build_toy_rho(t);
      const auto tri = hermitian_eigenvalues(partial_transpose(rho, Site::A));
      const auto pair =
          hermitian_eigenvalues(partial_transpose(partial_trace(rho, Site::C), Site::A));
      worst = std::max(worst, nearest(tri, ev.tri_exchange));
      worst = std::max(worst, nearest(tri, ev.tri_ground));
      worst = std::max(worst, nearest(pair, ev.pair_exchange));
      worst = std::max(worst, nearest(pair, ev.pair_ground));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("pair eigenvalues are never simultaneously negative") {
  for (int i = 0; i < 500; ++i) {
    const ToyParams t = random_valid();
    if (t.p < t.sigma) continue;
    const ToyPtEigenvalues ev = toy_pt_eigenvalues(t);
    CHECK_FALSE(ev.pair_exchange < 0.0 && ev.pair_ground < 0.0);
  }
}

TEST_CASE("ground-constraint implication chain") {
  // when E xi >= E^2 + |X|^2 + 2C^2 holds, the pair-ground eigenvalue is
  // non-negative (under P >= Sigma)
  for (int i = 0; i < 500; ++i) {
    const ToyParams t = random_valid();
    if (t.p < t.sigma) continue;
    const double x = std::abs(t.x);
    if (t.e * t.xi() >= t.e * t.e + x * x + 2.0 * t.c * t.c)
      CHECK(toy_pt_eigenvalues(t).pair_ground >= -1e-18);
  }
}

TEST_CASE("printed exact values") {
  const auto ref = reference();

  SUBCASE("case 1 perturbative") {
    PerturbativeToyParams p;
    p.lambda = 0.1;
    p.p2 = 1.0;
    p.c2 = 0.9;
    p.x2 = 4.0;
    CHECK(rel_err(toy_pi_case1_pert(p), ref.at("case1_pert")) <= 1e-13);
  }

  SUBCASE("case 1 non-perturbative") {
    CHECK(rel_err(toy_pi_case1(nonpert_case1()), ref.at("case1_nonpert")) <= 1e-13);
  }

  SUBCASE("case 2 perturbative") {
    PerturbativeToyParams p;
    p.lambda = 0.1;
    p.p2 = 1.0;
    p.c2 = 0.9;
    p.x2 = 0.8;
    p.e4 = 1.5;
    CHECK(rel_err(toy_pi_case2_pert(p), ref.at("case2_pert")) <= 1e-13);
  }

  SUBCASE("case 2 non-perturbative") {
    CHECK(rel_err(toy_pi_case2(nonpert_case2()), ref.at("case2_nonpert")) <= 1e-13);
  }

  SUBCASE("eigenvalues at both example sets") {
    const ToyPtEigenvalues b = toy_pt_eigenvalues(nonpert_case1());
    CHECK(rel_err(b.tri_exchange, ref.at("b_e4")) <= 1e-13);
    CHECK(rel_err(b.tri_ground, ref.at("b_e7")) <= 1e-13);
    CHECK(rel_err(b.pair_exchange, ref.at("b_f1")) <= 1e-13);
    CHECK(rel_err(b.pair_ground, ref.at("b_f3")) <= 1e-13);
    const ToyPtEigenvalues d = toy_pt_eigenvalues(nonpert_case2());
    CHECK(rel_err(d.tri_exchange, ref.at("d_e4")) <= 1e-13);
    CHECK(rel_err(d.tri_ground, ref.at("d_e7")) <= 1e-13);
    CHECK(rel_err(d.pair_exchange, ref.at("d_f1")) <= 1e-13);
    CHECK(rel_err(d.pair_ground, ref.at("d_f3")) <= 1e-13);
  }

  SUBCASE("both example sets sit outside their nominal regimes") {
    CHECK_FALSE(toy_case1_regime(nonpert_case1()));  // tri_ground < 0 here
    CHECK_FALSE(toy_case2_regime(nonpert_case2()));  // pair_ground > 0 here
  }
}

TEST_CASE("case formula boundaries") {
  // |X| = P + E and sqrt(C^2+8X^2) = 2P + C kill both case-1 terms
  ToyParams t;
  t.p = 0.01;
  t.e = 0.002;
  t.x = t.p + t.e;
  const double x = std::abs(t.x);
  t.c = (4.0 * x * x - 4.0 * t.p * t.p) / (4.0 * t.p);  // solves the root condition
  CHECK(std::abs(toy_pi_case1(t)) <= 1e-16);

  // |X2| = P2 kills the pair term of the perturbative case 1
  PerturbativeToyParams p;
  p.lambda = 0.1;
  p.p2 = 1.2;
  p.c2 = 0.4;
  p.x2 = 1.2;
  const double root = std::sqrt(p.c2 * p.c2 + 8.0 * p.p2 * p.p2);
  const double expect = 1e-4 * 0.25 * std::pow(root - 2.0 * p.p2 - p.c2, 2.0);
  CHECK(rel_err(toy_pi_case1_pert(p), expect) <= 1e-13);
  CHECK(toy_pi_case1_pert(p) >= 0.0);

  // E4 at the boundary sqrt(2)(C2^2 + |X2|^2) - |X2|^2 gives zero
  PerturbativeToyParams q;
  q.lambda = 0.1;
  q.p2 = 1.0;
  q.c2 = 0.7;
  q.x2 = 0.9;
  q.e4 = std::sqrt(2.0) * (q.c2 * q.c2 + 0.81) - 0.81;
  CHECK(std::abs(toy_pi_case2_pert(q)) <= 1e-22);
}

TEST_CASE("case formulas against the eigenvalue pipeline inside the regimes") {
  SUBCASE("case 1") {
    ToyParams t;
    t.p = 0.02;
    t.c = 0.01;
    t.x = 0.04;
    t.e = 0.006;
    REQUIRE(validity_check(t).empty());
    REQUIRE(toy_case1_regime(t));
    const double generic = pi_tangle_general(build_toy_rho(t)).pi;
    CHECK(std::abs(toy_pi_case1(t) - generic) <= 1e-12);
  }

  SUBCASE("case 2") {
    ToyParams t;
    t.p = 0.01;
    t.c = 0.009;
    t.x = 0.001;
    t.e = 2e-5;
    REQUIRE(validity_check(t).empty());
    REQUIRE(toy_case2_regime(t));
    const double generic = pi_tangle_general(build_toy_rho(t)).pi;
    CHECK(std::abs(toy_pi_case2(t) - generic) <= 1e-12);
  }

  SUBCASE("randomised, whichever regime holds") {
    int case1 = 0, case2 = 0;
    for (int i = 0; i < 400; ++i) {
      const ToyParams t = random_valid();
      const double generic = pi_tangle_general(build_toy_rho(t)).pi;
      if (toy_case1_regime(t) && toy_pt_eigenvalues(t).tri_exchange < 0.0) {
        ++case1;
        CHECK(std::abs(toy_pi_case1(t) - generic) <= 1e-12);
      } else if (toy_case2_regime(t) && toy_pt_eigenvalues(t).tri_ground < 0.0) {
        ++case2;
        CHECK(std::abs(toy_pi_case2(t) - generic) <= 1e-12);
      }
    }
    CHECK(case2 > 0);
  }
}

TEST_CASE("perturbative formulas approach the exact ones as lambda shrinks") {
  PerturbativeToyParams p;
  p.p2 = 1.0;
  p.c2 = 0.9;
  p.x2 = 4.0;
  p.lambda = 0.05;
  // exact formula on the assembled parameters agrees to the next order
  CHECK(rel_err(toy_pi_case1(p.assemble()), toy_pi_case1_pert(p)) <= 20.0 * p.lambda * p.lambda);

  PerturbativeToyParams q;
  q.p2 = 1.0;
  q.c2 = 0.9;
  q.x2 = 0.8;
  q.e4 = 1.5;
  q.lambda = 0.05;
  CHECK(rel_err(toy_pi_case2(q.assemble()), toy_pi_case2_pert(q)) <= 20.0 * q.lambda * q.lambda);
}

TEST_CASE("case-2 perturbative sign matches the eigenvalue route to leading order") {
  PerturbativeToyParams q;
  q.p2 = 1.0;
  q.c2 = 0.9;
  q.x2 = 0.8;
  q.e4 = 1.5;
  q.lambda = 0.05;
  const double pert = toy_pi_case2_pert(q);
  const double generic = pi_tangle_general(build_toy_rho(q.assemble())).pi;
  CHECK(rel_err(generic, pert) <= 0.01);
}

TEST_CASE("sign of the perturbative case-1 pi matches its quartic criterion") {
  int disagreements = 0, checked = 0;
  for (int i = 0; i < 500; ++i) {
    PerturbativeToyParams p;
    p.lambda = 0.1;
    p.p2 = uni(0.05, 5.0);
    p.c2 = 0.9 * p.p2;
    p.x2 = uni(p.p2 * 1.0001, 6.0);  // regime side |X2| > P2
    const double pi = toy_pi_case1_pert(p);
    const double quartic = toy_case1_nonneg_quartic(p);
    if (std::abs(pi) < 1e-12) continue;
    ++checked;
    if ((pi >= 0.0) != (quartic >= 0.0)) ++disagreements;
  }
  CHECK(checked > 300);
  CHECK(disagreements == 0);
}

TEST_CASE("ckw_scan") {
  CkwScanConfig cfg;
  cfg.p2_min = 0.5;
  cfg.p2_max = 2.0;
  cfg.p2_steps = 16;
  cfg.x2_min = 0.5;
  cfg.x2_max = 5.0;
  cfg.x2_steps = 16;
  const auto cells = ckw_scan(cfg);
  REQUIRE(cells.size() == 256);

  // the printed example cell is negative
  CkwScanConfig one;
  one.p2_min = one.p2_max = 1.0;
  one.p2_steps = 1;
  one.x2_min = one.x2_max = 4.0;
  one.x2_steps = 1;
  const auto single = ckw_scan(one);
  REQUIRE(single.size() == 1);
  CHECK_FALSE(single[0].excluded);
  CHECK(single[0].pi < 0.0);
  PerturbativeToyParams p;
  p.lambda = 0.1;
  p.p2 = 1.0;
  p.c2 = 0.9;
  p.x2 = 4.0;
  CHECK(single[0].pi == toy_pi_case1_pert(p));

  int excluded = 0, negative = 0;
  for (const auto& c : cells) {
    if (c.p2 >= c.x2) {
      CHECK(c.excluded);
      ++excluded;
    } else {
      CHECK_FALSE(c.excluded);
      if (c.pi < 0.0) ++negative;
      // sign boundary tracks the quartic criterion
      PerturbativeToyParams q;
      q.lambda = cfg.lambda;
      q.p2 = c.p2;
      q.c2 = cfg.c2_ratio * c.p2;
      q.x2 = c.x2;
      if (std::abs(c.pi) > 1e-12)
        CHECK((c.pi >= 0.0) == (toy_case1_nonneg_quartic(q) >= 0.0));
    }
  }
  CHECK(excluded > 0);
  CHECK(negative > 0);

  // deterministic across worker counts
  CkwScanConfig serial = cfg;
  serial.threads = 1;
  const auto cells1 = ckw_scan(serial);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].pi == cells1[i].pi);
    CHECK(cells[i].excluded == cells1[i].excluded);
  }
}
