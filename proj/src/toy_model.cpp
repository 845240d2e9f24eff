#include "pitangle/toy_model.hpp"

#include <cmath>
#include <stdexcept>

#include "pitangle/parallel.hpp"

namespace pitangle {

namespace {

// The case formulas subtract nearly-equal squares; extended precision keeps
// the printed exact values reproducible to ~1e-14 relative.
using ld = long double;

ld abs_x(const ToyParams& p) { return std::hypot((ld)p.x.real(), (ld)p.x.imag()); }

// Ground-sector coupling strength of the 8x8 partial transpose:
// W = 2C^2 - E + 3E^2 + 3EP + |X|^2 + E Sigma. Together with xi it gives
// the ground-block eigenvalues (xi +- sqrt(xi^2 + 4W)) / 2.
ld ground_coupling(ld pp, ld c, ld x, ld e, ld s) {
  return 2.0L * c * c - e + 3.0L * e * e + 3.0L * e * pp + x * x + e * s;
}

// sqrt(xi^2 + 4W) assembled as the sum of squares it really is, so rounding
// can never push the radicand negative when W < 0.
ld ground_root(ld xi, ld c, ld x, ld e) {
  const ld d = xi - 2.0L * e;
  return std::sqrt(d * d + 8.0L * c * c + 4.0L * x * x);
}

}  // namespace

ToyParams PerturbativeToyParams::assemble() const {
  const double l2 = lambda * lambda;
  ToyParams t;
  t.p = l2 * p2;
  t.c = l2 * c2;
  t.x = l2 * x2;
  t.e = l2 * l2 * e4;
  t.sigma = l2 * l2 * l2 * sigma6;
  return t;
}

DensityMatrix build_toy_rho(const ToyParams& p) {
  DensityMatrix rho(8);
  rho(0, 0) = 1.0 - 3.0 * p.p - 3.0 * p.e - p.sigma;
  for (int i = 1; i <= 3; ++i) rho(i, i) = p.p;
  for (int i = 4; i <= 6; ++i) rho(i, i) = p.e;
  rho(7, 7) = p.sigma;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) rho(i, j) = p.c;
  for (int i = 4; i <= 6; ++i) {
    rho(i, 0) = p.x;
    rho(0, i) = std::conj(p.x);
  }
  return rho;
}

std::vector<std::string> validity_check(const ToyParams& p) {
  std::vector<std::string> violated;
  const double x = std::abs(p.x);
  const double xi = p.xi();
  if (!(p.e >= 0.0)) violated.push_back("E >= 0");
  if (!(p.sigma >= 0.0)) violated.push_back("Sigma >= 0");
  if (!(p.p >= p.c)) violated.push_back("P >= C");
  if (!(p.p >= -2.0 * p.c)) violated.push_back("P >= -2C");
  if (!(p.p >= 0.0)) violated.push_back("P >= 0");
  if (!(xi >= 0.0)) violated.push_back("xi >= 0");
  if (!(p.e * xi >= p.e * p.e + 3.0 * x * x)) violated.push_back("E*xi >= E^2 + 3|X|^2");
  return violated;
}

ToyPtEigenvalues toy_pt_eigenvalues(const ToyParams& tp) {
  const ld p = tp.p, c = tp.c, e = tp.e, s = tp.sigma;
  const ld x = abs_x(tp);
  const ld xi = 1.0L - 3.0L * p - 2.0L * e - s;

  ToyPtEigenvalues ev;
  // (2P + C - sqrt(C^2 + 8|X|^2)) / 2, written cancellation-free
  {
    const ld root = std::sqrt(c * c + 8.0L * x * x);
    const ld denom = 2.0L * p + c + root;
    ev.tri_exchange = denom > 0.0L
                          ? (double)(2.0L * (p * (p + c) - 2.0L * x * x) / denom)
                          : (double)(0.5L * (2.0L * p + c - root));
  }
  {
    const ld w = ground_coupling(p, c, x, e, s);
    const ld root = ground_root(xi, c, x, e);
    const ld denom = xi + root;
    ev.tri_ground = denom > 0.0L ? (double)(-2.0L * w / denom) : (double)(0.5L * (xi - root));
  }
  ev.pair_exchange = (double)(e + p - x);
  {
    const ld g1 = 1.0L - 2.0L * p - 2.0L * e;
    const ld g2 = 1.0L - 4.0L * e - 2.0L * p - 2.0L * s;
    const ld root = std::sqrt(4.0L * c * c + g2 * g2);
    const ld denom = g1 + root;
    // (g1 - root)/2 = ((e+s)(g1+g2) - 2c^2) / (g1 + root)
    ev.pair_ground = denom > 0.0L
                         ? (double)(((e + s) * (g1 + g2) - 2.0L * c * c) / denom)
                         : (double)(0.5L * (g1 - root));
  }
  return ev;
}

bool toy_case1_regime(const ToyParams& p) {
  const ToyPtEigenvalues ev = toy_pt_eigenvalues(p);
  return ev.pair_exchange < 0.0 && ev.tri_ground >= 0.0;
}

bool toy_case2_regime(const ToyParams& p) {
  const ToyPtEigenvalues ev = toy_pt_eigenvalues(p);
  return ev.pair_ground < 0.0 && ev.pair_exchange >= 0.0 && ev.tri_exchange >= 0.0;
}

double toy_pi_case1(const ToyParams& tp) {
  const ld p = tp.p, c = tp.c, e = tp.e;
  const ld x = abs_x(tp);
  const ld root = std::sqrt(c * c + 8.0L * x * x);
  const ld tri = 0.5L * (root - 2.0L * p - c);
  const ld pair = x - p - e;
  return (double)(tri * tri - 2.0L * pair * pair);
}

double toy_pi_case1_pert(const PerturbativeToyParams& tp) {
  const ld l = tp.lambda;
  const ld p2 = tp.p2, c2 = tp.c2;
  const ld x2 = std::hypot((ld)tp.x2.real(), (ld)tp.x2.imag());
  const ld root = std::sqrt(c2 * c2 + 8.0L * x2 * x2);
  const ld tri = root - 2.0L * p2 - c2;
  const ld pair = x2 - p2;
  return (double)(l * l * l * l * (0.25L * tri * tri - 2.0L * pair * pair));
}

double toy_pi_case2(const ToyParams& tp) {
  const ld p = tp.p, c = tp.c, e = tp.e, s = tp.sigma;
  const ld x = abs_x(tp);
  const ld xi = 1.0L - 3.0L * p - 2.0L * e - s;
  const ld w = ground_coupling(p, c, x, e, s);
  const ld tri = 2.0L * w / (ground_root(xi, c, x, e) + xi);
  const ld g1 = 1.0L - 2.0L * p - 2.0L * e;
  const ld g2 = 1.0L - 4.0L * e - 2.0L * p - 2.0L * s;
  const ld pair = (2.0L * c * c - (e + s) * (g1 + g2)) / (std::sqrt(4.0L * c * c + g2 * g2) + g1);
  return (double)(tri * tri - 2.0L * pair * pair);
}

double toy_pi_case2_pert(const PerturbativeToyParams& tp) {
  const ld l = tp.lambda;
  const ld c2 = tp.c2, e4 = tp.e4;
  const ld x2 = std::hypot((ld)tp.x2.real(), (ld)tp.x2.imag());
  const ld a = c2 * c2 + x2 * x2;
  const ld b = e4 + x2 * x2;
  const ld l4 = l * l * l * l;
  return (double)(l4 * l4 * (2.0L * a * a - b * b));
}

double toy_case1_nonneg_quartic(const PerturbativeToyParams& tp) {
  const ld p2 = tp.p2, c2 = tp.c2;
  const ld x2 = std::hypot((ld)tp.x2.real(), (ld)tp.x2.imag());
  const ld d = p2 - c2;
  const ld inner = c2 * c2 * (2.0L * x2 - p2) - x2 * (2.0L * p2 - c2) * (2.0L * p2 - c2);
  return (double)(4.0L * (p2 * p2 * d * d - 2.0L * (x2 - p2) * inner));
}

void CkwScanConfig::validate() const {
  if (!(p2_min > 0.0) || !(x2_min > 0.0) || p2_max <= p2_min || x2_max <= x2_min)
    throw std::invalid_argument("CkwScanConfig: need positive bounds with min < max");
  if (p2_steps < 1 || x2_steps < 1) throw std::invalid_argument("CkwScanConfig: steps >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("CkwScanConfig: lambda must be > 0");
}

std::vector<CkwCell> ckw_scan(const CkwScanConfig& cfg) {
  cfg.validate();
  auto axis = [](double lo, double hi, int steps, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  };
  std::vector<CkwCell> cells(static_cast<std::size_t>(cfg.p2_steps) * cfg.x2_steps);
  detail::parallel_for_index(cells.size(), cfg.threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / cfg.x2_steps;
    const int j = static_cast<int>(idx) % cfg.x2_steps;
    CkwCell& cell = cells[idx];
    cell.p2 = axis(cfg.p2_min, cfg.p2_max, cfg.p2_steps, i);
    cell.x2 = axis(cfg.x2_min, cfg.x2_max, cfg.x2_steps, j);
    cell.excluded = cell.p2 >= cell.x2;
    PerturbativeToyParams p;
    p.lambda = cfg.lambda;
    p.p2 = cell.p2;
    p.c2 = cfg.c2_ratio * cell.p2;
    p.x2 = cell.x2;
    cell.pi = toy_pi_case1_pert(p);
  });
  return cells;
}

}  // namespace pitangle
