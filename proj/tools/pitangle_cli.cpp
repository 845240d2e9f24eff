// pitangle: harvested bipartite and tripartite entanglement of three
// Unruh-DeWitt detectors with Gaussian switching in the Minkowski vacuum.
//
// Subcommands: point, sweep, toy, toy-scan, selftest.
// Exit codes: 0 success, 1 configuration error, 2 numerical-consistency
// failure.

#include <cmath>
#include <complex>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "pitangle/detector_model.hpp"
#include "pitangle/pi_tangle.hpp"
#include "pitangle/qubit_algebra.hpp"
#include "pitangle/special_functions.hpp"
#include "pitangle/sweep.hpp"
#include "pitangle/toy_model.hpp"

namespace {

using namespace pitangle;

void warn_coupling(const DetectorParams& p) {
  if (!p.weak_coupling())
    std::cerr << "warning: coupling " << p.coupling
              << " > 0.3; the state is a second-order truncation and no longer meaningful\n";
}

void print_result(const char* label, const PiTangleResult& r) {
  std::cout << label << ":\n"
            << "  pi      = " << format_double(r.pi) << "\n"
            << "  pi_A    = " << format_double(r.pi_a) << "  pi_B = " << format_double(r.pi_b)
            << "  pi_C = " << format_double(r.pi_c) << "\n"
            << "  N_A(BC) = " << format_double(r.n_a_bc)
            << "  N_B(AC) = " << format_double(r.n_b_ac)
            << "  N_C(AB) = " << format_double(r.n_c_ab) << "\n"
            << "  N_AB    = " << format_double(r.n_ab) << "  N_AC = " << format_double(r.n_ac)
            << "  N_BC = " << format_double(r.n_bc) << "\n";
}

int run_point(const std::string& geometry, double lambda, double gap, double length,
              double base, const std::string& route_name) {
  const GeometryKind kind = geometry_kind_from_string(geometry);
  const Route route = route_from_string(route_name);
  DetectorParams params{lambda, gap};
  params.validate();
  warn_coupling(params);
  const PointResult pr = evaluate_point(params, kind, length, base, route);

  const MatrixElements& me = pr.elements;
  std::cout << "geometry = " << to_string(kind) << ", gap = " << format_double(gap)
            << ", length = " << format_double(length);
  if (kind == GeometryKind::Scalene) std::cout << ", base = " << format_double(base);
  std::cout << ", lambda = " << format_double(lambda) << "\n";
  std::cout << "P    = " << format_double(me.p) << "\n"
            << "C_AB = " << format_double(me.c_ab) << "  C_AC = " << format_double(me.c_ac)
            << "  C_BC = " << format_double(me.c_bc) << "\n"
            << "X_AB = " << format_double(me.x_ab.real()) << " + "
            << format_double(me.x_ab.imag()) << "i  |X_AB| = "
            << format_double(std::abs(me.x_ab)) << "\n"
            << "X_AC = " << format_double(me.x_ac.real()) << " + "
            << format_double(me.x_ac.imag()) << "i  |X_AC| = "
            << format_double(std::abs(me.x_ac)) << "\n"
            << "X_BC = " << format_double(me.x_bc.real()) << " + "
            << format_double(me.x_bc.imag()) << "i  |X_BC| = "
            << format_double(std::abs(me.x_bc)) << "\n";
  if (pr.has_closed) print_result("closed form", pr.closed);
  if (pr.has_eigen) print_result("eigenvalue route", pr.eigen);
  if (pr.has_closed && pr.has_eigen) {
    std::cout << "discrepancy = " << format_double(pr.discrepancy) << "\n";
    if (pr.discrepancy > route_discrepancy_bound(me)) {
      std::cerr << "error: route discrepancy exceeds its truncation bound\n";
      return 2;
    }
  }
  return 0;
}

int run_toy(const ToyParams& tp, bool have_pert, const PerturbativeToyParams& pp) {
  std::cout << "P = " << format_double(tp.p) << ", C = " << format_double(tp.c)
            << ", |X| = " << format_double(std::abs(tp.x)) << ", E = " << format_double(tp.e)
            << ", Sigma = " << format_double(tp.sigma) << ", xi = " << format_double(tp.xi())
            << "\n";
  const auto violated = validity_check(tp);
  if (violated.empty()) {
    std::cout << "validity: ok (all positivity constraints hold)\n";
  } else {
    std::cout << "validity: VIOLATED:";
    for (const auto& v : violated) std::cout << "  [" << v << "]";
    std::cout << "\n";
  }
  const ToyPtEigenvalues ev = toy_pt_eigenvalues(tp);
  std::cout << "candidate-negative PT eigenvalues:\n"
            << "  tri_exchange  = " << format_double(ev.tri_exchange) << "\n"
            << "  tri_ground    = " << format_double(ev.tri_ground) << "\n"
            << "  pair_exchange = " << format_double(ev.pair_exchange) << "\n"
            << "  pair_ground   = " << format_double(ev.pair_ground) << "\n";
  std::cout << "case 1 (pair-exchange driven): pi = " << format_double(toy_pi_case1(tp))
            << (toy_case1_regime(tp) ? "" : "   [outside case-1 regime]") << "\n";
  std::cout << "case 2 (pair-ground driven):   pi = " << format_double(toy_pi_case2(tp))
            << (toy_case2_regime(tp) ? "" : "   [outside case-2 regime]") << "\n";
  if (have_pert) {
    std::cout << "perturbative case 1: pi = " << format_double(toy_pi_case1_pert(pp)) << "\n"
              << "perturbative case 2: pi = " << format_double(toy_pi_case2_pert(pp)) << "\n";
  }
  const PiTangleResult gen = pi_tangle_general(build_toy_rho(tp));
  print_result("eigenvalue route", gen);
  return 0;
}

// ---------------------------------------------------------------------
// selftest: every check prints one ok/FAIL line; any failure exits 2.
// ---------------------------------------------------------------------

struct SelfTest {
  int failures = 0;

  void check(bool ok, const std::string& name, const std::string& detail = "") {
    std::cout << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

void selftest_special_functions(SelfTest& t) {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> box(-6.0, 6.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::complex<double> z(box(rng), box(rng));
    const std::complex<double> zu(z.real(), std::abs(z.imag()));
    const std::complex<double> w = faddeeva_w(zu);
    worst = std::max(worst, std::abs(w) - 1.0);
    // reflection consistency
    const std::complex<double> wl = faddeeva_w(std::conj(zu));
    const std::complex<double> expect = 2.0 * exp_neg_squared(std::conj(zu)) - std::conj(w);
    worst = std::max(worst, std::abs(wl - expect) / std::max(1.0, std::abs(expect)));
    // erf symmetries
    const std::complex<double> e = complex_erf(z);
    worst = std::max(worst, std::abs(e + complex_erf(-z)) / std::max(1e-30, std::abs(e)));
    worst = std::max(worst,
                     std::abs(std::conj(e) - complex_erf(std::conj(z))) / std::max(1e-30, std::abs(e)));
    // real-axis cross checks
    const double x = z.real();
    const std::complex<double> wx = faddeeva_w({x, 0.0});
    worst = std::max(worst, std::abs(wx.real() - exp_neg_squared(x)));
    worst = std::max(worst, std::abs(wx.imag() - 2.0 / std::sqrt(M_PI) * dawson(x)));
    worst = std::max(worst,
                     std::abs(complex_erf({x, 0.0}).real() - (1.0 - erfc_real(x))));
  }
  t.check(worst <= 1e-12, "special-function symmetries (1000 random points)",
          "worst " + format_double(worst));
}

void selftest_routes(SelfTest& t) {
  std::mt19937_64 rng(4159);
  std::uniform_real_distribution<double> gap(-1.0, 4.0), len(0.5, 12.0);
  double worst = 0.0;
  for (GeometryKind kind :
       {GeometryKind::Equilateral, GeometryKind::Linear, GeometryKind::Scalene}) {
    for (int i = 0; i < 60; ++i) {
      DetectorParams p{0.02, gap(rng)};
      const double base = kind == GeometryKind::Scalene ? len(rng) : 7.0;
      const double length = kind == GeometryKind::Scalene ? len(rng) - 0.5 : len(rng);
      const PointResult pr = evaluate_point(p, kind, length, base, Route::Both);
      worst = std::max(worst, pr.discrepancy);
    }
  }
  t.check(worst <= 1e-10, "closed form vs eigenvalue route (180 points, lambda=0.02)",
          "worst " + format_double(worst));
}

void selftest_toy_spectra(SelfTest& t) {
  std::mt19937_64 rng(99251);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  bool exclusion_ok = true;
  for (int i = 0; i < 150; ++i) {
    ToyParams tp;
    tp.p = 0.05 * uni(rng);
    tp.c = tp.p * (1.5 * uni(rng) - 0.5);
    tp.e = 0.01 * uni(rng);
    tp.sigma = std::min(tp.p, 0.005) * uni(rng);
    const double xcap = std::sqrt(std::max(0.0, (tp.e * tp.xi() - tp.e * tp.e) / 3.0));
    tp.x = std::polar(xcap * uni(rng), 2.0 * M_PI * uni(rng));
    if (!validity_check(tp).empty()) continue;

    const ToyPtEigenvalues ev = toy_pt_eigenvalues(tp);
    const DensityMatrix rho = build_toy_rho(tp);
    auto tri = hermitian_eigenvalues(partial_transpose(rho, Site::A));
    auto pair = hermitian_eigenvalues(partial_transpose(partial_trace(rho, Site::C), Site::A));
    auto nearest = [](const std::vector<double>& sp, double v) {
      double best = 1e300;
      for (double s : sp) best = std::min(best, std::abs(s - v));
      return best;
    };
    worst = std::max(worst, nearest(tri, ev.tri_exchange));
    worst = std::max(worst, nearest(tri, ev.tri_ground));
    worst = std::max(worst, nearest(pair, ev.pair_exchange));
    worst = std::max(worst, nearest(pair, ev.pair_ground));
    if (tp.p >= tp.sigma && ev.pair_exchange < 0.0 && ev.pair_ground < 0.0)
      exclusion_ok = false;
  }
  t.check(worst <= 1e-12, "toy closed-form eigenvalues in numeric PT spectra",
          "worst " + format_double(worst));
  t.check(exclusion_ok, "toy pair eigenvalues never simultaneously negative");
}

void selftest_linear_branches(SelfTest& t) {
  // Does the branch dropped by the single-branch end-detector negativity
  // ever matter on a gap/separation grid? Informational census.
  int active = 0, differing = 0;
  double max_diff = 0.0;
  for (int gi = 0; gi < 60; ++gi)
    for (int li = 0; li < 60; ++li) {
      DetectorParams p{0.1, -1.0 + 4.0 * gi / 59.0};
      const double L = 0.25 + (10.0 - 0.25) * li / 59.0;
      const MatrixElements me = matrix_elements(p, build_geometry(GeometryKind::Linear, L));
      const PiTangleResult full = closed_route(me);
      const double single = one_vs_rest_negativity_single_branch(me.p, me.c_bc, me.x_ab, me.x_ac);
      if (full.n_a_bc > 0.0) ++active;
      if (std::abs(full.n_a_bc - single) > 1e-15) {
        ++differing;
        max_diff = std::max(max_diff, std::abs(full.n_a_bc - single));
      }
    }
  std::cout << "info linear end-cut negativity: " << active << "/3600 grid cells nonzero, "
            << differing << " differ from the single-branch form (max diff "
            << format_double(max_diff) << ")\n";
  t.check(true, "linear single-branch census recorded");
}

int run_selftest() {
  SelfTest t;
  selftest_special_functions(t);
  selftest_routes(t);
  selftest_toy_spectra(t);
  selftest_linear_branches(t);
  if (t.failures) {
    std::cout << t.failures << " selftest check(s) failed\n";
    return 2;
  }
  std::cout << "all selftest checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite entanglement harvesting for three Unruh-DeWitt detectors"};
  app.require_subcommand(1);

  // ---- point ----
  auto* point = app.add_subcommand("point", "evaluate a single parameter point");
  std::string pt_geometry = "equilateral", pt_route = "both";
  double pt_gap = 1.0, pt_length = 1.0, pt_base = 7.0, pt_lambda = 0.1;
  point->add_option("--geometry", pt_geometry, "equilateral | linear | scalene");
  point->add_option("--gap", pt_gap, "energy gap (Omega sigma)");
  point->add_option("--length", pt_length,
                    "separation L/sigma (displacement D/sigma for scalene)");
  point->add_option("--base", pt_base, "scalene base separation L_AC/sigma");
  point->add_option("--lambda", pt_lambda, "coupling");
  point->add_option("--route", pt_route, "closed-form | eigenvalue | both");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "grid sweep written as CSV");
  std::string sw_config, sw_geometry, sw_route, sw_output;
  double sw_lambda, sw_gap_min, sw_gap_max, sw_len_min, sw_len_max, sw_base;
  int sw_gap_steps, sw_len_steps, sw_threads;
  bool sw_print = false;
  auto* o_cfg = sweep->add_option("--config", sw_config, "config file (key = value)");
  auto* o_geo = sweep->add_option("--geometry", sw_geometry, "equilateral | linear | scalene");
  auto* o_lam = sweep->add_option("--lambda", sw_lambda, "coupling");
  auto* o_gmin = sweep->add_option("--gap-min", sw_gap_min, "gap axis start");
  auto* o_gmax = sweep->add_option("--gap-max", sw_gap_max, "gap axis end");
  auto* o_gst = sweep->add_option("--gap-steps", sw_gap_steps, "gap axis points");
  auto* o_lmin = sweep->add_option("--length-min", sw_len_min, "length axis start");
  auto* o_lmax = sweep->add_option("--length-max", sw_len_max, "length axis end");
  auto* o_lst = sweep->add_option("--length-steps", sw_len_steps, "length axis points");
  auto* o_base = sweep->add_option("--scalene-base", sw_base, "scalene base L_AC/sigma");
  auto* o_rt = sweep->add_option("--route", sw_route, "closed-form | eigenvalue | both");
  auto* o_out = sweep->add_option("--output", sw_output, "output CSV path");
  auto* o_thr = sweep->add_option("--threads", sw_threads, "worker count (0 = auto)");
  sweep->add_flag("--print-config", sw_print, "print the resolved configuration and exit");

  // ---- toy ----
  auto* toy = app.add_subcommand("toy", "evaluate one toy-model parameter set");
  double ty_p = 0.0, ty_c = 0.0, ty_x = 0.0, ty_e = 0.0, ty_sigma = 0.0;
  double ty_lambda = 0.1, ty_p2 = 0.0, ty_c2 = 0.0, ty_x2 = 0.0, ty_e4 = 0.0, ty_s6 = 0.0;
  auto* o_p2 = toy->add_option("--P2", ty_p2, "perturbative P coefficient");
  toy->add_option("--C2", ty_c2, "perturbative C coefficient");
  toy->add_option("--X2", ty_x2, "perturbative |X| coefficient");
  toy->add_option("--E4", ty_e4, "perturbative E coefficient");
  toy->add_option("--Sigma6", ty_s6, "perturbative Sigma coefficient");
  toy->add_option("--lambda", ty_lambda, "coupling for the perturbative assembly");
  auto* o_p = toy->add_option("--P", ty_p, "transition probability");
  toy->add_option("--C", ty_c, "single-excitation correlation");
  toy->add_option("--X", ty_x, "|X| coherence");
  toy->add_option("--E", ty_e, "double-excitation weight");
  toy->add_option("--Sigma", ty_sigma, "triple-excitation weight");

  // ---- toy-scan ----
  auto* scan = app.add_subcommand("toy-scan", "scan the perturbative toy pi-tangle");
  CkwScanConfig scan_cfg;
  std::string scan_output = "toy_scan.csv";
  scan->add_option("--p2-min", scan_cfg.p2_min, "P2 axis start");
  scan->add_option("--p2-max", scan_cfg.p2_max, "P2 axis end");
  scan->add_option("--p2-steps", scan_cfg.p2_steps, "P2 axis points");
  scan->add_option("--x2-min", scan_cfg.x2_min, "|X2| axis start");
  scan->add_option("--x2-max", scan_cfg.x2_max, "|X2| axis end");
  scan->add_option("--x2-steps", scan_cfg.x2_steps, "|X2| axis points");
  scan->add_option("--ratio", scan_cfg.c2_ratio, "C2 / P2 ratio");
  scan->add_option("--lambda", scan_cfg.lambda, "coupling");
  scan->add_option("--threads", scan_cfg.threads, "worker count (0 = auto)");
  scan->add_option("--output", scan_output, "output CSV path");

  auto* selftest = app.add_subcommand("selftest", "run the built-in consistency suite");

  try {
    app.parse(argc, argv);

    if (point->parsed())
      return run_point(pt_geometry, pt_lambda, pt_gap, pt_length, pt_base, pt_route);

    if (sweep->parsed()) {
      SweepConfig cfg;
      if (o_cfg->count()) cfg = load_config_file(sw_config, cfg);
      if (o_geo->count()) cfg.geometry = geometry_kind_from_string(sw_geometry);
      if (o_lam->count()) cfg.lambda = sw_lambda;
      if (o_gmin->count()) cfg.gap.min = sw_gap_min;
      if (o_gmax->count()) cfg.gap.max = sw_gap_max;
      if (o_gst->count()) cfg.gap.steps = sw_gap_steps;
      if (o_lmin->count()) cfg.length.min = sw_len_min;
      if (o_lmax->count()) cfg.length.max = sw_len_max;
      if (o_lst->count()) cfg.length.steps = sw_len_steps;
      if (o_base->count()) cfg.scalene_base = sw_base;
      if (o_rt->count()) cfg.route = route_from_string(sw_route);
      if (o_out->count()) cfg.output = sw_output;
      if (o_thr->count()) cfg.threads = sw_threads;
      if (sw_print) {
        std::cout << print_config(cfg);
        return 0;
      }
      cfg.validate();
      DetectorParams p{cfg.lambda, 0.0};
      p.validate();
      warn_coupling(p);
      const auto cells = run_sweep(cfg);
      write_sweep_csv_file(cells, cfg.route == Route::Both, cfg.output);
      std::cout << "wrote " << cfg.output << " (" << cells.size() << " cells)\n";
      return 0;
    }

    if (toy->parsed()) {
      ToyParams tp;
      PerturbativeToyParams pp;
      bool have_pert = o_p2->count() > 0;
      if (have_pert && o_p->count())
        throw CLI::ValidationError("toy", "give either --P.. or --P2.. parameters, not both");
      if (have_pert) {
        pp.lambda = ty_lambda;
        pp.p2 = ty_p2;
        pp.c2 = ty_c2;
        pp.x2 = ty_x2;
        pp.e4 = ty_e4;
        pp.sigma6 = ty_s6;
        tp = pp.assemble();
      } else {
        tp.p = ty_p;
        tp.c = ty_c;
        tp.x = ty_x;
        tp.e = ty_e;
        tp.sigma = ty_sigma;
      }
      return run_toy(tp, have_pert, pp);
    }

    if (scan->parsed()) {
      const auto cells = ckw_scan(scan_cfg);
      write_ckw_csv_file(cells, scan_output);
      std::cout << "wrote " << scan_output << " (" << cells.size() << " cells)\n";
      return 0;
    }

    if (selftest->parsed()) return run_selftest();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
