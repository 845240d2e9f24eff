#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pitangle/detector_model.hpp"
#include "pitangle/pi_tangle.hpp"
#include "pitangle/qubit_algebra.hpp"
#include "pitangle/special_functions.hpp"
#include "pitangle/sweep.hpp"
#include "pitangle/toy_model.hpp"

namespace py = pybind11;
using namespace pitangle;

namespace {

py::array_t<std::complex<double>> matrix_to_numpy(const DensityMatrix& m) {
  const int n = m.dim();
  py::array_t<std::complex<double>> out({n, n});
  auto buf = out.mutable_unchecked<2>();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) buf(r, c) = m(r, c);
  return out;
}

DensityMatrix matrix_from_numpy(const py::array_t<std::complex<double>>& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1) ||
      (arr.shape(0) != 4 && arr.shape(0) != 8))
    throw std::invalid_argument("expected a 4x4 or 8x8 complex matrix");
  const int n = static_cast<int>(arr.shape(0));
  DensityMatrix m(n);
  auto buf = arr.unchecked<2>();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = buf(r, c);
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement harvesting of three Unruh-DeWitt detectors";

  // special functions
  m.def("erfc_real", &erfc_real, py::arg("x"));
  m.def("erfcx", &erfcx, py::arg("x"));
  m.def("dawson", &dawson, py::arg("x"));
  m.def("faddeeva_w", &faddeeva_w, py::arg("z"));
  m.def("complex_erf", &complex_erf, py::arg("z"));

  // detector model
  py::class_<DetectorParams>(m, "DetectorParams")
      .def(py::init<>())
      .def(py::init([](double coupling, double gap) {
             DetectorParams p{coupling, gap};
             p.validate();
             return p;
           }),
           py::arg("coupling"), py::arg("gap"))
      .def_readwrite("coupling", &DetectorParams::coupling)
      .def_readwrite("gap", &DetectorParams::gap)
      .def("weak_coupling", &DetectorParams::weak_coupling);

  py::class_<Geometry>(m, "Geometry")
      .def("distance", &Geometry::distance, py::arg("i"), py::arg("j"))
      .def_property_readonly("positions", [](const Geometry& g) {
        py::list out;
        for (const auto& v : g.positions) out.append(py::make_tuple(v.x, v.y, v.z));
        return out;
      });

  py::class_<MatrixElements>(m, "MatrixElements")
      .def_readonly("p", &MatrixElements::p)
      .def_readonly("c_ab", &MatrixElements::c_ab)
      .def_readonly("c_ac", &MatrixElements::c_ac)
      .def_readonly("c_bc", &MatrixElements::c_bc)
      .def_readonly("x_ab", &MatrixElements::x_ab)
      .def_readonly("x_ac", &MatrixElements::x_ac)
      .def_readonly("x_bc", &MatrixElements::x_bc);

  m.def("transition_probability", &transition_probability, py::arg("params"));
  m.def("cross_correlation_C", &cross_correlation_C, py::arg("params"), py::arg("L"));
  m.def("cross_correlation_X", &cross_correlation_X, py::arg("params"), py::arg("L"));
  m.def("matrix_elements", &matrix_elements, py::arg("params"), py::arg("geometry"));

  // qubit algebra
  py::enum_<Site>(m, "Site").value("A", Site::A).value("B", Site::B).value("C", Site::C);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def("to_numpy", &matrix_to_numpy)
      .def_static("from_numpy", &matrix_from_numpy)
      .def("trace", &DensityMatrix::trace)
      .def("hermiticity_error", &DensityMatrix::hermiticity_error);

  m.def("build_rho", &build_rho, py::arg("elements"));
  m.def("partial_transpose", &partial_transpose, py::arg("rho"), py::arg("site"));
  m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("site"));
  m.def("hermitian_eigenvalues", &hermitian_eigenvalues, py::arg("matrix"));
  m.def("negativity", &negativity, py::arg("rho"), py::arg("site"));

  // pi-tangle
  py::class_<PiTangleResult>(m, "PiTangleResult")
      .def_readonly("pi", &PiTangleResult::pi)
      .def_readonly("pi_a", &PiTangleResult::pi_a)
      .def_readonly("pi_b", &PiTangleResult::pi_b)
      .def_readonly("pi_c", &PiTangleResult::pi_c)
      .def_readonly("n_a_bc", &PiTangleResult::n_a_bc)
      .def_readonly("n_b_ac", &PiTangleResult::n_b_ac)
      .def_readonly("n_c_ab", &PiTangleResult::n_c_ab)
      .def_readonly("n_ab", &PiTangleResult::n_ab)
      .def_readonly("n_ac", &PiTangleResult::n_ac)
      .def_readonly("n_bc", &PiTangleResult::n_bc)
      .def("__repr__", [](const PiTangleResult& r) {
        return "<PiTangleResult pi=" + format_double(r.pi) + ">";
      });

  m.def("pi_tangle_general", &pi_tangle_general, py::arg("rho"));
  m.def("pi_equilateral_closed", &pi_equilateral_closed, py::arg("p"), py::arg("c"),
        py::arg("abs_x"));
  m.def("pi_linear_closed", &pi_linear_closed, py::arg("p"), py::arg("c_l"), py::arg("c_2l"),
        py::arg("x_l"), py::arg("x_2l"));
  m.def("pi_scalene_closed", &pi_scalene_closed, py::arg("p"), py::arg("c_ab"),
        py::arg("c_ac"), py::arg("c_bc"), py::arg("x_ab"), py::arg("x_ac"), py::arg("x_bc"));

  // toy model
  py::class_<ToyParams>(m, "ToyParams")
      .def(py::init([](double p, double c, std::complex<double> x, double e, double sigma) {
             ToyParams t;
             t.p = p;
             t.c = c;
             t.x = x;
             t.e = e;
             t.sigma = sigma;
             return t;
           }),
           py::arg("p"), py::arg("c"), py::arg("x"), py::arg("e") = 0.0,
           py::arg("sigma") = 0.0)
      .def_readwrite("p", &ToyParams::p)
      .def_readwrite("c", &ToyParams::c)
      .def_readwrite("x", &ToyParams::x)
      .def_readwrite("e", &ToyParams::e)
      .def_readwrite("sigma", &ToyParams::sigma)
      .def("xi", &ToyParams::xi);

  py::class_<PerturbativeToyParams>(m, "PerturbativeToyParams")
      .def(py::init([](double lam, double p2, double c2, std::complex<double> x2, double e4,
                       double sigma6) {
             PerturbativeToyParams t;
             t.lambda = lam;
             t.p2 = p2;
             t.c2 = c2;
             t.x2 = x2;
             t.e4 = e4;
             t.sigma6 = sigma6;
             return t;
           }),
           py::arg("lam"), py::arg("p2"), py::arg("c2"), py::arg("x2"), py::arg("e4") = 0.0,
           py::arg("sigma6") = 0.0)
      .def_readwrite("lam", &PerturbativeToyParams::lambda)
      .def_readwrite("p2", &PerturbativeToyParams::p2)
      .def_readwrite("c2", &PerturbativeToyParams::c2)
      .def_readwrite("x2", &PerturbativeToyParams::x2)
      .def_readwrite("e4", &PerturbativeToyParams::e4)
      .def_readwrite("sigma6", &PerturbativeToyParams::sigma6)
      .def("assemble", &PerturbativeToyParams::assemble);

  py::class_<ToyPtEigenvalues>(m, "ToyPtEigenvalues")
      .def_readonly("tri_exchange", &ToyPtEigenvalues::tri_exchange)
      .def_readonly("tri_ground", &ToyPtEigenvalues::tri_ground)
      .def_readonly("pair_exchange", &ToyPtEigenvalues::pair_exchange)
      .def_readonly("pair_ground", &ToyPtEigenvalues::pair_ground);

  m.def("build_toy_rho", &build_toy_rho, py::arg("params"));
  m.def("validity_check", &validity_check, py::arg("params"));
  m.def("toy_pt_eigenvalues", &toy_pt_eigenvalues, py::arg("params"));
  m.def("toy_pi_case1", &toy_pi_case1, py::arg("params"));
  m.def("toy_pi_case1_pert", &toy_pi_case1_pert, py::arg("params"));
  m.def("toy_pi_case2", &toy_pi_case2, py::arg("params"));
  m.def("toy_pi_case2_pert", &toy_pi_case2_pert, py::arg("params"));
  m.def("toy_case1_regime", &toy_case1_regime, py::arg("params"));
  m.def("toy_case2_regime", &toy_case2_regime, py::arg("params"));

  py::class_<CkwScanConfig>(m, "CkwScanConfig")
      .def(py::init<>())
      .def_readwrite("p2_min", &CkwScanConfig::p2_min)
      .def_readwrite("p2_max", &CkwScanConfig::p2_max)
      .def_readwrite("p2_steps", &CkwScanConfig::p2_steps)
      .def_readwrite("x2_min", &CkwScanConfig::x2_min)
      .def_readwrite("x2_max", &CkwScanConfig::x2_max)
      .def_readwrite("x2_steps", &CkwScanConfig::x2_steps)
      .def_readwrite("c2_ratio", &CkwScanConfig::c2_ratio)
      .def_readwrite("lam", &CkwScanConfig::lambda)
      .def_readwrite("threads", &CkwScanConfig::threads);

  m.def("ckw_scan", [](const CkwScanConfig& cfg) {
    py::list out;
    for (const CkwCell& c : ckw_scan(cfg))
      out.append(py::make_tuple(c.p2, c.x2, c.pi, c.excluded));
    return out;
  });

  // sweeps
  py::enum_<GeometryKind>(m, "GeometryKind")
      .value("Equilateral", GeometryKind::Equilateral)
      .value("Linear", GeometryKind::Linear)
      .value("Scalene", GeometryKind::Scalene);

  py::enum_<Route>(m, "Route")
      .value("ClosedForm", Route::ClosedForm)
      .value("Eigenvalue", Route::Eigenvalue)
      .value("Both", Route::Both);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("geometry", &SweepConfig::geometry)
      .def_readwrite("lam", &SweepConfig::lambda)
      .def_property(
          "gap_axis",
          [](const SweepConfig& c) { return py::make_tuple(c.gap.min, c.gap.max, c.gap.steps); },
          [](SweepConfig& c, py::tuple t) {
            c.gap = {t[0].cast<double>(), t[1].cast<double>(), t[2].cast<int>()};
          })
      .def_property(
          "length_axis",
          [](const SweepConfig& c) {
            return py::make_tuple(c.length.min, c.length.max, c.length.steps);
          },
          [](SweepConfig& c, py::tuple t) {
            c.length = {t[0].cast<double>(), t[1].cast<double>(), t[2].cast<int>()};
          })
      .def_readwrite("scalene_base", &SweepConfig::scalene_base)
      .def_readwrite("route", &SweepConfig::route)
      .def_readwrite("output", &SweepConfig::output)
      .def_readwrite("threads", &SweepConfig::threads);

  m.def("build_geometry", &build_geometry, py::arg("kind"), py::arg("length"),
        py::arg("scalene_base") = 7.0);

  m.def("run_sweep", [](const SweepConfig& cfg) {
    py::list out;
    for (const SweepCell& c : run_sweep(cfg))
      out.append(py::make_tuple(c.gap, c.length, c.r, c.discrepancy));
    return out;
  });

  m.def("write_sweep_csv", [](const SweepConfig& cfg) {
    const auto cells = run_sweep(cfg);
    write_sweep_csv_file(cells, cfg.route == Route::Both, cfg.output);
    return cells.size();
  });
}
