#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pitangle/detector_model.hpp"
#include "pitangle/pi_tangle.hpp"

namespace pitangle {

enum class GeometryKind { Equilateral, Linear, Scalene };
enum class Route { ClosedForm, Eigenvalue, Both };

GeometryKind geometry_kind_from_string(const std::string& s);
std::string to_string(GeometryKind k);
Route route_from_string(const std::string& s);
std::string to_string(Route r);

/// Inclusive linear axis; steps == 1 pins the axis at min.
struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  int steps = 1;

  double value(int i) const { return steps == 1 ? min : min + (max - min) * i / (steps - 1); }
};

/// Detector layouts:
///  - equilateral: side-`length` triangle in the z = 0 plane;
///  - linear: A, B, C collinear with spacing `length` (total length 2*length);
///  - scalene: A = origin, C = (base, 0, 0), B the equilateral apex displaced
///    by `length` parallel to AC, so length = 0 recovers the equilateral
///    triangle of side `base`.
Geometry build_geometry(GeometryKind kind, double length, double scalene_base = 7.0);

struct SweepConfig {
  GeometryKind geometry = GeometryKind::Equilateral;
  double lambda = 0.1;
  AxisSpec gap{-1.0, 3.0, 200};
  AxisSpec length{0.25, 10.0, 200};  // displacement of B for the scalene layout
  double scalene_base = 7.0;
  Route route = Route::ClosedForm;
  std::string output = "sweep.csv";
  int threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

struct SweepCell {
  double gap = 0.0;
  double length = 0.0;
  PiTangleResult r;
  double discrepancy = 0.0;  ///< |pi_closed - pi_eigen| when both routes run
};

/// Closed-form route: the triangle closed form specialised by the geometry's
/// pairwise distances (the linear and equilateral layouts are the matching
/// degenerate patterns of it).
PiTangleResult closed_route(const MatrixElements& me);

/// Eigenvalue route: build the 8x8 state and take every negativity from
/// partial-transpose spectra.
PiTangleResult eigen_route(const MatrixElements& me);

/// Tolerance for closed-vs-eigenvalue comparison at one parameter point.
/// The two routes differ by the truncation-order terms the closed forms
/// drop: the partial transposes of the truncated state carry ground-sector
/// couplings of size ~(elements)^2 that shift each negativity by
/// delta_D = Q_D / (ground weight). The bound is that predicted shift of pi
/// with headroom, plus an absolute floor.
double route_discrepancy_bound(const MatrixElements& me);

struct PointResult {
  MatrixElements elements;
  PiTangleResult closed;
  PiTangleResult eigen;
  bool has_closed = false;
  bool has_eigen = false;
  double discrepancy = 0.0;
};

PointResult evaluate_point(const DetectorParams& params, GeometryKind kind, double length,
                           double scalene_base, Route route);

/// Row-major grid, gap as the outer (row) axis. Cells are computed on a
/// worker pool but land in pre-assigned slots, so the result is identical
/// for every thread count. Throws std::runtime_error naming the offending
/// cell if any evaluation fails or a both-route discrepancy exceeds its
/// bound.
std::vector<SweepCell> run_sweep(const SweepConfig& cfg);

/// Shortest round-trip decimal form of a double (what the CSVs store).
std::string format_double(double v);

void write_sweep_csv(const std::vector<SweepCell>& cells, bool with_discrepancy,
                     std::ostream& out);
void write_sweep_csv_file(const std::vector<SweepCell>& cells, bool with_discrepancy,
                          const std::string& path);

struct CkwCell;
void write_ckw_csv(const std::vector<CkwCell>& cells, std::ostream& out);
void write_ckw_csv_file(const std::vector<CkwCell>& cells, const std::string& path);

/// Flat key = value config file with the keys of SweepConfig
/// (geometry, lambda, gap_min, gap_max, gap_steps, length_min, length_max,
/// length_steps, scalene_base, route, output, threads). '#' starts a
/// comment. Unknown keys are errors.
SweepConfig load_config_file(const std::string& path, SweepConfig base = {});
std::string print_config(const SweepConfig& cfg);

}  // namespace pitangle
