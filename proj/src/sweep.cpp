#include "pitangle/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pitangle/parallel.hpp"
#include "pitangle/toy_model.hpp"

namespace pitangle {

GeometryKind geometry_kind_from_string(const std::string& s) {
  if (s == "equilateral") return GeometryKind::Equilateral;
  if (s == "linear") return GeometryKind::Linear;
  if (s == "scalene") return GeometryKind::Scalene;
  throw std::invalid_argument("unknown geometry '" + s + "'");
}

std::string to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::Equilateral: return "equilateral";
    case GeometryKind::Linear: return "linear";
    case GeometryKind::Scalene: return "scalene";
  }
  return "?";
}

Route route_from_string(const std::string& s) {
  if (s == "closed-form") return Route::ClosedForm;
  if (s == "eigenvalue") return Route::Eigenvalue;
  if (s == "both") return Route::Both;
  throw std::invalid_argument("unknown route '" + s + "'");
}

std::string to_string(Route r) {
  switch (r) {
    case Route::ClosedForm: return "closed-form";
    case Route::Eigenvalue: return "eigenvalue";
    case Route::Both: return "both";
  }
  return "?";
}

Geometry build_geometry(GeometryKind kind, double length, double scalene_base) {
  constexpr double kHalfSqrt3 = 0.86602540378443864676;
  Geometry g;
  switch (kind) {
    case GeometryKind::Equilateral:
      if (!(length > 0.0)) throw std::invalid_argument("equilateral side must be > 0");
      g.positions = {Vec3{0.0, 0.0, 0.0}, Vec3{length, 0.0, 0.0},
                     Vec3{0.5 * length, kHalfSqrt3 * length, 0.0}};
      break;
    case GeometryKind::Linear:
      if (!(length > 0.0)) throw std::invalid_argument("linear spacing must be > 0");
      g.positions = {Vec3{-length, 0.0, 0.0}, Vec3{0.0, 0.0, 0.0}, Vec3{length, 0.0, 0.0}};
      break;
    case GeometryKind::Scalene:
      if (!(scalene_base > 0.0)) throw std::invalid_argument("scalene base must be > 0");
      g.positions = {Vec3{0.0, 0.0, 0.0},
                     Vec3{0.5 * scalene_base + length, kHalfSqrt3 * scalene_base, 0.0},
                     Vec3{scalene_base, 0.0, 0.0}};
      break;
  }
  g.validate();
  return g;
}

void SweepConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("sweep: lambda must be > 0");
  if (gap.steps < 1 || length.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
  if (gap.steps > 1 && !(gap.min < gap.max))
    throw std::invalid_argument("sweep: gap axis needs min < max");
  if (length.steps > 1 && !(length.min < length.max))
    throw std::invalid_argument("sweep: length axis needs min < max");
  const double min_len = length.min;
  if (geometry == GeometryKind::Scalene) {
    if (!(scalene_base > 0.0)) throw std::invalid_argument("sweep: scalene_base must be > 0");
  } else if (!(min_len > 0.0)) {
    throw std::invalid_argument("sweep: lengths must be > 0");
  }
  if (output.empty()) throw std::invalid_argument("sweep: output path is empty");
}

PiTangleResult closed_route(const MatrixElements& me) {
  return pi_scalene_closed(me.p, me.c_ab, me.c_ac, me.c_bc, me.x_ab, me.x_ac, me.x_bc);
}

PiTangleResult eigen_route(const MatrixElements& me) {
  return pi_tangle_general(build_rho(me));
}

double route_discrepancy_bound(const MatrixElements& me) {
  const PiTangleResult c = closed_route(me);
  const double xi = 1.0 - 3.0 * me.p;
  const double g2 = 1.0 - 2.0 * me.p;
  const double d_a = (std::norm(me.x_bc) + me.c_ac * me.c_ac + me.c_ab * me.c_ab) / xi;
  const double d_b = (std::norm(me.x_ac) + me.c_ab * me.c_ab + me.c_bc * me.c_bc) / xi;
  const double d_c = (std::norm(me.x_ab) + me.c_ac * me.c_ac + me.c_bc * me.c_bc) / xi;
  const double d_ab = me.c_ab * me.c_ab / g2;
  const double d_ac = me.c_ac * me.c_ac / g2;
  const double d_bc = me.c_bc * me.c_bc / g2;
  const double tri = (2.0 * c.n_a_bc + d_a) * d_a + (2.0 * c.n_b_ac + d_b) * d_b +
                     (2.0 * c.n_c_ab + d_c) * d_c;
  const double pair = (2.0 * c.n_ab + d_ab) * d_ab + (2.0 * c.n_ac + d_ac) * d_ac +
                      (2.0 * c.n_bc + d_bc) * d_bc;
  return 1e-10 + 2.0 * (tri + 2.0 * pair) / 3.0;
}

PointResult evaluate_point(const DetectorParams& params, GeometryKind kind, double length,
                           double scalene_base, Route route) {
  PointResult out;
  out.elements = matrix_elements(params, build_geometry(kind, length, scalene_base));
  if (route != Route::Eigenvalue) {
    out.closed = closed_route(out.elements);
    out.has_closed = true;
  }
  if (route != Route::ClosedForm) {
    out.eigen = eigen_route(out.elements);
    out.has_eigen = true;
  }
  if (route == Route::Both) out.discrepancy = std::abs(out.closed.pi - out.eigen.pi);
  return out;
}

std::vector<SweepCell> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  DetectorParams params{cfg.lambda, 0.0};
  const std::size_t total = static_cast<std::size_t>(cfg.gap.steps) * cfg.length.steps;
  std::vector<SweepCell> cells(total);
  detail::parallel_for_index(total, cfg.threads, [&](std::size_t idx) {
    const int gi = static_cast<int>(idx) / cfg.length.steps;
    const int li = static_cast<int>(idx) % cfg.length.steps;
    SweepCell& cell = cells[idx];
    cell.gap = cfg.gap.value(gi);
    cell.length = cfg.length.value(li);
    try {
      DetectorParams p = params;
      p.gap = cell.gap;
      const PointResult pr =
          evaluate_point(p, cfg.geometry, cell.length, cfg.scalene_base, cfg.route);
      cell.r = pr.has_closed ? pr.closed : pr.eigen;
      if (cfg.route == Route::Both) {
        cell.discrepancy = pr.discrepancy;
        if (cell.discrepancy > route_discrepancy_bound(pr.elements))
          throw std::runtime_error("route discrepancy " + format_double(cell.discrepancy) +
                                   " exceeds bound");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep cell (gap=" + format_double(cell.gap) +
                               ", length=" + format_double(cell.length) + "): " + e.what());
    }
  });
  return cells;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(const std::vector<SweepCell>& cells, bool with_discrepancy,
                     std::ostream& out) {
  out << "gap,length,pi,pi_A,pi_B,pi_C,N_A_BC,N_B_AC,N_C_AB,N_AB,N_AC,N_BC";
  if (with_discrepancy) out << ",discrepancy";
  out << "\n";
  for (const SweepCell& c : cells) {
    out << format_double(c.gap) << ',' << format_double(c.length) << ','
        << format_double(c.r.pi) << ',' << format_double(c.r.pi_a) << ','
        << format_double(c.r.pi_b) << ',' << format_double(c.r.pi_c) << ','
        << format_double(c.r.n_a_bc) << ',' << format_double(c.r.n_b_ac) << ','
        << format_double(c.r.n_c_ab) << ',' << format_double(c.r.n_ab) << ','
        << format_double(c.r.n_ac) << ',' << format_double(c.r.n_bc);
    if (with_discrepancy) out << ',' << format_double(c.discrepancy);
    out << "\n";
  }
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  return f;
}

void finish_output(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void write_sweep_csv_file(const std::vector<SweepCell>& cells, bool with_discrepancy,
                          const std::string& path) {
  auto f = open_output(path);
  write_sweep_csv(cells, with_discrepancy, f);
  finish_output(f, path);
}

void write_ckw_csv(const std::vector<CkwCell>& cells, std::ostream& out) {
  out << "P2,X2,pi,region\n";
  for (const CkwCell& c : cells) {
    const char* region = c.excluded ? "excluded" : (c.pi < 0.0 ? "negative" : "nonnegative");
    out << format_double(c.p2) << ',' << format_double(c.x2) << ',' << format_double(c.pi)
        << ',' << region << "\n";
  }
}

void write_ckw_csv_file(const std::vector<CkwCell>& cells, const std::string& path) {
  auto f = open_output(path);
  write_ckw_csv(cells, f);
  finish_output(f, path);
}

namespace {

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number '" + s + "' for " + key);
  }
}

int parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer '" + s + "' for " + key);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

SweepConfig load_config_file(const std::string& path, SweepConfig base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at " + path + ":" +
                                  std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "geometry") base.geometry = geometry_kind_from_string(val);
    else if (key == "lambda") base.lambda = parse_double(val, key);
    else if (key == "gap_min") base.gap.min = parse_double(val, key);
    else if (key == "gap_max") base.gap.max = parse_double(val, key);
    else if (key == "gap_steps") base.gap.steps = parse_int(val, key);
    else if (key == "length_min") base.length.min = parse_double(val, key);
    else if (key == "length_max") base.length.max = parse_double(val, key);
    else if (key == "length_steps") base.length.steps = parse_int(val, key);
    else if (key == "scalene_base") base.scalene_base = parse_double(val, key);
    else if (key == "route") base.route = route_from_string(val);
    else if (key == "output") base.output = val;
    else if (key == "threads") base.threads = parse_int(val, key);
    else
      throw std::invalid_argument("config: unknown key '" + key + "' at " + path + ":" +
                                  std::to_string(lineno));
  }
  return base;
}

std::string print_config(const SweepConfig& cfg) {
  std::ostringstream out;
  out << "geometry = " << to_string(cfg.geometry) << "\n"
      << "lambda = " << format_double(cfg.lambda) << "\n"
      << "gap_min = " << format_double(cfg.gap.min) << "\n"
      << "gap_max = " << format_double(cfg.gap.max) << "\n"
      << "gap_steps = " << cfg.gap.steps << "\n"
      << "length_min = " << format_double(cfg.length.min) << "\n"
      << "length_max = " << format_double(cfg.length.max) << "\n"
      << "length_steps = " << cfg.length.steps << "\n"
      << "scalene_base = " << format_double(cfg.scalene_base) << "\n"
      << "route = " << to_string(cfg.route) << "\n"
      << "output = " << cfg.output << "\n"
      << "threads = " << cfg.threads << "\n";
  return out.str();
}

}  // namespace pitangle
