#include "pitangle/qubit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pitangle {

int basis_index(int a, int b, int c) {
  for (int i = 0; i < 8; ++i)
    if (kBasisBits[i][0] == a && kBasisBits[i][1] == b && kBasisBits[i][2] == c) return i;
  throw std::invalid_argument("basis_index: bits out of range");
}

DensityMatrix::DensityMatrix(int dim) : dim_(dim) {
  if (dim != 4 && dim != 8) throw std::invalid_argument("DensityMatrix: dim must be 4 or 8");
}

std::complex<double> DensityMatrix::trace() const {
  std::complex<double> t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::max_abs() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
  return m;
}

double DensityMatrix::hermiticity_error() const {
  double e = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return e;
}

bool DensityMatrix::operator==(const DensityMatrix& o) const {
  if (dim_ != o.dim_) return false;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if ((*this)(r, c) != o(r, c)) return false;
  return true;
}

DensityMatrix build_rho(const MatrixElements& me) {
  DensityMatrix rho(8);
  const int g = basis_index(0, 0, 0);
  const int eC = basis_index(0, 0, 1), eB = basis_index(0, 1, 0), eA = basis_index(1, 0, 0);
  const int eBC = basis_index(0, 1, 1), eAC = basis_index(1, 0, 1), eAB = basis_index(1, 1, 0);

  rho(g, g) = 1.0 - 3.0 * me.p;
  rho(eA, eA) = rho(eB, eB) = rho(eC, eC) = me.p;

  // C couples pairs of single excitations: <e_D| rho |e_D'> = C_{DD'}
  rho(eB, eC) = me.c_bc;
  rho(eC, eB) = me.c_bc;
  rho(eA, eC) = me.c_ac;
  rho(eC, eA) = me.c_ac;
  rho(eA, eB) = me.c_ab;
  rho(eB, eA) = me.c_ab;

  // X couples the ground state to the double excitation of the pair
  rho(eBC, g) = me.x_bc;
  rho(g, eBC) = std::conj(me.x_bc);
  rho(eAC, g) = me.x_ac;
  rho(g, eAC) = std::conj(me.x_ac);
  rho(eAB, g) = me.x_ab;
  rho(g, eAB) = std::conj(me.x_ab);
  return rho;
}

DensityMatrix partial_transpose(const DensityMatrix& rho, Site site) {
  const int s = static_cast<int>(site);
  DensityMatrix out(rho.dim());
  if (rho.dim() == 8) {
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        auto rb = kBasisBits[r];
        auto cb = kBasisBits[c];
        std::swap(rb[s], cb[s]);
        out(basis_index(rb[0], rb[1], rb[2]), basis_index(cb[0], cb[1], cb[2])) = rho(r, c);
      }
    return out;
  }
  if (site == Site::C) throw std::invalid_argument("partial_transpose: dim-4 sites are A, B");
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      int rb[2] = {r >> 1, r & 1};
      int cb[2] = {c >> 1, c & 1};
      std::swap(rb[s], cb[s]);
      out(rb[0] * 2 + rb[1], cb[0] * 2 + cb[1]) = rho(r, c);
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Site site) {
  if (rho.dim() != 8) throw std::invalid_argument("partial_trace: need an 8x8 state");
  const int s = static_cast<int>(site);
  const int keep0 = s == 0 ? 1 : 0;
  const int keep1 = s == 2 ? 1 : 2;
  DensityMatrix out(4);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const auto& rb = kBasisBits[r];
      const auto& cb = kBasisBits[c];
      if (rb[s] != cb[s]) continue;
      out(rb[keep0] * 2 + rb[keep1], cb[keep0] * 2 + cb[keep1]) += rho(r, c);
    }
  return out;
}

namespace {

// Cyclic Jacobi on a real symmetric matrix held in a flat buffer.
void jacobi_symmetric(std::vector<double>& a, int n) {
  auto at = [&](int r, int c) -> double& { return a[r * n + c]; };
  double fro2 = 0.0;
  for (int i = 0; i < n * n; ++i) fro2 += a[i] * a[i];
  const double stop2 = 1e-30 * fro2;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off2 += 2.0 * at(p, q) * at(p, q);
    if (off2 <= stop2) return;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const DensityMatrix& m) {
  const double tol = detail::kHermiticityTol * std::max(1.0, m.max_abs());
  if (m.hermiticity_error() > tol)
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

  // embed H = R + iS into the symmetric [[R, -S], [S, R]]; spectrum doubles
  const int n = m.dim();
  const int N = 2 * n;
  std::vector<double> a(N * N, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const std::complex<double> h = 0.5 * (m(r, c) + std::conj(m(c, r)));
      a[r * N + c] = h.real();
      a[(r + n) * N + (c + n)] = h.real();
      a[r * N + (c + n)] = -h.imag();
      a[(r + n) * N + c] = h.imag();
    }
  jacobi_symmetric(a, N);

  std::vector<double> d(N);
  for (int i = 0; i < N; ++i) d[i] = a[i * N + i];
  std::sort(d.begin(), d.end());
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = 0.5 * (d[2 * i] + d[2 * i + 1]);
  return eig;
}

double negativity(const DensityMatrix& rho, Site site) {
  const DensityMatrix pt = partial_transpose(rho, site);
  double neg = 0.0;
  for (double ev : hermitian_eigenvalues(pt))
    if (ev < -detail::kNegativityClamp) neg -= ev;
  return neg;
}

}  // namespace pitangle
