#pragma once

#include <array>
#include <complex>
#include <vector>

#include "pitangle/detector_model.hpp"

namespace pitangle {

enum class Site { A = 0, B = 1, C = 2 };

// Basis ordering of the three-detector Hilbert space. Every index map in
// this module is derived from this single table.
//   0:|000>  1:|001>  2:|010>  3:|100>  4:|011>  5:|101>  6:|110>  7:|111>
// (bits listed as occupation of A, B, C).
inline constexpr std::array<std::array<int, 3>, 8> kBasisBits = {{
    {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0},
    {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1},
}};

int basis_index(int a, int b, int c);

/// Dense complex matrix of dimension 4 or 8, row-major. Used both for
/// density matrices and for their (Hermitian, not necessarily positive)
/// partial transposes. The 4x4 basis is {|00>, |01>, |10>, |11>} over the
/// two remaining detectors in alphabetical order.
class DensityMatrix {
 public:
  explicit DensityMatrix(int dim);

  int dim() const { return dim_; }
  std::complex<double>& operator()(int r, int c) { return m_[r * dim_ + c]; }
  const std::complex<double>& operator()(int r, int c) const { return m_[r * dim_ + c]; }

  std::complex<double> trace() const;
  double max_abs() const;
  /// Largest |m(r,c) - conj(m(c,r))| over all entries.
  double hermiticity_error() const;

  bool operator==(const DensityMatrix& o) const;

 private:
  int dim_;
  std::array<std::complex<double>, 64> m_{};
};

/// Leading-order three-detector state from the closed-form elements:
/// ground weight 1 - 3P, the C block on the single-excitation sector and
/// the X column linking the ground state to the double excitations.
DensityMatrix build_rho(const MatrixElements& me);

/// Transpose of one tensor factor. For dim 8 the site is A, B or C; for
/// dim 4, A and B address the first and second factor and C is invalid.
/// Pure entry permutation, so applying it twice restores the input exactly.
DensityMatrix partial_transpose(const DensityMatrix& rho, Site site);

/// Trace over one detector of an 8x8 state; the remaining two keep their
/// alphabetical order in the 4x4 basis.
DensityMatrix partial_trace(const DensityMatrix& rho, Site site);

/// All eigenvalues of a Hermitian matrix (dim <= 8), ascending. Cyclic
/// Jacobi on the 2n x 2n real-symmetric embedding; throws
/// std::invalid_argument when the input fails the Hermiticity tolerance.
std::vector<double> hermitian_eigenvalues(const DensityMatrix& m);

/// Negativity across the cut separating `site` from the rest:
/// absolute sum of the negative eigenvalues of the partial transpose.
/// Eigenvalues above -1e-13 count as zero, so the result is never a
/// rounding-level negative number.
double negativity(const DensityMatrix& rho, Site site);

namespace detail {
inline constexpr double kNegativityClamp = 1e-13;
inline constexpr double kHermiticityTol = 1e-12;
}  // namespace detail

}  // namespace pitangle
