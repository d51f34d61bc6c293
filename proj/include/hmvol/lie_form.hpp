// Integral Lie-algebra bases for L and M, the Gram determinant of the trace
// form B(X, Y) = Tr(XY), sectional curvature, and compact-group volumes.
#ifndef HMVOL_LIE_FORM_HPP
#define HMVOL_LIE_FORM_HPP

#include <string>
#include <vector>

#include "hmvol/group_enum.hpp"
#include "hmvol/volume_expression.hpp"

namespace hmvol {

/// a + b*eps with integer coordinates.
struct ZEps {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const ZEps&, const ZEps&) = default;
};

struct LieMatrix {
  std::size_t size = 0;
  std::vector<ZEps> entries;  // row-major
  std::string name;

  explicit LieMatrix(std::size_t n = 0, std::string label = {}) : size(n), entries(n * n), name(std::move(label)) {}
  ZEps& at(std::size_t i, std::size_t j) { return entries[i * size + j]; }
  const ZEps& at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

struct LieBasis {
  Lattice lattice = Lattice::L;
  int n = 0;
  FieldData field;
  std::vector<LieMatrix> elements;
};

/// Order: g_1..g_n, e_{1,2}, f_{1,2}, ..., e_{n-1,n}, f_{n-1,n}, e_1, f_1, ..., e_n, f_n
/// (primed e'_k, f'_k for M). Throws InvariantViolation if an element fails
/// X*form + form*conj(X)^T = 0 or Tr X = 0.
LieBasis build_basis(Lattice lattice, int n, const FieldData& field);

/// Does X satisfy the defining system of the Lie algebra over Z[eps]?
bool in_lie_algebra(const LieMatrix& x, const std::vector<std::int64_t>& form, const FieldData& field);

/// Matrix of Tr(X_i X_j) over the basis.
std::vector<std::vector<BigInt>> gram_matrix(const LieBasis& basis);
/// Fraction-free elimination on the Gram matrix.
BigInt gram_det(const LieBasis& basis);
/// d^{n(n+3)/2} (n+1) times the 2-power of the lattice and residue class of d.
BigInt gram_det_expected(Lattice lattice, int n, const FieldData& field);

/// B([[X,JX],X],JX) / (B(X,X) B(JX,JX)) where J multiplies the last column by
/// i and the last row by -i. X must be nonzero and supported on the last row
/// and column off the diagonal.
Rational curvature_ratio(const LieMatrix& x, const FieldData& field);

/// sqrt(n) (2 pi)^{(n^2+n-2)/2} / prod_{i<n} i!
VolumeExpression vol_su(int n);
/// sqrt(n+1) (2 pi)^{(n^2+n)/2} / prod_{i<n} i!
VolumeExpression vol_max_compact(int n);

}  // namespace hmvol

#endif  // HMVOL_LIE_FORM_HPP
