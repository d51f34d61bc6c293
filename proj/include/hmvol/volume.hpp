// Hirzebruch-Mumford volumes of B^n / SU(L, O_K) and B^n / SU(M, O_K): the
// closed-form table rows, the assembly from tau_infinity and compact-group
// volumes, their ratio, exact rationalization and numeric evaluation.
#ifndef HMVOL_VOLUME_HPP
#define HMVOL_VOLUME_HPP

#include <optional>
#include <string>
#include <vector>

#include "hmvol/group_enum.hpp"
#include "hmvol/special_values.hpp"
#include "hmvol/volume_expression.hpp"

namespace hmvol {

struct TableRow {
  VolumeExpression expr;
  /// The printed row elides which factors between zeta(2) and zeta(n+1) are
  /// L-values; expr expands them as alternating zeta(even) / L(odd).
  bool ambiguous = false;
  std::string row;  // e.g. "odd/-4d"
};

TableRow hm_table_row(Lattice lattice, int n, const FieldData& field);
VolumeExpression hm_table(Lattice lattice, int n, const FieldData& field);

/// n! sqrt|det B| tau_inf / ((2 pi)^n Vol(S(U(n) x U(1)))), with the trace-form
/// determinant of the lattice's integral basis.
VolumeExpression hm_assembled(Lattice lattice, int n, const FieldData& field);

/// Vol(B^n / Gamma') / Vol(B^n / Gamma) from the local densities at 2 and p | d
/// and the ratio of trace-form determinants.
Rational hm_ratio(int n, const FieldData& field);

/// Substitutes exact zeta(2k) and L(odd k). Throws InvariantViolation unless
/// the pi exponent cancels, the |D| exponent is integral and the remaining
/// radicand is a rational square.
Rational rationalize(const VolumeExpression& v);

struct NumericResult {
  Real value;
  Real error_bound;
};
NumericResult evaluate_numeric(const VolumeExpression& v, double tol);

enum class Verdict { Match, TableAmbiguous, Mismatch };
std::string to_string(Verdict v);

struct DiscrepancyReport {
  Lattice lattice = Lattice::L;
  int n = 0;
  std::int64_t d = 0;
  std::optional<Rational> table_value;
  Rational assembled_value;
  Verdict verdict = Verdict::Match;
  /// For ambiguous rows: does the alternating reading agree with the assembly?
  bool expansion_agrees = false;
};

/// Every (lattice, n <= n_max, d), ordered by lattice, n, then d.
std::vector<DiscrepancyReport> discrepancy_report(int n_max, const std::vector<std::int64_t>& d_list);

}  // namespace hmvol

#endif  // HMVOL_VOLUME_HPP
