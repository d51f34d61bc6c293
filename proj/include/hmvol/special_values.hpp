// zeta(s) and L(s, chi_D) at integers: Euler-Maclaurin numerics with explicit
// remainder bounds, and exact forms through (generalized) Bernoulli numbers.
#ifndef HMVOL_SPECIAL_VALUES_HPP
#define HMVOL_SPECIAL_VALUES_HPP

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hmvol/quadfield.hpp"

namespace hmvol {

/// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;

Real to_real(const Rational& r);
Real pi_real();

/// coeff * pi^pi_power * |D|^d_power
struct ExactForm {
  Rational coeff;
  long pi_power = 0;
  Rational d_power{0};
  Real evaluate(std::int64_t abs_d = 1) const;
  std::string str() const;
};

enum class SpecialKind { Zeta, LChi };

struct SpecialValue {
  SpecialKind kind = SpecialKind::Zeta;
  int argument = 0;
  std::int64_t d = 0;  // field of chi_D; 0 for zeta
  Real numeric;
  Real error_bound;
  std::optional<ExactForm> exact;
};

struct HurwitzValue {
  Real value;
  Real error_bound;
};
/// zeta(s, a) for s >= 2 and a > 0, remainder bounded by the first omitted
/// Euler-Maclaurin term.
HurwitzValue hurwitz_zeta(int s, const Real& a, const Real& tol);

SpecialValue zeta_numeric(int s, double tol);
/// zeta(2k) = (-1)^{k+1} B_{2k} 2^{2k-1} / (2k)! * pi^{2k}. Odd arguments are rejected.
ExactForm zeta_exact(int s);

enum class LMode { Hurwitz, PartialSums };
/// L(k, chi_D) = f^{-k} sum_a chi(a) zeta(k, a/f), or direct partial sums with
/// the Abel-summation tail bound (max S - min S) (M+1)^{-k}.
SpecialValue l_numeric(int k, const FieldData& field, double tol, LMode mode = LMode::Hurwitz);

/// B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f).
Rational gen_bernoulli(int k, const FieldData& field);

/// c * pi^k * |D|^{1/2-k} for odd k >= 3. The overall sign is fixed once by
/// comparison with l_numeric; disagreement throws InvariantViolation.
ExactForm l_exact(int k, const FieldData& field);

struct EulerProduct {
  Real value;
  Real error_bound;  // |L - value| under the truncation bound
};
/// prod_{p <= limit} (1 - chi(p) p^{-k})^{-1}
EulerProduct l_euler_product(int k, const FieldData& field, std::uint64_t limit);

}  // namespace hmvol

#endif  // HMVOL_SPECIAL_VALUES_HPP
