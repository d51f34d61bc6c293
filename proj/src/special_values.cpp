#include "hmvol/special_values.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>

namespace hmvol {

SpecialValue l_numeric_plain(int k, const FieldData& field, double tol, LMode mode);

namespace {

Real eps_real() { return std::numeric_limits<Real>::epsilon(); }

Real int_pow(const Real& x, long e) { return boost::multiprecision::pow(x, static_cast<int>(e)); }

void require_tol(double tol) {
  if (!(tol > 0)) throw ContractError("special values: tol must be positive");
}

// Unsigned formula c = (-1)^{(k+1)/2} 2^{k-1} B_{k,chi} / k!, before the sign pin.
Rational l_exact_coefficient(int k, const FieldData& field) {
  Rational c = Rational(2).pow(k - 1) * gen_bernoulli(k, field) / Rational(factorial(static_cast<unsigned>(k)));
  return ((k + 1) / 2) % 2 == 0 ? c : -c;
}

ExactForm l_exact_unpinned(int k, const FieldData& field) {
  return {l_exact_coefficient(k, field), k, Rational(1, 2) - Rational(k)};
}

int pinned_l_sign() {
  static const int sign = [] {
    int agreed = 0;
    for (int k : {3, 5}) {
      for (std::int64_t d : {1, 3, 7}) {
        const FieldData f = make_field(d);
        const Real numeric = l_numeric_plain(k, f, 1e-13, LMode::Hurwitz).numeric;
        const Real formula = l_exact_unpinned(k, f).evaluate(f.conductor);
        int s = 0;
        if (abs(formula - numeric) <= 1e-10) s = 1;
        else if (abs(formula + numeric) <= 1e-10) s = -1;
        if (s == 0 || (agreed != 0 && s != agreed)) {
          throw InvariantViolation("l_exact: closed form disagrees with numeric L(" + std::to_string(k) +
                                   ") for d=" + std::to_string(d));
        }
        agreed = s;
      }
    }
    return agreed;
  }();
  return sign;
}

}  // namespace

Real to_real(const Rational& r) { return Real(r.num().get_str()) / Real(r.den().get_str()); }

Real pi_real() { return boost::math::constants::pi<Real>(); }

Real ExactForm::evaluate(std::int64_t abs_d) const {
  Real v = to_real(coeff) * int_pow(pi_real(), pi_power);
  if (!d_power.is_zero()) {
    v *= boost::multiprecision::pow(Real(abs_d), to_real(d_power));
  }
  return v;
}

std::string ExactForm::str() const {
  std::ostringstream os;
  os << coeff;
  if (pi_power != 0) os << " * pi^" << pi_power;
  if (!d_power.is_zero()) os << " * |D|^(" << d_power << ")";
  return os.str();
}

HurwitzValue hurwitz_zeta(int s, const Real& a, const Real& tol) {
  if (s < 2) throw ContractError("hurwitz_zeta: s must be >= 2");
  if (a <= 0) throw ContractError("hurwitz_zeta: a must be positive");
  constexpr int kTerms = 24;
  for (long n = 8;; n *= 2) {
    const Real x = a + n;
    Real sum = 0;
    for (long j = 0; j < n; ++j) sum += 1 / int_pow(a + j, s);
    sum += int_pow(x, 1 - s) / (s - 1) + int_pow(x, -s) / 2;
    Real rising = s;  // s (s+1) ... (s+2k-2)
    Real tail = 0;
    for (int k = 1; k <= kTerms; ++k) {
      const Real term = to_real(bernoulli(static_cast<unsigned>(2 * k)) /
                                Rational(factorial(static_cast<unsigned>(2 * k)))) *
                        rising * int_pow(x, -s - 2 * k + 1);
      if (k == kTerms) {
        tail = abs(term);
        break;
      }
      sum += term;
      rising *= Real(s + 2 * k - 1) * Real(s + 2 * k);
    }
    const Real rounding = eps_real() * Real(n + kTerms) * abs(sum);
    // Past the rounding floor more terms only add rounding error.
    if (tail + rounding <= tol || tail <= rounding || n > (1L << 24)) return {sum, tail + rounding};
  }
}

SpecialValue zeta_numeric(int s, double tol) {
  require_tol(tol);
  if (s < 2) throw ContractError("zeta_numeric: s must be >= 2");
  const HurwitzValue h = hurwitz_zeta(s, Real(1), Real(tol));
  SpecialValue v{SpecialKind::Zeta, s, 0, h.value, h.error_bound, std::nullopt};
  if (s % 2 == 0) v.exact = zeta_exact(s);
  return v;
}

ExactForm zeta_exact(int s) {
  if (s < 2 || s % 2 != 0) throw ContractError("zeta_exact: argument must be even and >= 2");
  const int k = s / 2;
  Rational c = bernoulli(static_cast<unsigned>(s)) * Rational(2).pow(s - 1) /
               Rational(factorial(static_cast<unsigned>(s)));
  if (k % 2 == 0) c = -c;
  return {c, s, Rational(0)};
}

SpecialValue l_numeric_plain(int k, const FieldData& field, double tol, LMode mode) {
  require_tol(tol);
  if (k < 2) throw ContractError("l_numeric: k must be >= 2");
  const std::int64_t f = field.conductor;
  SpecialValue v{SpecialKind::LChi, k, field.d, 0, 0, std::nullopt};

  if (mode == LMode::Hurwitz) {
    const Real scale = int_pow(Real(f), -k);
    const Real per_term = Real(tol) / (scale * Real(f));
    for (std::int64_t a = 1; a <= f; ++a) {
      const int c = field.chi(static_cast<std::uint64_t>(a));
      if (c == 0) continue;
      const HurwitzValue h = hurwitz_zeta(k, Real(a) / Real(f), per_term);
      v.numeric += c * h.value;
      v.error_bound += h.error_bound;
    }
    v.numeric *= scale;
    v.error_bound *= scale;
  } else {
    std::int64_t s = 0, lo = 0, hi = 0;
    for (std::int64_t a = 1; a <= f; ++a) {
      s += field.chi(static_cast<std::uint64_t>(a));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    const double width = static_cast<double>(hi - lo);
    const auto terms = static_cast<std::int64_t>(std::ceil(std::pow(width / tol, 1.0 / k)));
    Real sum = 0;
    for (std::int64_t m = 1; m <= terms; ++m) {
      const int c = field.chi(static_cast<std::uint64_t>(m));
      if (c != 0) sum += c / int_pow(Real(m), k);
    }
    v.numeric = sum;
    v.error_bound = Real(width) * int_pow(Real(terms + 1), -k) + eps_real() * Real(terms);
  }
  return v;
}

SpecialValue l_numeric(int k, const FieldData& field, double tol, LMode mode) {
  SpecialValue v = l_numeric_plain(k, field, tol, mode);
  if (k % 2 == 1) v.exact = l_exact(k, field);
  return v;
}

Rational gen_bernoulli(int k, const FieldData& field) {
  if (k < 1) throw ContractError("gen_bernoulli: k must be >= 1");
  const std::int64_t f = field.conductor;
  Rational sum = 0;
  for (std::int64_t a = 1; a <= f; ++a) {
    const int c = field.chi(static_cast<std::uint64_t>(a));
    if (c != 0) sum += Rational(c) * bernoulli_poly(static_cast<unsigned>(k), Rational(a, f));
  }
  return Rational(f).pow(k - 1) * sum;
}

ExactForm l_exact(int k, const FieldData& field) {
  if (k < 3 || k % 2 == 0) throw ContractError("l_exact: k must be odd and >= 3");
  ExactForm e = l_exact_unpinned(k, field);
  if (pinned_l_sign() < 0) e.coeff = -e.coeff;
  return e;
}

EulerProduct l_euler_product(int k, const FieldData& field, std::uint64_t limit) {
  if (k < 2) throw ContractError("l_euler_product: k must be >= 2");
  if (limit < 2) throw ContractError("l_euler_product: limit must be >= 2");
  Real prod = 1;
  for (std::uint64_t p : primes_up_to(limit)) {
    const int c = field.chi(p);
    if (c != 0) prod /= 1 - c * int_pow(Real(p), -k);
  }
  // |log of the tail| <= 2 sum_{m > limit} m^{-k} <= 2 limit^{1-k} / (k-1)
  const Real eta = 2 * int_pow(Real(limit), 1 - k) / (k - 1);
  return {prod, prod * (exp(eta) - 1) + eps_real() * Real(limit)};
}

}  // namespace hmvol
