#include "hmvol/volume.hpp"

#include "hmvol/lie_form.hpp"
#include "hmvol/local_density.hpp"

namespace hmvol {

namespace {

void require_n(int n) {
  if (n < 1) throw ContractError("volume: n must be >= 1");
}

// prod_{p | d} (1 + (a/p) p^{-(n+1)/2}), a = (-1)^{(n+3)/2} * unit
Rational odd_prime_factor(int n, const FieldData& field, std::int64_t unit) {
  const std::int64_t a = (((n + 3) / 2) % 2 == 0 ? 1 : -1) * unit;
  Rational out = 1;
  for (std::uint64_t p : field.odd_primes_of_d()) {
    out *= Rational(1) + Rational(legendre(a, p)) * Rational(static_cast<unsigned long>(p)).pow(-(n + 1) / 2);
  }
  return out;
}

// 2^n (1 - chi(2)^{n+1} 2^{-(n+1)}) / (1 - chi(2)/2)
Rational unramified_two_factor(int n, const FieldData& field) {
  const int chi = field.chi(2);
  const Rational chi_pow = (n + 1) % 2 == 0 ? Rational(1) : Rational(chi);
  return Rational(2).pow(n) * (Rational(1) - chi_pow * Rational(2).pow(-(n + 1))) /
         (Rational(1) - Rational(chi, 2));
}

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Match:
      return "Match";
    case Verdict::TableAmbiguous:
      return "TableAmbiguous";
    case Verdict::Mismatch:
      return "Mismatch";
  }
  return "?";
}

TableRow hm_table_row(Lattice lattice, int n, const FieldData& field) {
  require_n(n);
  TableRow out;
  VolumeExpression& v = out.expr;
  v.d = field.d;
  v.d_power = Rational(static_cast<long>(n) * n + 3L * n, 4);
  for (int j = 1; j <= n; ++j) {
    v *= VolumeExpression::scalar(Rational(factorial(static_cast<unsigned>(j))));
    v *= VolumeExpression::two_pi_power(-(j + 1));
  }
  for (int i = 2; i <= n + 1; ++i) (i % 2 == 0 ? v.zeta_args : v.l_args).push_back(i);

  const bool odd = n % 2 == 1;
  const bool minus4d = field.two_ramified();
  out.row = std::string(odd ? "odd" : "even") + (minus4d ? "/-4d" : "/-d");
  const Rational two_tail = Rational(1) - Rational(2).pow(-(n + 1));

  Rational factor = 1;
  if (lattice == Lattice::L) {
    if (odd) {
      factor = odd_prime_factor(n, field, 1);
      if (minus4d) factor *= two_tail;
      out.ambiguous = minus4d && n >= 3;
    }
  } else {
    if (!odd) {
      factor = minus4d ? Rational(2).pow(n) - Rational(1) : unramified_two_factor(n, field);
    } else {
      factor = odd_prime_factor(n, field, 2);
      factor *= minus4d ? two_tail * Rational(2).pow(n) : unramified_two_factor(n, field);
      out.ambiguous = n >= 3;
    }
  }
  v.coeff *= factor;
  return out;
}

VolumeExpression hm_table(Lattice lattice, int n, const FieldData& field) {
  return hm_table_row(lattice, n, field).expr;
}

VolumeExpression hm_assembled(Lattice lattice, int n, const FieldData& field) {
  require_n(n);
  const long shape = static_cast<long>(n) * n + 3L * n;  // n^2 + 3n, always even
  const BigInt det = abs_big(gram_det(build_basis(lattice, n, field)));
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(field.conductor), static_cast<unsigned long>(shape / 2));

  // sqrt|det B| = |D|^{shape/4} sqrt(det / |D|^{shape/2})
  VolumeExpression v = tau_infinity(lattice, n, field);
  v.d_power += Rational(shape, 4);
  v.sqrt_coeff_sq *= Rational(det, scale);
  v.coeff *= Rational(factorial(static_cast<unsigned>(n)));
  v /= VolumeExpression::two_pi_power(n);
  v /= vol_max_compact(n);
  return v;
}

Rational hm_ratio(int n, const FieldData& field) {
  require_n(n);
  Rational r = tau_p(Lattice::L, n, field, 2).value / tau_p(Lattice::M, n, field, 2).value;
  for (std::uint64_t p : field.odd_primes_of_d()) {
    r *= tau_p(Lattice::L, n, field, p).value / tau_p(Lattice::M, n, field, p).value;
  }
  const BigInt det_l = abs_big(gram_det(build_basis(Lattice::L, n, field)));
  const BigInt det_m = abs_big(gram_det(build_basis(Lattice::M, n, field)));
  Rational root;
  if (!rational_sqrt(Rational(det_m, det_l), root)) {
    throw InvariantViolation("hm_ratio: determinant ratio is not a square");
  }
  return r * root;
}

Rational rationalize(const VolumeExpression& v) {
  Rational c = v.coeff;
  long pi = v.pi_power;
  Rational e = v.d_power;
  for (int s : v.zeta_args) {
    if (s % 2 != 0) throw ContractError("rationalize: zeta(" + std::to_string(s) + ") has no closed form");
    const ExactForm z = zeta_exact(s);
    c *= z.coeff;
    pi += z.pi_power;
  }
  if (!v.l_args.empty() && v.d == 0) throw ContractError("rationalize: L-values need a field");
  for (int k : v.l_args) {
    if (k % 2 == 0) throw ContractError("rationalize: L(" + std::to_string(k) + ") has no closed form");
    const ExactForm l = l_exact(k, make_field(v.d));
    c *= l.coeff;
    pi += l.pi_power;
    e += l.d_power;
  }
  if (pi != 0) throw InvariantViolation("rationalize: residual pi exponent " + std::to_string(pi));
  if (!e.is_integer()) throw InvariantViolation("rationalize: residual |D| exponent " + e.str());
  Rational root;
  if (!rational_sqrt(v.sqrt_coeff_sq, root)) {
    throw InvariantViolation("rationalize: sqrt(" + v.sqrt_coeff_sq.str() + ") is irrational");
  }
  return c * root * Rational(abs_discriminant(v.d)).pow(e.num().get_si());
}

NumericResult evaluate_numeric(const VolumeExpression& v, double tol) {
  if (!(tol > 0)) throw ContractError("evaluate_numeric: tol must be positive");
  if (!v.l_args.empty() && v.d == 0) throw ContractError("evaluate_numeric: L-values need a field");
  const std::int64_t abs_d = abs_discriminant(v.d);
  Real lead = to_real(v.coeff) * sqrt(to_real(v.sqrt_coeff_sq)) *
              boost::multiprecision::pow(pi_real(), static_cast<int>(v.pi_power));
  if (!v.d_power.is_zero()) lead *= boost::multiprecision::pow(Real(abs_d), to_real(v.d_power));

  double inner = tol;
  for (int attempt = 0;; ++attempt) {
    Real mid = 1, hi = 1;
    for (int s : v.zeta_args) {
      const SpecialValue z = zeta_numeric(s, inner);
      mid *= z.numeric;
      hi *= z.numeric + z.error_bound;
    }
    if (!v.l_args.empty()) {
      const FieldData f = make_field(v.d);
      for (int k : v.l_args) {
        const SpecialValue l = l_numeric(k, f, inner);
        mid *= l.numeric;
        hi *= abs(l.numeric) + l.error_bound;
      }
    }
    const Real value = lead * mid;
    const Real bound = abs(lead) * (hi - abs(mid)) + std::numeric_limits<Real>::epsilon() * abs(value) * 16;
    if (bound <= tol || attempt == 6) return {value, bound};
    inner /= std::max(10.0, static_cast<double>(bound / tol) * 10);
  }
}

std::vector<DiscrepancyReport> discrepancy_report(int n_max, const std::vector<std::int64_t>& d_list) {
  if (n_max < 1 || n_max > 8) throw ContractError("discrepancy_report: n_max must be in [1, 8]");
  std::vector<FieldData> fields;
  for (std::int64_t d : d_list) fields.push_back(make_field(d));
  std::vector<DiscrepancyReport> out;
  for (Lattice lattice : {Lattice::L, Lattice::M}) {
    for (int n = 1; n <= n_max; ++n) {
      for (const FieldData& f : fields) {
        DiscrepancyReport r;
        r.lattice = lattice;
        r.n = n;
        r.d = f.d;
        const TableRow row = hm_table_row(lattice, n, f);
        r.table_value = rationalize(row.expr);
        r.assembled_value = rationalize(hm_assembled(lattice, n, f));
        const bool equal = *r.table_value == r.assembled_value;
        if (row.ambiguous) {
          r.verdict = Verdict::TableAmbiguous;
          r.expansion_agrees = equal;
        } else {
          r.verdict = equal ? Verdict::Match : Verdict::Mismatch;
        }
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

}  // namespace hmvol
