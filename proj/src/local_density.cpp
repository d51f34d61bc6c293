#include "hmvol/local_density.hpp"

namespace hmvol {

namespace {

void require_n(int n) {
  if (n < 1) throw ContractError("local density: n must be >= 1");
}

Rational inv_pow(std::uint64_t p, long e) { return Rational(static_cast<unsigned long>(p)).pow(-e); }

// prod_{i=1}^{m} (1 - p^{-2i})
Rational even_product(std::uint64_t p, int m) {
  Rational out = 1;
  for (int i = 1; i <= m; ++i) out *= Rational(1) - inv_pow(p, 2L * i);
  return out;
}

// Odd p | D: the orthogonal-group sign for the last Jordan block.
Rational ramified_odd(int n, std::uint64_t p, std::int64_t disc_unit) {
  if (n % 2 == 0) return even_product(p, n / 2);
  const std::int64_t sign = ((n + 3) / 2) % 2 == 0 ? 1 : -1;
  const int eps = legendre(sign * disc_unit, p);
  return (Rational(1) - Rational(eps) * inv_pow(p, (n + 1) / 2)) * even_product(p, (n - 1) / 2);
}

}  // namespace

int legendre(std::int64_t a, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  const std::uint64_t r = static_cast<std::uint64_t>(((a % pp) + pp) % pp);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

BigInt index_u_su(const FieldData& field, std::uint64_t p, unsigned k, Lattice lattice) {
  if (k < 1) throw ContractError("index_u_su: k must be >= 1");
  if (!is_prime(p)) throw ContractError("index_u_su: p must be prime");
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
  const int chi = field.chi(p);
  if (lattice == Lattice::M && p == 2) {
    if (chi == 0) return pk * 4;
    return pk * (2 - chi);
  }
  if (chi == 0) return pk * 2;
  return pk / static_cast<unsigned long>(p) * static_cast<long>(static_cast<std::int64_t>(p) - chi);
}

Rational generic_euler_factor(int n, const FieldData& field, std::uint64_t p) {
  require_n(n);
  const int chi = field.chi(p);
  Rational out = 1;
  for (int i = 2; i <= n + 1; ++i) {
    const int c = i % 2 == 0 ? 1 : chi;
    out *= Rational(1) - Rational(c) * inv_pow(p, i);
  }
  return out;
}

LocalDensity tau_p(Lattice lattice, int n, const FieldData& field, std::uint64_t p) {
  require_n(n);
  if (!is_prime(p)) throw ContractError("tau_p: " + std::to_string(p) + " is not prime");
  LocalDensity out{p, lattice, {}};
  const int chi = field.chi(p);

  if (p == 2 && lattice == Lattice::M && chi != 0) {
    Rational v = 1;
    for (int i = 2; i <= n; ++i) {
      const int c = i % 2 == 0 ? 1 : chi;
      v *= Rational(1) - Rational(c) * inv_pow(2, i);
    }
    out.value = v * (Rational(1) - Rational(chi, 2));
    return out;
  }
  if (chi != 0) {
    Rational v = 1;
    for (int i = 2; i <= n + 1; ++i) v *= Rational(1) - Rational(i % 2 == 0 ? 1 : chi) * inv_pow(p, i);
    out.value = v;
    return out;
  }
  if (p == 2) {
    const int m = lattice == Lattice::M && n % 2 == 0 ? (n - 2) / 2 : n / 2;
    out.value = inv_pow(2, n) * even_product(2, m);
    return out;
  }
  out.value = ramified_odd(n, p, lattice == Lattice::L ? 1 : 2);
  return out;
}

VolumeExpression tau_infinity(Lattice lattice, int n, const FieldData& field) {
  require_n(n);
  VolumeExpression v;
  v.d = field.d;
  for (int i = 2; i <= n + 1; ++i) (i % 2 == 0 ? v.zeta_args : v.l_args).push_back(i);

  // Primes whose local factor differs from the generic Euler factor: those
  // dividing D, and 2 (which is special for M even when unramified).
  std::vector<std::uint64_t> special = field.ramified_primes();
  if (!field.two_ramified()) special.insert(special.begin(), 2);
  for (std::uint64_t p : special) {
    v.coeff *= generic_euler_factor(n, field, p) / tau_p(lattice, n, field, p).value;
  }
  return v;
}

}  // namespace hmvol
