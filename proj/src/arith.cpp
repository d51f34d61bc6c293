#include "hmvol/arith.hpp"

#include <cmath>
#include <mutex>
#include <ostream>

namespace hmvol {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ContractError("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw ContractError("Rational::parse: empty component");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ContractError("Rational::parse: missing digits");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw ContractError("Rational::parse: bad digit");
    }
    std::string owned(s[0] == '+' ? s.substr(1) : s);
    return BigInt(owned, 10);
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw ContractError("Rational::inverse of zero");
  return Rational(mpq_class(v_.get_den(), v_.get_num()));
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

std::string Rational::str() const { return v_.get_str(10); }

long double Rational::to_long_double() const {
  // mpq_get_d would lose range for very large numerators; scale by bit length.
  const long nb = static_cast<long>(mpz_sizeinbase(v_.get_num_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(v_.get_den_mpz_t(), 2));
  if (nb < 1000 && db < 1000) return static_cast<long double>(v_.get_d());
  long ne = 0, de = 0;
  const double nm = mpz_get_d_2exp(&ne, v_.get_num_mpz_t());
  const double dm = mpz_get_d_2exp(&de, v_.get_den_mpz_t());
  return std::ldexp(static_cast<long double>(nm) / dm, static_cast<int>(ne - de));
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ContractError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}
Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

bool rational_sqrt(const Rational& r, Rational& out) {
  if (r.sign() < 0) return false;
  const BigInt n = r.num(), d = r.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return false;
  }
  BigInt sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = Rational(sn, sd);
  return true;
}

Factorization factor(std::uint64_t n) {
  if (n == 0) throw ContractError("factor: n must be >= 1");
  Factorization out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = factor(n);
  return f.size() == 1 && f[0].exponent == 1;
}

bool is_squarefree(std::uint64_t n) {
  for (const auto& pp : factor(n)) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factor(n)) out.push_back(pp.prime);
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  unsigned __int128 result = 1, b = base % mod;
  while (exp > 0) {
    if (exp & 1U) result = (result * b) % mod;
    b = (b * b) % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw ContractError("invmod: not invertible");
  std::int64_t res = old_s % static_cast<std::int64_t>(m);
  if (res < 0) res += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(res);
}

bool is_negative_fundamental_discriminant(std::int64_t D) {
  if (D >= 0) return false;
  const std::uint64_t a = static_cast<std::uint64_t>(-D);
  // D = 1 mod 4 means -D = 3 mod 4.
  if (a % 4 == 3) return is_squarefree(a);
  if (a % 4 != 0) return false;
  const std::uint64_t m = a / 4;  // D/4 = -m must be 2 or 3 mod 4
  const std::int64_t r = ((-static_cast<std::int64_t>(m)) % 4 + 4) % 4;
  return (r == 2 || r == 3) && is_squarefree(m);
}

namespace {

int kronecker_prime(std::int64_t D, std::uint64_t p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    const std::int64_t r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::int64_t pm = static_cast<std::int64_t>(p);
  const std::uint64_t a = static_cast<std::uint64_t>(((D % pm) + pm) % pm);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

int kronecker(std::int64_t D, std::uint64_t m) {
  if (!is_negative_fundamental_discriminant(D)) {
    throw ContractError("kronecker: D=" + std::to_string(D) + " is not a negative fundamental discriminant");
  }
  if (m == 0) throw ContractError("kronecker: m must be >= 1");
  int result = 1;
  for (const auto& pp : factor(m)) {
    const int s = kronecker_prime(D, pp.prime);
    if (s == 0) return 0;
    if (s < 0 && (pp.exponent % 2 == 1)) result = -result;
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Rational bernoulli(unsigned k) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  while (table.size() <= k) {
    const unsigned m = static_cast<unsigned>(table.size());
    Rational acc;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table[j];
    table.push_back(-acc / Rational(BigInt(m + 1)));
  }
  return table[k];
}

Rational bernoulli_poly(unsigned k, const Rational& x) {
  Rational acc;
  Rational xp(1);  // x^(k-j), built from j = k downward
  for (unsigned j = k + 1; j-- > 0;) {
    acc += Rational(binomial(k, j)) * bernoulli(j) * xp;
    xp *= x;
  }
  return acc;
}

}  // namespace hmvol
