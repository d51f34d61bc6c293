// Exact arithmetic substrate: big integers, canonical rationals, trial-division
// factorization, the Kronecker symbol and Bernoulli numbers/polynomials.
#ifndef HMVOL_ARITH_HPP
#define HMVOL_ARITH_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hmvol {

using BigInt = mpz_class;

/// Raised when a caller violates a documented precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check of a formula chain fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator, so equality is plain canonical-form equality.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(unsigned long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

  /// Parses "p/q" or "p". Throws ContractError on malformed input or q = 0.
  static Rational parse(std::string_view text);

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational abs() const;
  Rational inverse() const;
  /// Integer power; negative exponents require a nonzero value.
  Rational pow(long e) const;

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  long double to_long_double() const;
  const mpq_class& raw() const { return v_; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact square root of a nonnegative rational if it is a perfect square.
bool rational_sqrt(const Rational& r, Rational& out);

struct PrimePower {
  std::uint64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes strictly increasing, exponents >= 1; product reconstructs the input.
using Factorization = std::vector<PrimePower>;

/// Trial-division factorization; intended for desk-scale inputs.
Factorization factor(std::uint64_t n);
bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// All primes <= limit (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
/// Inverse of a modulo m; throws ContractError when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// True for negative fundamental discriminants: D = 1 mod 4 squarefree, or
/// D = 4m with m = 2, 3 mod 4 squarefree.
bool is_negative_fundamental_discriminant(std::int64_t D);

/// Kronecker symbol (D/m) for a negative fundamental discriminant D and m >= 1.
int kronecker(std::int64_t D, std::uint64_t m);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// Bernoulli number B_k with B_1 = -1/2. Memoized; safe for concurrent callers.
Rational bernoulli(unsigned k);

/// B_k(x) = sum_j C(k, j) B_j x^(k-j).
Rational bernoulli_poly(unsigned k, const Rational& x);

}  // namespace hmvol

#endif  // HMVOL_ARITH_HPP
