// The imaginary quadratic field Q(sqrt(-d)) for odd squarefree d.
#ifndef HMVOL_QUADFIELD_HPP
#define HMVOL_QUADFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hmvol/arith.hpp"

namespace hmvol {

/// Generator of the ring of integers over Z: O_K = Z + Z*eps.
enum class EpsKind {
  HalfIntegral,  // eps = (1 + sqrt(-d))/2, d = 3 mod 4
  Integral,      // eps = sqrt(-d),         d = 1 mod 4
};

enum class PrimeKind { Split, Inert, Ramified };

struct FieldData {
  std::int64_t d = 0;
  std::int64_t D = 0;          // fundamental discriminant, negative
  std::int64_t conductor = 0;  // |D|
  EpsKind eps_kind = EpsKind::HalfIntegral;
  std::int64_t trace_eps = 0;  // eps + conj(eps)
  std::int64_t norm_eps = 0;   // eps * conj(eps)

  /// chi_D(m), the Kronecker symbol (D/m).
  int chi(std::uint64_t m) const { return kronecker(D, m); }
  bool two_ramified() const { return D % 2 == 0; }
  /// Primes dividing |D|, increasing.
  std::vector<std::uint64_t> ramified_primes() const;
  /// Odd primes dividing d, increasing (empty for d = 1).
  std::vector<std::uint64_t> odd_primes_of_d() const;

  friend bool operator==(const FieldData&, const FieldData&) = default;
};

/// Throws ContractError for d < 1, even d, or non-squarefree d.
FieldData make_field(std::int64_t d);

/// Throws ContractError when p is not prime.
PrimeKind classify_prime(const FieldData& field, std::uint64_t p);

std::string to_string(PrimeKind kind);

}  // namespace hmvol

#endif  // HMVOL_QUADFIELD_HPP
