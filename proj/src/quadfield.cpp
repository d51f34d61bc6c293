#include "hmvol/quadfield.hpp"

namespace hmvol {

std::vector<std::uint64_t> FieldData::ramified_primes() const {
  return prime_divisors(static_cast<std::uint64_t>(conductor));
}

std::vector<std::uint64_t> FieldData::odd_primes_of_d() const {
  return prime_divisors(static_cast<std::uint64_t>(d));
}

FieldData make_field(std::int64_t d) {
  if (d < 1) throw ContractError("make_field: d must be positive, got " + std::to_string(d));
  if (d % 2 == 0) throw ContractError("make_field: d must be odd, got " + std::to_string(d));
  if (!is_squarefree(static_cast<std::uint64_t>(d))) {
    throw ContractError("make_field: d must be squarefree, got " + std::to_string(d));
  }
  FieldData f;
  f.d = d;
  if (d % 4 == 3) {
    f.D = -d;
    f.eps_kind = EpsKind::HalfIntegral;
    f.trace_eps = 1;
    f.norm_eps = (1 + d) / 4;
  } else {
    f.D = -4 * d;
    f.eps_kind = EpsKind::Integral;
    f.trace_eps = 0;
    f.norm_eps = d;
  }
  f.conductor = -f.D;
  return f;
}

PrimeKind classify_prime(const FieldData& field, std::uint64_t p) {
  if (!is_prime(p)) throw ContractError("classify_prime: " + std::to_string(p) + " is not prime");
  switch (field.chi(p)) {
    case 0:
      return PrimeKind::Ramified;
    case 1:
      return PrimeKind::Split;
    default:
      return PrimeKind::Inert;
  }
}

std::string to_string(PrimeKind kind) {
  switch (kind) {
    case PrimeKind::Split:
      return "split";
    case PrimeKind::Inert:
      return "inert";
    case PrimeKind::Ramified:
      return "ramified";
  }
  return "?";
}

}  // namespace hmvol
