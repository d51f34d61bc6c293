// Arithmetic in R = O_K / p^N O_K, held on the basis (1, eps) with
// coefficients in Z/p^N, plus small matrices over R.
#ifndef HMVOL_RESIDUE_RING_HPP
#define HMVOL_RESIDUE_RING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hmvol/quadfield.hpp"

namespace hmvol {

struct ResidueRingSpec {
  FieldData field;
  std::uint32_t p = 0;
  unsigned N = 0;
  std::uint32_t modulus = 0;  // p^N

  friend bool operator==(const ResidueRingSpec&, const ResidueRingSpec&) = default;
};

/// Largest supported p^N; keeps every intermediate product inside 64 bits.
inline constexpr std::uint32_t kMaxModulus = 1U << 16;

/// Throws ContractError when p is not prime, N < 1, or p^N > kMaxModulus.
ResidueRingSpec make_ring_spec(const FieldData& field, std::uint32_t p, unsigned N);

/// a + b*eps with a, b reduced mod p^N.
struct RingElement {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

class ResidueRing {
 public:
  explicit ResidueRing(ResidueRingSpec spec);

  const ResidueRingSpec& spec() const { return spec_; }
  std::uint32_t modulus() const { return q_; }
  std::uint32_t prime() const { return spec_.p; }
  /// Number of ring elements, p^(2N).
  std::size_t size() const { return static_cast<std::size_t>(q_) * q_; }

  RingElement element(std::size_t index) const {
    return {static_cast<std::uint32_t>(index % q_), static_cast<std::uint32_t>(index / q_)};
  }
  std::size_t index(RingElement x) const { return x.a + static_cast<std::size_t>(x.b) * q_; }

  std::uint32_t reduce(std::int64_t v) const {
    const std::int64_t q = q_;
    return static_cast<std::uint32_t>(((v % q) + q) % q);
  }
  RingElement from_int(std::int64_t v) const { return {reduce(v), 0}; }
  RingElement zero() const { return {0, 0}; }
  RingElement one() const { return {1 % q_, 0}; }
  RingElement eps() const { return {0, 1 % q_}; }

  RingElement add(RingElement x, RingElement y) const {
    return {static_cast<std::uint32_t>((x.a + static_cast<std::uint64_t>(y.a)) % q_),
            static_cast<std::uint32_t>((x.b + static_cast<std::uint64_t>(y.b)) % q_)};
  }
  RingElement neg(RingElement x) const { return {(q_ - x.a) % q_, (q_ - x.b) % q_}; }
  RingElement sub(RingElement x, RingElement y) const { return add(x, neg(y)); }

  /// Uses eps^2 = trace*eps - norm.
  RingElement mul(RingElement x, RingElement y) const {
    const std::uint64_t bd = static_cast<std::uint64_t>(x.b) * y.b % q_;
    const std::uint64_t a = (static_cast<std::uint64_t>(x.a) * y.a + neg_norm_ * bd) % q_;
    const std::uint64_t b =
        (static_cast<std::uint64_t>(x.a) * y.b + static_cast<std::uint64_t>(x.b) * y.a + trace_ * bd) % q_;
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  }
  RingElement scale(RingElement x, std::int64_t c) const {
    const std::uint64_t cc = reduce(c);
    return {static_cast<std::uint32_t>(x.a * cc % q_), static_cast<std::uint32_t>(x.b * cc % q_)};
  }

  /// eps -> trace - eps.
  RingElement conj(RingElement x) const {
    return {static_cast<std::uint32_t>((x.a + static_cast<std::uint64_t>(x.b) * trace_) % q_), (q_ - x.b) % q_};
  }

  /// x * conj(x), which lies in Z/p^N.
  std::uint32_t norm(RingElement x) const {
    const std::uint64_t a = x.a, b = x.b;
    return static_cast<std::uint32_t>((a * a + (a * b % q_) * trace_ + (b * b % q_) * norm_) % q_);
  }

  bool is_unit(RingElement x) const { return norm(x) % spec_.p != 0; }
  bool is_unit_scalar(std::uint32_t v) const { return v % spec_.p != 0; }
  /// Throws ContractError for non-units.
  RingElement inverse(RingElement x) const;

  /// Is x = delta (mod p^level), delta in {0, 1}? Used to select reduction kernels.
  bool congruent(RingElement x, std::uint32_t delta, unsigned level) const {
    const std::uint32_t m = pow_p(level);
    return x.a % m == delta % m && x.b % m == 0;
  }
  std::uint32_t pow_p(unsigned e) const;

 private:
  ResidueRingSpec spec_;
  std::uint32_t q_;
  std::uint64_t trace_;
  std::uint64_t norm_;
  std::uint64_t neg_norm_;
};

/// Dense row-major matrix over R.
struct RingMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RingElement> data;

  RingMatrix() = default;
  RingMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  RingElement& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const RingElement& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool is_zero() const;
  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;
};

RingMatrix identity_matrix(const ResidueRing& ring, std::size_t n);
RingMatrix diagonal_matrix(const ResidueRing& ring, std::span<const RingElement> diag);
RingMatrix multiply(const ResidueRing& ring, const RingMatrix& x, const RingMatrix& y);
RingMatrix conj_transpose(const ResidueRing& ring, const RingMatrix& x);

/// A * diag(form) * conj(A)^T - diag(form); zero iff A preserves the form.
RingMatrix hermitian_defect(const ResidueRing& ring, const RingMatrix& a, std::span<const std::int64_t> form);

/// Division-free cofactor expansion of a k x k row-major block, k <= 4.
RingElement det(const ResidueRing& ring, std::span<const RingElement> entries, std::size_t k);
RingElement det(const ResidueRing& ring, const RingMatrix& a);

}  // namespace hmvol

#endif  // HMVOL_RESIDUE_RING_HPP
