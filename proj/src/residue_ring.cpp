#include "hmvol/residue_ring.hpp"

#include <array>

namespace hmvol {

ResidueRingSpec make_ring_spec(const FieldData& field, std::uint32_t p, unsigned N) {
  if (!is_prime(p)) throw ContractError("residue ring: p=" + std::to_string(p) + " is not prime");
  if (N < 1) throw ContractError("residue ring: level N must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < N; ++i) {
    q *= p;
    if (q > kMaxModulus) throw ContractError("residue ring: p^N exceeds supported modulus");
  }
  return {field, p, N, static_cast<std::uint32_t>(q)};
}

ResidueRing::ResidueRing(ResidueRingSpec spec) : spec_(std::move(spec)), q_(spec_.modulus) {
  if (q_ < 2) throw ContractError("residue ring: modulus must be >= 2");
  trace_ = reduce(spec_.field.trace_eps);
  norm_ = reduce(spec_.field.norm_eps);
  neg_norm_ = reduce(-spec_.field.norm_eps);
}

std::uint32_t ResidueRing::pow_p(unsigned e) const {
  std::uint32_t m = 1;
  for (unsigned i = 0; i < e; ++i) m *= spec_.p;
  return m;
}

RingElement ResidueRing::inverse(RingElement x) const {
  const std::uint32_t n = norm(x);
  if (!is_unit_scalar(n)) throw ContractError("residue ring: element is not a unit");
  const auto ninv = static_cast<std::int64_t>(invmod(n, q_));
  return scale(conj(x), ninv);
}

bool RingMatrix::is_zero() const {
  for (const auto& e : data) {
    if (e.a != 0 || e.b != 0) return false;
  }
  return true;
}

RingMatrix identity_matrix(const ResidueRing& ring, std::size_t n) {
  RingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

RingMatrix diagonal_matrix(const ResidueRing& ring, std::span<const RingElement> diag) {
  RingMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
  (void)ring;
  return m;
}

RingMatrix multiply(const ResidueRing& ring, const RingMatrix& x, const RingMatrix& y) {
  if (x.cols != y.rows) throw ContractError("multiply: dimension mismatch");
  RingMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < y.cols; ++j) {
      RingElement acc = ring.zero();
      for (std::size_t k = 0; k < x.cols; ++k) acc = ring.add(acc, ring.mul(x.at(i, k), y.at(k, j)));
      out.at(i, j) = acc;
    }
  }
  return out;
}

RingMatrix conj_transpose(const ResidueRing& ring, const RingMatrix& x) {
  RingMatrix out(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) out.at(j, i) = ring.conj(x.at(i, j));
  }
  return out;
}

RingMatrix hermitian_defect(const ResidueRing& ring, const RingMatrix& a, std::span<const std::int64_t> form) {
  if (a.rows != a.cols || a.rows != form.size()) {
    throw ContractError("hermitian_defect: matrix must be square of the form's size");
  }
  const std::size_t n = a.rows;
  RingMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingElement acc = ring.zero();
      for (std::size_t k = 0; k < n; ++k) {
        acc = ring.add(acc, ring.scale(ring.mul(a.at(i, k), ring.conj(a.at(j, k))), form[k]));
      }
      if (i == j) acc = ring.sub(acc, ring.from_int(form[i]));
      out.at(i, j) = acc;
    }
  }
  return out;
}

namespace {

// Laplace expansion along the first of the remaining rows; cols selected by mask.
RingElement det_rec(const ResidueRing& ring, std::span<const RingElement> m, std::size_t k, std::size_t row,
                    unsigned col_mask) {
  if (row == k) return ring.one();
  RingElement acc = ring.zero();
  bool negate = false;
  for (std::size_t c = 0; c < k; ++c) {
    if ((col_mask & (1U << c)) == 0) continue;
    const RingElement entry = m[row * k + c];
    if (entry.a != 0 || entry.b != 0) {
      const RingElement minor = det_rec(ring, m, k, row + 1, col_mask & ~(1U << c));
      const RingElement term = ring.mul(entry, minor);
      acc = negate ? ring.sub(acc, term) : ring.add(acc, term);
    }
    negate = !negate;
  }
  return acc;
}

}  // namespace

RingElement det(const ResidueRing& ring, std::span<const RingElement> entries, std::size_t k) {
  if (k > 4) throw ContractError("det: only sizes up to 4 are supported");
  if (entries.size() != k * k) throw ContractError("det: entry count mismatch");
  if (k == 0) return ring.one();
  if (k == 2) return ring.sub(ring.mul(entries[0], entries[3]), ring.mul(entries[1], entries[2]));
  return det_rec(ring, entries, k, 0, (1U << k) - 1U);
}

RingElement det(const ResidueRing& ring, const RingMatrix& a) {
  if (a.rows != a.cols) throw ContractError("det: matrix must be square");
  return det(ring, std::span<const RingElement>(a.data), a.rows);
}

}  // namespace hmvol
