// Closed-form local densities tau_p for the lattices L and M, the [U:SU]
// indices, and tau_infinity assembled from 1/prod_p tau_p.
#ifndef HMVOL_LOCAL_DENSITY_HPP
#define HMVOL_LOCAL_DENSITY_HPP

#include <cstdint>

#include "hmvol/group_enum.hpp"
#include "hmvol/volume_expression.hpp"

namespace hmvol {

struct LocalDensity {
  std::uint64_t p = 0;
  Lattice lattice = Lattice::L;
  Rational value;
};

/// Legendre symbol (a/p) for an odd prime p.
int legendre(std::int64_t a, std::uint64_t p);

/// [U(O/p^k) : SU(O/p^k)] as given by the index formulas. At ramified 2 the
/// formula holds for L only from k = 2 on, and for M only from k = 3 on; below
/// that the enumerated index is smaller.
BigInt index_u_su(const FieldData& field, std::uint64_t p, unsigned k, Lattice lattice);

LocalDensity tau_p(Lattice lattice, int n, const FieldData& field, std::uint64_t p);

/// prod_{i=2}^{n+1} (1 - chi_i(p) p^-i) with chi_i = 1 for even i and chi_D(p)
/// for odd i: the Euler factor that the zeta/L product supplies at p.
Rational generic_euler_factor(int n, const FieldData& field, std::uint64_t p);

/// coeff * prod_{even i} zeta(i) * prod_{odd i} L(i), i in [2, n+1].
VolumeExpression tau_infinity(Lattice lattice, int n, const FieldData& field);

}  // namespace hmvol

#endif  // HMVOL_LOCAL_DENSITY_HPP
