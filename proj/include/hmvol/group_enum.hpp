// Brute-force oracle: orders of U(form, O/p^N) and SU(form, O/p^N) by
// row-by-row backtracking, reduction-kernel counts, and the local densities
// derived from those counts.
#ifndef HMVOL_GROUP_ENUM_HPP
#define HMVOL_GROUP_ENUM_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmvol/residue_ring.hpp"

namespace hmvol {

/// L = diag(1,...,1,-1), M = diag(1,...,1,-2), both of size n+1.
enum class Lattice { L, M };
enum class GroupKind { U, SU };
enum class EnumMode { Backtrack, Cartesian };
/// Linearized reduction kernels: over O/2O for L, over O/4O for M.
enum class KernelLevel { ModTwo, ModFour };

std::string to_string(Lattice lattice);
std::string to_string(GroupKind group);
std::vector<std::int64_t> lattice_form(Lattice lattice, int n);

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;
/// HMVOL_BUDGET when set to a positive integer, otherwise kDefaultBudget.
std::uint64_t budget_from_env();

/// Enumeration refused because the node budget ran out. Distinct from a zero count.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t budget);
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

struct EnumOptions {
  std::uint64_t budget = kDefaultBudget;  // visited partial assignments
  unsigned threads = 0;                   // 0 selects hardware concurrency
  EnumMode mode = EnumMode::Backtrack;
  /// When set, only matrices congruent to the identity mod p^identity_level
  /// are counted (the kernel of reduction to that level).
  std::optional<unsigned> identity_level;
};

struct GroupCounts {
  BigInt unitary;
  BigInt special;
};

struct CountReport {
  ResidueRingSpec spec;
  Lattice lattice = Lattice::L;
  int n = 0;
  GroupKind group = GroupKind::SU;
  BigInt count;
  std::chrono::duration<double> elapsed{};
  std::uint64_t nodes = 0;
  EnumMode mode = EnumMode::Backtrack;
  std::optional<unsigned> identity_level;
};

/// Counts A over O/p^N with A*form*conj(A)^T = form (and det A = 1 for SU).
/// Requires 1 <= n <= 2. Throws BudgetExceeded when the node budget runs out.
CountReport count_group(Lattice lattice, int n, const ResidueRingSpec& spec, GroupKind group,
                        const EnumOptions& opts = {});

/// Same enumeration for an arbitrary diagonal form of size 2 or 3.
GroupCounts count_form(const std::vector<std::int64_t>& form, const ResidueRingSpec& spec,
                       const EnumOptions& opts = {}, std::uint64_t* nodes_out = nullptr);

/// Both orders from a single enumeration.
GroupCounts count_unitary_and_special(Lattice lattice, int n, const ResidueRingSpec& spec,
                                      const EnumOptions& opts = {}, std::uint64_t* nodes_out = nullptr);

/// Solutions B of {B*form + form*conj(B)^T = 0, Tr B = 0} over O/2O (ModTwo)
/// or O/4O (ModFour). The system splits into diagonal entries, transposed
/// pairs and one trace relation; each block is enumerated directly.
BigInt count_kernel(Lattice lattice, int n, KernelLevel level, const FieldData& field);
/// Same, over the ring of Q(i), where 2 ramifies (the count is the same for every d = 1 mod 4).
BigInt count_kernel(Lattice lattice, int n, KernelLevel level);

struct OracleLevels {
  unsigned count_level;  // N: level at which SU is enumerated
  unsigned image_level;  // m: level of the image, m <= N
};
/// N = m = 1 for odd p; N = 3, m = 2 for p = 2.
OracleLevels default_oracle_levels(std::uint32_t p);

struct OracleTauReport {
  Rational value;
  BigInt group_count;   // #SU(O/p^N)
  BigInt kernel_count;  // #ker(SU(O/p^N) -> SU(O/p^m))
  OracleLevels levels{};
  std::uint64_t nodes = 0;
};

/// tau_p = #SU(O/p^N) / (#ker * p^(m*((n+1)^2-1))).
OracleTauReport oracle_tau_p_report(Lattice lattice, int n, const FieldData& field, std::uint32_t p,
                                    const EnumOptions& opts = {}, std::optional<OracleLevels> levels = {});
Rational oracle_tau_p(Lattice lattice, int n, const FieldData& field, std::uint32_t p,
                      const EnumOptions& opts = {});

struct StabilizationReport {
  BigInt lower;  // #U(O/p^N)
  BigInt upper;  // #U(O/p^(N+1))
  BigInt factor; // p^((n+1)^2)
  bool stable = false;
};

/// Requires N >= 1.
StabilizationReport stabilization_report(Lattice lattice, int n, const FieldData& field, std::uint32_t p,
                                         unsigned N, const EnumOptions& opts = {});
bool stabilization_check(Lattice lattice, int n, const FieldData& field, std::uint32_t p, unsigned N,
                         const EnumOptions& opts = {});

}  // namespace hmvol

#endif  // HMVOL_GROUP_ENUM_HPP
