#include <doctest.h>

#include "hmvol/group_enum.hpp"

using namespace hmvol;

namespace {

EnumOptions single_thread() {
  EnumOptions o;
  o.threads = 1;
  return o;
}

BigInt su(Lattice l, int n, std::int64_t d, std::uint32_t p, unsigned N, const EnumOptions& o = single_thread()) {
  return count_group(l, n, make_ring_spec(make_field(d), p, N), GroupKind::SU, o).count;
}

// Direct enumeration of all B with B form + form conj(B)^T = 0 and Tr B = 0.
std::uint64_t kernel_by_brute_force(Lattice lattice, int n, unsigned N, std::int64_t d) {
  const ResidueRing r(make_ring_spec(make_field(d), 2, N));
  const auto form = lattice_form(lattice, n);
  const std::size_t k = form.size();
  std::vector<std::size_t> idx(k * k, 0);
  std::uint64_t count = 0;
  while (true) {
    RingElement tr = r.zero();
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      tr = r.add(tr, r.element(idx[i * k + i]));
      for (std::size_t j = 0; j < k && ok; ++j) {
        const RingElement v = r.add(r.scale(r.element(idx[i * k + j]), form[j]),
                                    r.scale(r.conj(r.element(idx[j * k + i])), form[i]));
        ok = v == r.zero();
      }
    }
    if (ok && tr == r.zero()) ++count;
    std::size_t e = 0;
    for (; e < k * k; ++e) {
      if (++idx[e] < r.size()) break;
      idx[e] = 0;
    }
    if (e == k * k) return count;
  }
}

}  // namespace

TEST_CASE("named SU counts") {
  CHECK(su(Lattice::L, 1, 3, 5, 1) == 120);
  CHECK(su(Lattice::L, 1, 7, 11, 1) == 1320);
  CHECK(su(Lattice::L, 1, 3, 3, 1) == 18);
  CHECK(su(Lattice::M, 1, 3, 3, 1) == 36);
  CHECK(su(Lattice::L, 1, 5, 2, 3) == 512);
  CHECK(su(Lattice::M, 1, 3, 2, 3) == 768);
}

TEST_CASE("count report carries its inputs") {
  const auto spec = make_ring_spec(make_field(3), 5, 1);
  const CountReport r = count_group(Lattice::L, 1, spec, GroupKind::U, single_thread());
  CHECK(r.spec == spec);
  CHECK(r.group == GroupKind::U);
  CHECK(r.count == 720);
  CHECK(r.nodes > 0);
  CHECK(r.elapsed.count() >= 0);
}

TEST_CASE("backtracking and cartesian enumeration agree") {
  struct Case {
    Lattice l;
    int n;
    std::int64_t d;
    std::uint32_t p;
    unsigned N;
  };
  for (const Case& c : {Case{Lattice::L, 1, 3, 3, 1}, Case{Lattice::L, 1, 1, 3, 1}, Case{Lattice::M, 1, 7, 3, 1},
                        Case{Lattice::L, 1, 3, 2, 1}, Case{Lattice::M, 1, 1, 2, 2}, Case{Lattice::L, 1, 5, 2, 2},
                        Case{Lattice::L, 2, 3, 2, 1}, Case{Lattice::M, 2, 1, 2, 1}}) {
    const auto spec = make_ring_spec(make_field(c.d), c.p, c.N);
    EnumOptions cart = single_thread();
    cart.mode = EnumMode::Cartesian;
    const GroupCounts a = count_unitary_and_special(c.l, c.n, spec, single_thread());
    const GroupCounts b = count_unitary_and_special(c.l, c.n, spec, cart);
    CHECK(a.unitary == b.unitary);
    CHECK(a.special == b.special);
    CHECK(a.special >= 1);
  }
}

TEST_CASE("cartesian mode honours the kernel filter") {
  const auto spec = make_ring_spec(make_field(5), 2, 2);
  EnumOptions o = single_thread();
  o.identity_level = 1;
  const GroupCounts a = count_unitary_and_special(Lattice::L, 1, spec, o);
  o.mode = EnumMode::Cartesian;
  const GroupCounts b = count_unitary_and_special(Lattice::L, 1, spec, o);
  CHECK(a.unitary == b.unitary);
  CHECK(a.special == b.special);
}

TEST_CASE("SU divides U with the index of the determinant-norm map") {
  for (std::int64_t d : {1, 3, 5, 7}) {
    for (std::uint32_t p : {3U, 5U}) {
      const auto spec = make_ring_spec(make_field(d), p, 1);
      const GroupCounts c = count_unitary_and_special(Lattice::L, 1, spec, single_thread());
      CHECK(c.unitary % c.special == 0);
    }
  }
}

TEST_CASE("counts are independent of thread count") {
  const auto spec = make_ring_spec(make_field(7), 11, 1);
  EnumOptions many;
  many.threads = 4;
  const GroupCounts a = count_unitary_and_special(Lattice::M, 1, spec, single_thread());
  const GroupCounts b = count_unitary_and_special(Lattice::M, 1, spec, many);
  CHECK(a.unitary == b.unitary);
  CHECK(a.special == b.special);
}

TEST_CASE("counts are invariant under permuting and rescaling the form") {
  const auto spec = make_ring_spec(make_field(3), 5, 1);
  const GroupCounts base = count_form({1, -1}, spec, single_thread());
  CHECK(count_form({-1, 1}, spec, single_thread()).special == base.special);
  // -form defines the same group.
  CHECK(count_form({-1, 1}, spec, single_thread()).unitary == base.unitary);
  const auto spec3 = make_ring_spec(make_field(3), 3, 1);
  const GroupCounts m = count_form({1, 1, -2}, spec3, single_thread());
  CHECK(count_form({1, -2, 1}, spec3, single_thread()).special == m.special);
  CHECK(count_form({-2, 1, 1}, spec3, single_thread()).unitary == m.unitary);
}

TEST_CASE("budget exhaustion is a refusal, not a zero") {
  EnumOptions tiny = single_thread();
  tiny.budget = 100;
  CHECK_THROWS_AS(count_group(Lattice::L, 1, make_ring_spec(make_field(3), 11, 1), GroupKind::SU, tiny),
                  BudgetExceeded);
  tiny.mode = EnumMode::Cartesian;
  CHECK_THROWS_AS(count_group(Lattice::L, 1, make_ring_spec(make_field(3), 5, 1), GroupKind::SU, tiny),
                  BudgetExceeded);
}

TEST_CASE("budget from the environment") {
  unsetenv("HMVOL_BUDGET");
  CHECK(budget_from_env() == kDefaultBudget);
  setenv("HMVOL_BUDGET", "12345", 1);
  CHECK(budget_from_env() == 12345);
  setenv("HMVOL_BUDGET", "junk", 1);
  CHECK(budget_from_env() == kDefaultBudget);
  unsetenv("HMVOL_BUDGET");
}

TEST_CASE("unsupported sizes are rejected") {
  const auto spec = make_ring_spec(make_field(3), 3, 1);
  CHECK_THROWS_AS(count_group(Lattice::L, 3, spec, GroupKind::SU), ContractError);
  CHECK_THROWS_AS(count_group(Lattice::L, 0, spec, GroupKind::SU), ContractError);
  EnumOptions o;
  o.identity_level = 2;
  CHECK_THROWS_AS(count_group(Lattice::L, 1, spec, GroupKind::SU, o), ContractError);
}

TEST_CASE("linearized kernel counts") {
  CHECK(count_kernel(Lattice::L, 1, KernelLevel::ModTwo) == 16);
  CHECK(count_kernel(Lattice::M, 1, KernelLevel::ModFour) == 128);
  CHECK(count_kernel(Lattice::L, 2, KernelLevel::ModTwo) == 1024);
  CHECK(count_kernel(Lattice::M, 2, KernelLevel::ModFour) == BigInt(1) << 18);
  for (std::int64_t d : {1, 5, 13}) {
    const FieldData f = make_field(d);
    for (int n = 1; n <= 4; ++n) {
      CHECK(count_kernel(Lattice::L, n, KernelLevel::ModTwo, f) == BigInt(1) << (n * n + 3 * n));
      CHECK(count_kernel(Lattice::M, n, KernelLevel::ModFour, f) == BigInt(1) << (2 * n * n + 5 * n));
    }
  }
}

TEST_CASE("block-decomposed kernel count matches brute force") {
  for (std::int64_t d : {1, 5, 3}) {
    CHECK(count_kernel(Lattice::L, 1, KernelLevel::ModTwo, make_field(d)) == kernel_by_brute_force(Lattice::L, 1, 1, d));
    CHECK(count_kernel(Lattice::M, 1, KernelLevel::ModFour, make_field(d)) ==
          kernel_by_brute_force(Lattice::M, 1, 2, d));
    CHECK(count_kernel(Lattice::L, 2, KernelLevel::ModTwo, make_field(d)) == kernel_by_brute_force(Lattice::L, 2, 1, d));
  }
}

TEST_CASE("group kernel of reduction O/8 -> O/4 matches the linearized count") {
  EnumOptions o = single_thread();
  o.identity_level = 2;
  const auto spec = make_ring_spec(make_field(5), 2, 3);
  CHECK(count_group(Lattice::L, 1, spec, GroupKind::SU, o).count == count_kernel(Lattice::L, 1, KernelLevel::ModTwo));
}

TEST_CASE("oracle local densities") {
  const EnumOptions o = single_thread();
  CHECK(oracle_tau_p(Lattice::L, 1, make_field(3), 5, o) == Rational(24, 25));
  CHECK(oracle_tau_p(Lattice::L, 1, make_field(3), 3, o) == Rational(2, 3));
  CHECK(oracle_tau_p(Lattice::L, 1, make_field(5), 2, o) == Rational(1, 2));
  CHECK(oracle_tau_p(Lattice::M, 1, make_field(3), 2, o) == Rational(3, 2));
  CHECK(oracle_tau_p(Lattice::M, 1, make_field(3), 3, o) == Rational(4, 3));

  const OracleTauReport r = oracle_tau_p_report(Lattice::L, 1, make_field(5), 2, o);
  CHECK(r.levels.count_level == 3);
  CHECK(r.levels.image_level == 2);
  CHECK(r.group_count == 512);
  CHECK(r.kernel_count == 16);

  // The density does not depend on the level once it has stabilized.
  const OracleTauReport deeper = oracle_tau_p_report(Lattice::L, 1, make_field(5), 2, o, OracleLevels{4, 3});
  CHECK(deeper.value == Rational(1, 2));
  const OracleTauReport odd2 = oracle_tau_p_report(Lattice::L, 1, make_field(3), 5, o, OracleLevels{2, 2});
  CHECK(odd2.value == Rational(24, 25));
  CHECK_THROWS_AS(oracle_tau_p_report(Lattice::L, 1, make_field(3), 5, o, OracleLevels{1, 2}), ContractError);
}

TEST_CASE("stabilization") {
  const EnumOptions o = single_thread();
  CHECK(stabilization_check(Lattice::L, 1, make_field(3), 5, 1, o));
  CHECK(stabilization_check(Lattice::L, 1, make_field(3), 3, 1, o));
  CHECK_THROWS_AS(stabilization_check(Lattice::L, 1, make_field(3), 3, 0, o), ContractError);
  const StabilizationReport r = stabilization_report(Lattice::L, 1, make_field(3), 3, 1, o);
  CHECK(r.lower == 108);
  CHECK(r.upper == 8748);
  CHECK(r.factor == 81);
  // M at ramified 2 is not yet stable between levels 2 and 3, but is from 3 on.
  CHECK_FALSE(stabilization_check(Lattice::M, 1, make_field(1), 2, 2, o));
  CHECK(stabilization_check(Lattice::M, 1, make_field(1), 2, 3, o));
}

TEST_CASE("names") {
  CHECK(to_string(Lattice::M) == "M");
  CHECK(to_string(GroupKind::SU) == "SU");
  CHECK(lattice_form(Lattice::M, 2) == std::vector<std::int64_t>{1, 1, -2});
}
