#include <doctest.h>

#include "hmvol/special_values.hpp"

using namespace hmvol;

namespace {

bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

}  // namespace

TEST_CASE("zeta values") {
  const SpecialValue z2 = zeta_numeric(2, 1e-12);
  CHECK(z2.kind == SpecialKind::Zeta);
  CHECK(z2.argument == 2);
  CHECK(z2.error_bound <= Real(1e-12));
  CHECK(near(z2.numeric, Real("1.6449340668482264364724151666460251892189499"), Real(1e-12)));
  CHECK(near(zeta_numeric(4, 1e-12).numeric, Real("1.0823232337111381915160036965411679027747509"), Real(1e-12)));
  const SpecialValue z3 = zeta_numeric(3, 1e-12);
  CHECK(near(z3.numeric, Real("1.2020569031595942853997381615114499907649862"), Real(1e-12)));
  CHECK_FALSE(z3.exact.has_value());
  REQUIRE(z2.exact.has_value());
  CHECK(z2.exact->coeff == Rational(1, 6));
}

TEST_CASE("exact zeta at even arguments") {
  CHECK(zeta_exact(2).coeff == Rational(1, 6));
  CHECK(zeta_exact(2).pi_power == 2);
  CHECK(zeta_exact(4).coeff == Rational(1, 90));
  CHECK(zeta_exact(6).coeff == Rational(1, 945));
  CHECK(zeta_exact(12).coeff == Rational(691, 638512875));
  CHECK_THROWS_AS(zeta_exact(3), ContractError);
  CHECK_THROWS_AS(zeta_exact(0), ContractError);
}

TEST_CASE("numeric and exact zeta agree at even s <= 12") {
  for (int s = 2; s <= 12; s += 2) {
    const SpecialValue z = zeta_numeric(s, 1e-12);
    CHECK(near(z.numeric, zeta_exact(s).evaluate(), 2 * Real(1e-12)));
    // The stated bound is honest.
    CHECK(near(z.numeric, zeta_exact(s).evaluate(), z.error_bound));
  }
}

TEST_CASE("zeta rejects s < 2") {
  CHECK_THROWS_AS(zeta_numeric(1, 1e-12), ContractError);
  CHECK_THROWS_AS(hurwitz_zeta(1, Real(1), Real(1e-12)), ContractError);
  CHECK_THROWS_AS(hurwitz_zeta(3, Real(0), Real(1e-12)), ContractError);
}

TEST_CASE("Hurwitz zeta identities") {
  for (int s = 2; s <= 9; ++s) {
    const Real tol("1e-30");
    const HurwitzValue one = hurwitz_zeta(s, Real(1), tol);
    const HurwitzValue half = hurwitz_zeta(s, Real(1) / 2, tol);
    CHECK(one.error_bound <= tol);
    CHECK(near(half.value, (pow(Real(2), s) - 1) * one.value, Real("1e-28")));
    // zeta(s, a) = a^-s + zeta(s, a + 1)
    const Real a("0.3");
    CHECK(near(hurwitz_zeta(s, a, tol).value, pow(a, -s) + hurwitz_zeta(s, a + 1, tol).value, Real("1e-28")));
  }
}

TEST_CASE("L-value examples") {
  const SpecialValue l3 = l_numeric(3, make_field(3), 1e-10);
  CHECK(l3.kind == SpecialKind::LChi);
  CHECK(l3.d == 3);
  CHECK(l3.error_bound <= Real(1e-10));
  CHECK(near(l3.numeric, Real("0.884023811750080"), Real(1e-14)));
  CHECK(near(l3.numeric, Real("0.884024"), Real(1e-5)));
  const SpecialValue catalan = l_numeric(2, make_field(1), 1e-10);
  CHECK(near(catalan.numeric, Real("0.91596559417721901505460351493238411077414937"), Real(1e-10)));
  CHECK_FALSE(catalan.exact.has_value());
  REQUIRE(l3.exact.has_value());
  CHECK(l3.exact->coeff == Rational(4, 9));
}

TEST_CASE("both L evaluation modes agree") {
  for (std::int64_t d : {1, 3, 7, 11}) {
    for (int k : {2, 3, 5}) {
      const double tol = 1e-10;
      const SpecialValue h = l_numeric(k, make_field(d), tol, LMode::Hurwitz);
      const SpecialValue s = l_numeric(k, make_field(d), tol, LMode::PartialSums);
      CHECK(s.error_bound <= Real(tol));
      CHECK(near(h.numeric, s.numeric, h.error_bound + s.error_bound));
    }
  }
}

TEST_CASE("generalized Bernoulli numbers") {
  CHECK(gen_bernoulli(1, make_field(1)) == Rational(-1, 2));
  CHECK(gen_bernoulli(3, make_field(3)) == Rational(2, 3));
  CHECK(gen_bernoulli(1, make_field(3)) == Rational(-1, 3));
  for (std::int64_t d : {1, 3, 5, 7, 11, 15}) {
    for (int k = 2; k <= 12; k += 2) CHECK(gen_bernoulli(k, make_field(d)).is_zero());
    for (int k = 1; k <= 11; k += 2) CHECK_FALSE(gen_bernoulli(k, make_field(d)).is_zero());
  }
  // Class number formula: B_{1,chi} = -2h/w.
  CHECK(gen_bernoulli(1, make_field(5)) == Rational(-2));
  CHECK(gen_bernoulli(1, make_field(23)) == Rational(-3));
  CHECK_THROWS_AS(gen_bernoulli(0, make_field(3)), ContractError);
}

TEST_CASE("exact L-values") {
  const ExactForm a = l_exact(3, make_field(3));
  CHECK(a.pi_power == 3);
  CHECK(a.d_power == Rational(-5, 2));
  CHECK(near(a.evaluate(3), Real("0.884023811750080"), Real(1e-14)));
  const ExactForm b = l_exact(3, make_field(1));
  CHECK(b.coeff == Rational(1));
  CHECK(near(b.evaluate(4), pow(pi_real(), 3) / 32, Real("1e-40")));
  CHECK(near(b.evaluate(4), Real("0.968946146259369"), Real(1e-14)));
  const ExactForm c = l_exact(5, make_field(3));
  CHECK(c.d_power == Rational(-9, 2));
  CHECK_THROWS_AS(l_exact(4, make_field(3)), ContractError);
  CHECK_THROWS_AS(l_exact(1, make_field(3)), ContractError);
}

TEST_CASE("numeric and exact L agree") {
  for (int k : {3, 5, 7}) {
    for (std::int64_t d : {1, 3, 7, 11}) {
      const FieldData f = make_field(d);
      const SpecialValue v = l_numeric(k, f, 1e-10);
      const Real exact = l_exact(k, f).evaluate(-f.D);
      CHECK(near(v.numeric, exact, 2 * Real(1e-10)));
      CHECK(near(v.numeric, exact, v.error_bound * 2));
    }
  }
}

TEST_CASE("Euler product truncation") {
  for (std::int64_t d : {1, 3, 7}) {
    for (int k : {2, 3}) {
      const FieldData f = make_field(d);
      const EulerProduct e = l_euler_product(k, f, 100000);
      const SpecialValue v = l_numeric(k, f, 1e-15);
      CHECK(e.error_bound > 0);
      CHECK(e.error_bound < Real(1e-4));
      CHECK(near(e.value, v.numeric, e.error_bound + v.error_bound));
    }
  }
}

TEST_CASE("exact form printing") {
  CHECK(zeta_exact(2).str().find("pi^2") != std::string::npos);
  CHECK(l_exact(3, make_field(3)).str().find("|D|") != std::string::npos);
}
