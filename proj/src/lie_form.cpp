#include "hmvol/lie_form.hpp"

#include <array>

namespace hmvol {

namespace {

struct EpsArith {
  std::int64_t t;  // eps + conj(eps)
  std::int64_t m;  // eps * conj(eps)

  explicit EpsArith(const FieldData& f) : t(f.trace_eps), m(f.norm_eps) {}

  ZEps add(ZEps x, ZEps y) const { return {x.a + y.a, x.b + y.b}; }
  ZEps mul(ZEps x, ZEps y) const {
    const std::int64_t bd = x.b * y.b;
    return {x.a * y.a - m * bd, x.a * y.b + x.b * y.a + t * bd};
  }
  ZEps conj(ZEps x) const { return {x.a + x.b * t, -x.b}; }
  ZEps scale(ZEps x, std::int64_t c) const { return {x.a * c, x.b * c}; }
  ZEps sqrt_minus_d() const { return t == 1 ? ZEps{-1, 2} : ZEps{0, 1}; }
};

LieMatrix pair_element(std::size_t size, std::size_t i, std::size_t j, ZEps upper, ZEps lower, std::string name) {
  LieMatrix x(size, std::move(name));
  x.at(i, j) = upper;
  x.at(j, i) = lower;
  return x;
}

// Element of Q(s, i) with s^2 = -d, i^2 = -1, on the basis 1, s, i, si.
struct Q4 {
  std::array<Rational, 4> c{};
};

Q4 q4_mul(const Q4& x, const Q4& y, std::int64_t d) {
  Q4 out;
  for (unsigned a = 0; a < 4; ++a) {
    if (x.c[a].is_zero()) continue;
    for (unsigned b = 0; b < 4; ++b) {
      if (y.c[b].is_zero()) continue;
      Rational f = x.c[a] * y.c[b];
      if ((a & b & 1U) != 0) f *= Rational(-d);
      if ((a & b & 2U) != 0) f = -f;
      out.c[a ^ b] += f;
    }
  }
  return out;
}

using Q4Matrix = std::vector<std::vector<Q4>>;

Q4Matrix q4_mul(const Q4Matrix& x, const Q4Matrix& y, std::int64_t d) {
  const std::size_t n = x.size();
  Q4Matrix out(n, std::vector<Q4>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      bool zero = true;
      for (const auto& r : x[i][k].c) zero = zero && r.is_zero();
      if (zero) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Q4 p = q4_mul(x[i][k], y[k][j], d);
        for (unsigned a = 0; a < 4; ++a) out[i][j].c[a] += p.c[a];
      }
    }
  }
  return out;
}

Q4Matrix bracket(const Q4Matrix& x, const Q4Matrix& y, std::int64_t d) {
  Q4Matrix out = q4_mul(x, y, d);
  const Q4Matrix yx = q4_mul(y, x, d);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      for (unsigned a = 0; a < 4; ++a) out[i][j].c[a] -= yx[i][j].c[a];
    }
  }
  return out;
}

Rational trace_form(const Q4Matrix& x, const Q4Matrix& y, std::int64_t d) {
  Q4 acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const Q4 p = q4_mul(x[i][k], y[k][i], d);
      for (unsigned a = 0; a < 4; ++a) acc.c[a] += p.c[a];
    }
  }
  for (unsigned a = 1; a < 4; ++a) {
    if (!acc.c[a].is_zero()) throw InvariantViolation("curvature: trace form value is not rational");
  }
  return acc.c[0];
}

BigInt pow_big(std::int64_t base, unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

BigInt prod_factorials(int upto) {
  BigInt out = 1;
  for (int i = 1; i <= upto; ++i) out *= factorial(static_cast<unsigned>(i));
  return out;
}

}  // namespace

bool in_lie_algebra(const LieMatrix& x, const std::vector<std::int64_t>& form, const FieldData& field) {
  const EpsArith ar(field);
  if (form.size() != x.size) return false;
  ZEps tr;
  for (std::size_t i = 0; i < x.size; ++i) {
    tr = ar.add(tr, x.at(i, i));
    for (std::size_t j = 0; j < x.size; ++j) {
      const ZEps v = ar.add(ar.scale(x.at(i, j), form[j]), ar.scale(ar.conj(x.at(j, i)), form[i]));
      if (v != ZEps{}) return false;
    }
  }
  return tr == ZEps{};
}

LieBasis build_basis(Lattice lattice, int n, const FieldData& field) {
  if (n < 1) throw ContractError("build_basis: n must be >= 1");
  const EpsArith ar(field);
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  const ZEps one{1, 0}, eps{0, 1};
  const ZEps sq = ar.sqrt_minus_d();
  LieBasis basis{lattice, n, field, {}};

  for (int k = 1; k <= n; ++k) {
    LieMatrix g(size, "g" + std::to_string(k));
    g.at(k - 1, k - 1) = sq;
    g.at(k, k) = ar.scale(sq, -1);
    basis.elements.push_back(std::move(g));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const std::string tag = std::to_string(i) + "," + std::to_string(j);
      const auto ui = static_cast<std::size_t>(i - 1), uj = static_cast<std::size_t>(j - 1);
      basis.elements.push_back(pair_element(size, ui, uj, eps, ar.scale(ar.conj(eps), -1), "e" + tag));
      basis.elements.push_back(pair_element(size, ui, uj, one, ZEps{-1, 0}, "f" + tag));
    }
  }
  const std::int64_t w = lattice == Lattice::L ? 1 : 2;
  const std::string prime = lattice == Lattice::L ? "" : "'";
  for (int k = 1; k <= n; ++k) {
    const auto uk = static_cast<std::size_t>(k - 1);
    basis.elements.push_back(
        pair_element(size, uk, size - 1, eps, ar.scale(ar.conj(eps), w), "e" + prime + std::to_string(k)));
    basis.elements.push_back(pair_element(size, uk, size - 1, one, ZEps{w, 0}, "f" + prime + std::to_string(k)));
  }

  const auto form = lattice_form(lattice, n);
  if (basis.elements.size() != size * size - 1) throw InvariantViolation("build_basis: wrong basis size");
  for (const auto& x : basis.elements) {
    if (!in_lie_algebra(x, form, field)) throw InvariantViolation("build_basis: " + x.name + " leaves the algebra");
  }
  return basis;
}

std::vector<std::vector<BigInt>> gram_matrix(const LieBasis& basis) {
  const EpsArith ar(basis.field);
  const std::size_t m = basis.elements.size();
  std::vector<std::vector<BigInt>> g(m, std::vector<BigInt>(m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r; c < m; ++c) {
      const LieMatrix& x = basis.elements[r];
      const LieMatrix& y = basis.elements[c];
      ZEps tr;
      for (std::size_t i = 0; i < x.size; ++i) {
        for (std::size_t k = 0; k < x.size; ++k) tr = ar.add(tr, ar.mul(x.at(i, k), y.at(k, i)));
      }
      if (tr.b != 0) throw InvariantViolation("gram_matrix: Tr(XY) is not a rational integer");
      g[r][c] = g[c][r] = BigInt(static_cast<long>(tr.a));
    }
  }
  return g;
}

BigInt gram_det(const LieBasis& basis) {
  auto a = gram_matrix(basis);
  const std::size_t m = a.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < m && a[r][k] == 0) ++r;
      if (r == m) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

BigInt gram_det_expected(Lattice lattice, int n, const FieldData& field) {
  if (n < 1) throw ContractError("gram_det_expected: n must be >= 1");
  const auto un = static_cast<unsigned long>(n);
  const bool d1 = field.eps_kind == EpsKind::Integral;
  unsigned long two;
  if (lattice == Lattice::L) {
    two = d1 ? un * (un + 1) : 0;
  } else {
    two = d1 ? un * (un + 3) : 2 * un;
  }
  return pow_big(field.d, un * (un + 3) / 2) * static_cast<unsigned long>(n + 1) * pow_big(2, two);
}

Rational curvature_ratio(const LieMatrix& x, const FieldData& field) {
  const std::size_t size = x.size;
  if (size < 2) throw ContractError("curvature_ratio: matrix too small");
  bool nonzero = false;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const bool border = (i == size - 1) != (j == size - 1);
      if (!border && x.at(i, j) != ZEps{}) throw ContractError("curvature_ratio: X is not in the non-compact part");
      nonzero = nonzero || x.at(i, j) != ZEps{};
    }
  }
  if (!nonzero) throw ContractError("curvature_ratio: X must be nonzero");

  const Rational half(1, 2);
  auto lift = [&](ZEps z) {
    Q4 q;
    if (field.trace_eps == 1) {
      q.c[0] = Rational(z.a) + half * Rational(z.b);
      q.c[1] = half * Rational(z.b);
    } else {
      q.c[0] = Rational(z.a);
      q.c[1] = Rational(z.b);
    }
    return q;
  };
  Q4Matrix xm(size, std::vector<Q4>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) xm[i][j] = lift(x.at(i, j));
  }
  Q4 plus_i, minus_i;
  plus_i.c[2] = 1;
  minus_i.c[2] = -1;
  Q4Matrix jx = xm;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    jx[k][size - 1] = q4_mul(xm[k][size - 1], plus_i, field.d);
    jx[size - 1][k] = q4_mul(xm[size - 1][k], minus_i, field.d);
  }
  const std::int64_t d = field.d;
  const Rational den = trace_form(xm, xm, d) * trace_form(jx, jx, d);
  if (den.is_zero()) throw ContractError("curvature_ratio: B(X,X) B(JX,JX) vanishes");
  return trace_form(bracket(bracket(xm, jx, d), xm, d), jx, d) / den;
}

VolumeExpression vol_su(int n) {
  if (n < 1) throw ContractError("vol_su: n must be >= 1");
  VolumeExpression v = VolumeExpression::two_pi_power((static_cast<long>(n) * n + n - 2) / 2);
  v.coeff /= Rational(prod_factorials(n - 1));
  v.sqrt_coeff_sq = n;
  v.normalize();
  return v;
}

VolumeExpression vol_max_compact(int n) {
  if (n < 1) throw ContractError("vol_max_compact: n must be >= 1");
  VolumeExpression v = VolumeExpression::two_pi_power((static_cast<long>(n) * n + n) / 2);
  v.coeff /= Rational(prod_factorials(n - 1));
  v.sqrt_coeff_sq = n + 1;
  v.normalize();
  return v;
}

}  // namespace hmvol
