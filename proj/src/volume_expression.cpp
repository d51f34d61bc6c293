#include "hmvol/volume_expression.hpp"

#include <algorithm>
#include <sstream>

#include "hmvol/quadfield.hpp"

namespace hmvol {

namespace {

std::int64_t merge_field(std::int64_t a, std::int64_t b) {
  if (a != 0 && b != 0 && a != b) throw ContractError("volume expression: mixing fields d=" + std::to_string(a) +
                                                      " and d=" + std::to_string(b));
  return a != 0 ? a : b;
}

void add_args(std::vector<int>& into, const std::vector<int>& from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
}

void remove_args(std::vector<int>& from, const std::vector<int>& what, const char* name) {
  for (int a : what) {
    auto it = std::find(from.begin(), from.end(), a);
    if (it == from.end()) throw ContractError(std::string("volume expression: cannot divide out ") + name + "(" +
                                              std::to_string(a) + ")");
    from.erase(it);
  }
}

std::string join_args(const char* name, const std::vector<int>& args) {
  std::string out;
  for (int a : args) out += std::string(" * ") + name + "(" + std::to_string(a) + ")";
  return out;
}

}  // namespace

std::int64_t abs_discriminant(std::int64_t d) { return d == 0 ? 1 : make_field(d).conductor; }

VolumeExpression VolumeExpression::scalar(const Rational& c) {
  VolumeExpression v;
  v.coeff = c;
  return v;
}

VolumeExpression VolumeExpression::two_pi_power(long k) {
  VolumeExpression v;
  v.coeff = Rational(2).pow(k);
  v.pi_power = k;
  return v;
}

VolumeExpression& VolumeExpression::operator*=(const VolumeExpression& o) {
  d = merge_field(d, o.d);
  coeff *= o.coeff;
  sqrt_coeff_sq *= o.sqrt_coeff_sq;
  d_power += o.d_power;
  pi_power += o.pi_power;
  add_args(zeta_args, o.zeta_args);
  add_args(l_args, o.l_args);
  normalize();
  return *this;
}

VolumeExpression& VolumeExpression::operator/=(const VolumeExpression& o) {
  if (o.coeff.is_zero() || o.sqrt_coeff_sq.is_zero()) throw ContractError("volume expression: division by zero");
  d = merge_field(d, o.d);
  coeff /= o.coeff;
  sqrt_coeff_sq /= o.sqrt_coeff_sq;
  d_power -= o.d_power;
  pi_power -= o.pi_power;
  remove_args(zeta_args, o.zeta_args, "zeta");
  remove_args(l_args, o.l_args, "L");
  normalize();
  return *this;
}

void VolumeExpression::normalize() {
  Rational root;
  if (sqrt_coeff_sq != Rational(1) && rational_sqrt(sqrt_coeff_sq, root)) {
    coeff *= root;
    sqrt_coeff_sq = 1;
  }
}

std::string VolumeExpression::str() const {
  std::ostringstream os;
  os << coeff;
  if (sqrt_coeff_sq != Rational(1)) os << " * sqrt(" << sqrt_coeff_sq << ")";
  if (!d_power.is_zero()) os << " * |D|^(" << d_power << ")";
  if (pi_power != 0) os << " * pi^" << pi_power;
  os << join_args("zeta", zeta_args) << join_args("L", l_args);
  return os.str();
}

}  // namespace hmvol
