// Factored symbolic volumes:
//   coeff * sqrt(sqrt_coeff_sq) * |D|^d_power * pi^pi_power * prod zeta(s) * prod L(k, chi_D).
#ifndef HMVOL_VOLUME_EXPRESSION_HPP
#define HMVOL_VOLUME_EXPRESSION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hmvol/arith.hpp"

namespace hmvol {

struct VolumeExpression {
  Rational coeff{1};
  Rational sqrt_coeff_sq{1};   // square-root factors carried as their squares
  Rational d_power{0};         // exponent of |D|
  long pi_power = 0;
  std::vector<int> zeta_args;  // sorted multiset
  std::vector<int> l_args;     // sorted multiset
  std::int64_t d = 0;          // field of |D| and chi_D; 0 when none is attached

  static VolumeExpression scalar(const Rational& c);
  /// (2*pi)^k, also for negative k.
  static VolumeExpression two_pi_power(long k);

  VolumeExpression& operator*=(const VolumeExpression& o);
  /// Special-value arguments of the divisor must be present in the dividend.
  VolumeExpression& operator/=(const VolumeExpression& o);
  friend VolumeExpression operator*(VolumeExpression a, const VolumeExpression& b) { return a *= b; }
  friend VolumeExpression operator/(VolumeExpression a, const VolumeExpression& b) { return a /= b; }

  /// Moves a perfect-square radicand into coeff.
  void normalize();
  std::string str() const;

  friend bool operator==(const VolumeExpression&, const VolumeExpression&) = default;
};

/// |D| of the attached field, or 1 when none is attached.
std::int64_t abs_discriminant(std::int64_t d);

}  // namespace hmvol

#endif  // HMVOL_VOLUME_EXPRESSION_HPP
