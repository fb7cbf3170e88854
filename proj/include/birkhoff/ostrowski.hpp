#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "birkhoff/linear_form.hpp"
#include "birkhoff/rotation.hpp"

namespace birkhoff {

/// m = sum_i b_i·q_i with the admissibility rules
///   0 <= b_0 <= a_1 − 1,  0 <= b_i <= a_{i+1} (i >= 1),
///   b_i = a_{i+1}  implies  b_{i−1} = 0.
/// Trailing zero digits are dropped, so the last stored digit is the leading one.
class OstrowskiExpansion {
 public:
  /// Validates the digits; throws InvalidExpansionError.
  static OstrowskiExpansion from_digits(RotationNumber rho, std::vector<std::int64_t> digits);

  const RotationNumber& rotation() const { return rho_; }
  const std::vector<std::int64_t>& digits() const { return digits_; }
  std::int64_t digit(std::size_t i) const { return i < digits_.size() ? digits_[i] : 0; }
  /// nullopt for the empty expansion of 0.
  std::optional<std::size_t> leading_index() const;
  /// L_k = sum_{i<=k} b_i q_i.
  const Integer& partial(std::size_t k) const { return partial_[k]; }
  /// L_{k-1} with L_{-1} = 0.
  Integer partial_before(std::size_t k) const { return k == 0 ? Integer(0) : partial_[k - 1]; }
  Integer value() const { return partial_.empty() ? Integer(0) : partial_.back(); }

  /// Copy with digit m replaced by b, validated.
  OstrowskiExpansion with_digit(std::size_t m, std::int64_t b) const;

  /// Inclusive upper bound for digit m given its neighbours.
  std::int64_t admissible_max(std::size_t m) const;

 private:
  OstrowskiExpansion(RotationNumber rho, std::vector<std::int64_t> digits);

  RotationNumber rho_;
  std::vector<std::int64_t> digits_;
  std::vector<Integer> partial_;
};

/// Greedy expansion: largest q_n <= m, b_n = floor(m / q_n), recurse on the remainder.
OstrowskiExpansion ostrowski_expand(const RotationNumber& rho, const Integer& m);

Integer ostrowski_value(const OstrowskiExpansion& expansion);
/// Validates raw digits and returns sum b_i q_i.
Integer ostrowski_value(const RotationNumber& rho, const std::vector<std::int64_t>& digits);

/// S(rho, m, 0) in O(#digits) form operations:
///   S(L_n) = sum_k (b_k / 2)·[(b_k q_k + 2 L_{k−1} + 1)·d_k + (−1)^{k+1}].
LinearForm sum_fast(const RotationNumber& rho, const Integer& m);
/// The same formula over an explicit expansion.
LinearForm ostrowski_sum(const OstrowskiExpansion& expansion);

/// B(m, n, b) = (b²/2) q_m d_m + b·[(−1)^{m+1}/2 + L_{m−1} d_m + d_m/2 + q_m sum_{j>m} b_j d_j],
/// the part of S(L_n) that depends on digit m.
LinearForm digit_influence(const OstrowskiExpansion& expansion, std::size_t m, std::int64_t b);

/// S(L_n) − B(m, n, b) with digit m set to b; independent of b.
LinearForm digit_influence_residual(const OstrowskiExpansion& expansion, std::size_t m, std::int64_t b);

/// The admissible b maximizing B(m, n, b) for odd m (where B is concave).
/// Ties go to the smaller b.
std::int64_t maximize_digit(const OstrowskiExpansion& expansion, std::size_t m);

}  // namespace birkhoff
