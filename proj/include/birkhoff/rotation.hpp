#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birkhoff/linear_form.hpp"
#include "birkhoff/rational.hpp"

namespace birkhoff {

/// Continued-fraction convergent p_n/q_n together with d_n = q_n·rho − p_n.
struct Convergent {
  std::size_t index = 0;
  Integer p;
  Integer q;
  LinearForm d;
};

/// A double that is within `error` of an exact value.
struct CertifiedFloat {
  double value = 0.0;
  double error = 0.0;
};

enum class Ordering { Less, Equal, Greater };

inline Ordering to_ordering(int s) {
  return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

/// Default cap on continued-fraction digits consumed by one comparison.
inline constexpr std::size_t kDefaultRefinementCap = 10000;

/// A rotation angle rho in [0, 1] given by its continued-fraction digits
/// rho = [a_1, a_2, ...], with p_0 = 0, p_1 = 1, q_0 = 1, q_1 = a_1.
///
/// The object is a cheap shared handle: copies share the digit and
/// convergent caches. Caches only ever grow and published entries never
/// change, so concurrent readers are safe; growth is serialized internally.
class RotationNumber {
 public:
  enum class Kind { ExactRational, PeriodicCF, StreamCF };

  /// `pre` followed by `period` repeated forever; without a period the
  /// expansion is finite and the number rational.
  static RotationNumber from_cf(std::vector<std::int64_t> pre,
                                std::optional<std::vector<std::int64_t>> period = std::nullopt);
  static RotationNumber metallic(std::int64_t a);
  static RotationNumber golden() { return metallic(1); }
  static RotationNumber silver() { return metallic(2); }
  /// e − 2 = [1, 2, 1, 1, 4, 1, 1, 6, ...].
  static RotationNumber e_minus_2();
  /// Exact rational in [0, 1].
  static RotationNumber rational(const Rational& value);
  /// Parses `golden | silver | metallic:<a> | e-2 | cf:<a1>,...[;<period>] | rat:<p>/<q>`.
  static RotationNumber parse(std::string_view spec);

  Kind kind() const;
  bool is_rational() const { return kind() == Kind::ExactRational; }
  /// Exact value for ExactRational, nullopt otherwise.
  std::optional<Rational> exact_value() const;
  /// Number of CF digits when finite.
  std::optional<std::size_t> cf_length() const;

  /// a_k for k >= 1.
  std::int64_t digit(std::size_t k) const;
  std::vector<std::int64_t> digits(std::size_t count) const;
  /// Convergent number n (n = 0 is 0/1).
  const Convergent& convergent(std::size_t n) const;
  /// Index of the last convergent, i.e. the CF length, for rational numbers.
  std::optional<std::size_t> last_index() const { return cf_length(); }

  /// 1 − rho as its own continued fraction.
  RotationNumber complement() const;

  /// Canonical spec string (round-trips through parse()).
  std::string spec() const;

  std::size_t refinement_cap() const;
  void set_refinement_cap(std::size_t cap);

  /// Sign of a + b·rho, exact.
  int sign_of(const LinearForm& v) const;
  /// Closed double interval [lo, hi] certified to contain rho.
  std::pair<double, double> enclosure() const;

  /// For rational rho folds b·rho into the constant; identity otherwise.
  LinearForm normalize(const LinearForm& v) const;

  /// True when both handles share one underlying number.
  bool same_as(const RotationNumber& other) const { return state_ == other.state_; }

 private:
  struct State;
  explicit RotationNumber(std::shared_ptr<State> state) : state_(std::move(state)) {}
  int sign_exact(const Integer& A, const Integer& B) const;

  std::shared_ptr<State> state_;
};

/// A rotation angle inside the field Q + Q·rho of a generator rho, e.g.
/// rho itself, 1 − rho or rho − 22/32. Densities of angles sharing a
/// generator compare as exact objects.
struct Angle {
  RotationNumber field;
  LinearForm value;

  Angle(RotationNumber rho)  // NOLINT(google-explicit-constructor)
      : field(std::move(rho)), value(LinearForm::rho()) {}
  Angle(RotationNumber rho, LinearForm v) : field(std::move(rho)), value(std::move(v)) {}

  bool is_generator() const { return value == LinearForm::rho(); }
};

RotationNumber rotation_from_cf(const std::vector<std::int64_t>& pre,
                                const std::optional<std::vector<std::int64_t>>& period);
RotationNumber rotation_metallic(std::int64_t a);
RotationNumber rotation_e_minus_2();
const Convergent& convergent(const RotationNumber& rho, std::size_t n);

Ordering compare_to_rational(const RotationNumber& rho, const Rational& r);
Ordering lf_compare(const LinearForm& u, const LinearForm& v, const RotationNumber& rho);
int lf_sign(const LinearForm& v, const RotationNumber& rho);
bool lf_equal(const LinearForm& u, const LinearForm& v, const RotationNumber& rho);
bool lf_less(const LinearForm& u, const LinearForm& v, const RotationNumber& rho);
LinearForm lf_abs(const LinearForm& v, const RotationNumber& rho);
const LinearForm& lf_max(const LinearForm& u, const LinearForm& v, const RotationNumber& rho);
const LinearForm& lf_min(const LinearForm& u, const LinearForm& v, const RotationNumber& rho);

/// k with k <= v < k + 1.
Integer lf_floor(const LinearForm& v, const RotationNumber& rho);
/// v − lf_floor(v), in [0, 1).
LinearForm lf_frac(const LinearForm& v, const RotationNumber& rho);

/// Double approximation with an absolute error bound. The bound is at most
/// 2^-bits unless |v| is so large that a double cannot hold that accuracy,
/// in which case the honest (larger) bound is returned.
CertifiedFloat lf_to_float(const LinearForm& v, const RotationNumber& rho, int bits);

/// Cheap non-certified double value, for diagnostics and plotting helpers.
double lf_approx(const LinearForm& v, const RotationNumber& rho);

/// Filtered sign evaluation over double enclosures. Hot loops precompute
/// FloatForm values and only fall back to exact arithmetic when the filter
/// cannot decide.
struct FloatForm {
  double value = 0.0;
  double error = 0.0;  // certified: |value − exact| <= error
};
FloatForm float_form(const LinearForm& v, const RotationNumber& rho);

/// Permutation sorting `values` ascending (stable), exact.
std::vector<std::size_t> sorted_order(const std::vector<LinearForm>& values, const RotationNumber& rho);

/// lf_compare(u, v) using precomputed float forms when they separate.
Ordering filtered_compare(const LinearForm& u, const FloatForm& fu, const LinearForm& v, const FloatForm& fv,
                          const RotationNumber& rho);

}  // namespace birkhoff
