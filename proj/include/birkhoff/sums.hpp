#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "birkhoff/linear_form.hpp"
#include "birkhoff/rotation.hpp"

namespace birkhoff {

/// S(alpha, n, x) = sum_{i=1}^{n} ({x + i·alpha} − 1/2), with S(alpha, 0, x) = 0.
LinearForm sum_direct(const Angle& alpha, std::int64_t n, const LinearForm& x = LinearForm());

/// The same sum over i = 0..n−1. Equals sum_direct(alpha, n, {x − alpha}).
LinearForm sum_hat(const Angle& alpha, std::int64_t n, const LinearForm& x = LinearForm());

struct OrbitRecord {
  std::int64_t index = 0;
  LinearForm value;  // S(alpha, index, x0)
  bool is_running_max = false;
  bool is_running_min = false;
};

/// Lazy stream of S(alpha, i, x0) for i = 1..N, one fractional part per step.
/// Record 1 is both the initial running maximum and minimum.
class Orbit {
 public:
  Orbit(Angle alpha, std::int64_t count, LinearForm x0 = LinearForm());

  std::optional<OrbitRecord> next();
  std::int64_t count() const { return count_; }

 private:
  Angle alpha_;
  LinearForm step_;     // {alpha}
  LinearForm point_;    // {x0 + i·alpha}
  LinearForm sum_;
  LinearForm max_;
  LinearForm min_;
  std::int64_t count_;
  std::int64_t index_ = 0;
};

std::vector<OrbitRecord> orbit(const Angle& alpha, std::int64_t count, const LinearForm& x0 = LinearForm());

/// S(alpha, i, x0) for i = 0..count (entry 0 is the empty sum).
std::vector<LinearForm> orbit_values(const Angle& alpha, std::int64_t count, const LinearForm& x0 = LinearForm());

/// sum_{i=1}^{n} ({(i − k)·rho} − 1/2), the value of S at the discontinuity {−k·rho}.
/// Needs irrational rho and 1 <= k <= n.
LinearForm shifted_sum(const RotationNumber& rho, std::int64_t n, std::int64_t k);

/// Closed form S(q_n) = ((q_n + 1)·d_n + (−1)^{n+1}) / 2.
LinearForm s_qn(const RotationNumber& rho, std::size_t n);

/// d = q·alpha − p after checking gcd(p, q) = 1, q >= 2 and |d| < 1/(q − 1).
LinearForm admissible_closeness(std::int64_t p, std::int64_t q, const Angle& alpha);

/// sum_{i=1}^{q} floor(i·alpha) by the closed form ((q+1)p − q + 1)/2 + floor(d),
/// d = q·alpha − p, cross-checked against direct summation.
/// Needs gcd(p, q) = 1, q >= 2 and |d| < 1/(q − 1).
Integer floor_sum(std::int64_t p, std::int64_t q, const Angle& alpha);

/// sum_{i=1}^{q} {i·alpha} = ((q+1)d + q − 1)/2 − floor(d), cross-checked likewise.
LinearForm frac_sum(std::int64_t p, std::int64_t q, const Angle& alpha);

/// S(q_n) + S(k) + k·d_n, which equals S(q_n + k) for 0 <= k < q_{n+1}.
LinearForm recursion_step(const RotationNumber& rho, std::size_t n, std::int64_t k);

struct ExtremumRecord {
  std::int64_t index = 0;
  LinearForm value;
  /// Largest k with q_k <= index.
  std::size_t bracket = 0;
  /// Maxima are expected at odd brackets [q_{2n+1}, q_{2n+2} − 1], minima at even ones.
  bool in_expected_bracket = false;
};

struct RunningExtrema {
  std::vector<ExtremumRecord> maxima;
  std::vector<ExtremumRecord> minima;
};

RunningExtrema running_extrema(const RotationNumber& rho, std::int64_t count);

/// Largest k with q_k <= m (m >= 1).
std::size_t convergent_bracket(const RotationNumber& rho, const Integer& m);

}  // namespace birkhoff
