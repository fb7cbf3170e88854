#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "birkhoff/linear_form.hpp"
#include "birkhoff/rotation.hpp"

namespace birkhoff {

/// Exact points in [0, 1), all in the field of one generator.
struct PointSet {
  RotationNumber field;
  std::vector<LinearForm> values;
};

/// {i·alpha}, i = 1..n.
PointSet orbit_points(const Angle& alpha, std::int64_t n);

/// Throws PreconditionError unless every point lies in [0, 1).
void check_points(const PointSet& pts);

/// n·D_n = 1 + max_j (n·y_j − j) − min_i (n·y_i − i) over the sorted points.
LinearForm clumpiness_points(const PointSet& pts);

inline constexpr std::size_t kOracleCap = 2000;

/// n·D_n straight from the definition: the largest excess A(I) − n·|I| over
/// closed arcs [y_i, y_j] of the circle, wrap-around arcs included.
/// Quadratic; throws ResourceError above kOracleCap points.
LinearForm discrepancy_oracle(const PointSet& pts);

/// Length of the range of S(alpha, n, ·).
LinearForm clumpiness_range(const Angle& alpha, std::int64_t n);

/// 1 + 2·max_{0 <= m <= n−1} (S(m) − S(n−1−m)) with S(0) = 0. Irrational only.
LinearForm clumpiness_ramshaw(const Angle& alpha, std::int64_t n);

/// 1 + (q_k − 1)|d_k|; cross-checked against clumpiness_range when q_k <= check_limit.
LinearForm clumpiness_qn(const RotationNumber& rho, std::size_t k, std::int64_t check_limit = 20000);

struct ClumpinessRecord {
  std::int64_t n = 0;
  LinearForm value;
  std::string method;
};

/// One instance of the running-maxima corollary: M_{2j+1} is the running
/// maximum of S in [q_{2j+1}, q_{2j+2} − 1], m_{2j} the running minimum in
/// [q_{2j}, q_{2j+1} − 1]; the predicted running maximum of i·D_i is at
/// 1 + M_{2j+1} + m_{2j} when M_{2j+1} − M_{2j−1} < m_{2j+2} − m_{2j}.
struct MaximaPrediction {
  std::size_t j = 0;
  std::int64_t big_m = 0;    // M_{2j+1}
  std::int64_t small_m = 0;  // m_{2j}
  bool big_m_in_bracket = false;
  bool small_m_in_bracket = false;
  std::optional<bool> hypothesis;  // nullopt when a needed index lies beyond N
  std::int64_t predicted = 0;
  std::optional<bool> is_running_max;  // nullopt when predicted > N
};

struct ClumpinessMaxima {
  std::vector<ClumpinessRecord> maxima;
  std::vector<MaximaPrediction> predictions;
};

/// Running maxima of i·D_i for i = 1..N, plus the corollary check.
ClumpinessMaxima running_clumpiness_maxima(const RotationNumber& rho, std::int64_t count);

struct CertifiedInterval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
};

/// c(a) = a/(16 ln(1/rho_a)) for even a, a(a²+3)/(16(a²+4) ln(1/rho_a)) for odd a.
CertifiedInterval metallic_c(std::int64_t a, int bits = 64);

/// max S(rho, m, 0) over 0 <= m <= limit, found by branch and bound over
/// Ostrowski digits and confirmed with exact sums. Irrational only.
struct SumMaximum {
  Integer index;
  LinearForm value;
};
SumMaximum max_sum_up_to(const RotationNumber& rho, const Integer& limit);

struct AsymptoticRow {
  int decade = 0;  // bound 10^decade
  Integer index;
  LinearForm value;
  double ratio = 0.0;  // value / ln(index)
  double ratio_to_limit = 0.0;  // ratio / c or ratio / 4c
};

struct AsymptoticReport {
  std::int64_t a = 0;
  CertifiedInterval c;
  std::vector<AsymptoticRow> sums;        // running maximum of S up to 10^d
  std::vector<AsymptoticRow> clumpiness;  // running maximum of i·D_i up to 10^d
};

AsymptoticReport asymptotic_report(std::int64_t a, int max_index_exponent, int clumpiness_exponent = 5);

}  // namespace birkhoff
