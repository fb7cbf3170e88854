#include "birkhoff/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include <mpfr.h>

#include "birkhoff/errors.hpp"
#include "birkhoff/measure.hpp"
#include "birkhoff/ostrowski.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

namespace {

constexpr double kSlack = 1e-9;

void require_irrational(const RotationNumber& rho, const char* what) {
  if (rho.is_rational()) {
    throw DomainError(std::string(what) + " needs an irrational rotation number, got " + rho.spec());
  }
}

// Exact maximum of form(k) over k with float estimates approx[k] ± err[k].
template <class Form>
LinearForm filtered_max(std::size_t count, const Form& form, const std::vector<double>& approx,
                        const std::vector<double>& err, const RotationNumber& field) {
  double floor_of_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) floor_of_max = std::max(floor_of_max, approx[k] - err[k]);
  std::optional<LinearForm> best;
  for (std::size_t k = 0; k < count; ++k) {
    if (approx[k] + err[k] < floor_of_max) continue;
    LinearForm v = form(k);
    if (!best || lf_less(*best, v, field)) best = std::move(v);
  }
  return *best;
}

}  // namespace

PointSet orbit_points(const Angle& alpha, std::int64_t n) {
  if (n < 1) throw PreconditionError("orbit points need n >= 1");
  const RotationNumber& field = alpha.field;
  LinearForm step = lf_frac(alpha.value, field);
  PointSet pts{field, {}};
  pts.values.reserve(static_cast<std::size_t>(n));
  LinearForm y;
  for (std::int64_t i = 1; i <= n; ++i) {
    y += step;
    if (lf_compare(y, LinearForm(1), field) != Ordering::Less) y -= LinearForm(1);
    pts.values.push_back(field.normalize(y));
  }
  return pts;
}

void check_points(const PointSet& pts) {
  if (pts.values.empty()) throw PreconditionError("point set is empty");
  for (const auto& y : pts.values) {
    if (lf_sign(y, pts.field) < 0 || lf_compare(y, LinearForm(1), pts.field) != Ordering::Less) {
      throw PreconditionError("point " + y.to_string() + " is not in [0, 1)");
    }
  }
}

LinearForm clumpiness_points(const PointSet& pts) {
  check_points(pts);
  const RotationNumber& field = pts.field;
  const auto n = static_cast<std::int64_t>(pts.values.size());
  std::vector<std::size_t> order = sorted_order(pts.values, field);
  std::vector<LinearForm> y;
  y.reserve(order.size());
  for (std::size_t k : order) y.push_back(pts.values[k]);

  // key(j) = n·y_j − j with 1-based j.
  std::vector<double> approx(y.size());
  std::vector<double> err(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    FloatForm f = float_form(y[k], field);
    approx[k] = static_cast<double>(n) * f.value - static_cast<double>(k + 1);
    err[k] = static_cast<double>(n) * f.error * (1 + 0x1p-50) + std::fabs(approx[k]) * 0x1p-50 + 1e-300;
  }
  auto key = [&](std::size_t k) { return y[k] * n - LinearForm(static_cast<long>(k + 1)); };
  LinearForm hi = filtered_max(y.size(), key, approx, err, field);
  std::vector<double> neg(approx.size());
  for (std::size_t k = 0; k < approx.size(); ++k) neg[k] = -approx[k];
  LinearForm lo = -filtered_max(y.size(), [&](std::size_t k) { return -key(k); }, neg, err, field);
  return field.normalize(LinearForm(1) + hi - lo);
}

LinearForm discrepancy_oracle(const PointSet& pts) {
  if (pts.values.size() > kOracleCap) {
    throw ResourceError("oracle is limited to " + std::to_string(kOracleCap) + " points, got " +
                        std::to_string(pts.values.size()));
  }
  check_points(pts);
  const RotationNumber& field = pts.field;
  const auto n = static_cast<std::int64_t>(pts.values.size());
  std::vector<std::size_t> order = sorted_order(pts.values, field);

  // Distinct values with the 1-based sorted index range [first, last] they occupy.
  struct Group {
    LinearForm y;
    FloatForm f;
    std::int64_t first;
    std::int64_t last;
  };
  std::vector<Group> groups;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const LinearForm& y = pts.values[order[k]];
    auto idx = static_cast<std::int64_t>(k + 1);
    if (!groups.empty() && lf_equal(groups.back().y, y, field)) {
      groups.back().last = idx;
    } else {
      groups.push_back({y, float_form(y, field), idx, idx});
    }
  }

  const double nd = static_cast<double>(n);
  // Arc from group g to group h (inclusive), wrapping when g > h.
  auto count_of = [&](std::size_t g, std::size_t h) {
    return g <= h ? groups[h].last - groups[g].first + 1 : (n - groups[g].first + 1) + groups[h].last;
  };
  auto approx_of = [&](std::size_t g, std::size_t h, double& error) {
    double len = groups[h].f.value - groups[g].f.value + (g <= h ? 0.0 : 1.0);
    double v = static_cast<double>(count_of(g, h)) - nd * len;
    error = nd * (groups[g].f.error + groups[h].f.error) * (1 + 0x1p-48) + (std::fabs(v) + nd * 2) * 0x1p-50;
    return v;
  };
  auto exact_of = [&](std::size_t g, std::size_t h) {
    LinearForm len = groups[h].y - groups[g].y;
    if (g > h) len += LinearForm(1);
    return LinearForm(count_of(g, h)) - len * n;
  };

  double floor_of_max = -std::numeric_limits<double>::infinity();
  const std::size_t m = groups.size();
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) {
      double e = 0.0;
      double v = approx_of(g, h, e);
      floor_of_max = std::max(floor_of_max, v - e);
    }
  }
  std::optional<LinearForm> best;
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) {
      double e = 0.0;
      double v = approx_of(g, h, e);
      if (v + e < floor_of_max) continue;
      LinearForm x = exact_of(g, h);
      if (!best || lf_less(*best, x, field)) best = std::move(x);
    }
  }
  return field.normalize(*best);
}

LinearForm clumpiness_range(const Angle& alpha, std::int64_t n) {
  return alpha.field.normalize(support_length(density(alpha, n)));
}

LinearForm clumpiness_ramshaw(const Angle& alpha, std::int64_t n) {
  require_irrational(alpha.field, "the reflected-sum formula");
  if (n < 1) throw PreconditionError("clumpiness needs n >= 1");
  std::vector<LinearForm> s = orbit_values(alpha, n - 1);
  const RotationNumber& field = alpha.field;
  std::vector<FloatForm> f;
  f.reserve(s.size());
  for (const auto& v : s) f.push_back(float_form(v, field));
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> approx(count);
  std::vector<double> err(count);
  for (std::size_t m = 0; m < count; ++m) {
    const std::size_t other = count - 1 - m;
    approx[m] = f[m].value - f[other].value;
    err[m] = (f[m].error + f[other].error) * (1 + 0x1p-50) + std::fabs(approx[m]) * 0x1p-50 + 1e-300;
  }
  LinearForm best = filtered_max(
      count, [&](std::size_t m) { return s[m] - s[count - 1 - m]; }, approx, err, field);
  return LinearForm(1) + best * 2;
}

LinearForm clumpiness_qn(const RotationNumber& rho, std::size_t k, std::int64_t check_limit) {
  require_irrational(rho, "clumpiness at a convergent");
  const Convergent& c = rho.convergent(k);
  LinearForm value = LinearForm(1) + lf_abs(c.d, rho) * Integer(c.q - 1);
  if (c.q <= check_limit) {
    LinearForm range = clumpiness_range(rho, to_int64(c.q));
    if (!lf_equal(range, value, rho)) {
      throw InconsistencyError("q_" + std::to_string(k) + "·D = " + value.to_string() + " but the range has length " +
                               range.to_string());
    }
  }
  return value;
}

ClumpinessMaxima running_clumpiness_maxima(const RotationNumber& rho, std::int64_t count) {
  require_irrational(rho, "running clumpiness maxima");
  if (count < 1) throw PreconditionError("running clumpiness maxima need N >= 1");
  ClumpinessMaxima out;
  std::vector<LinearForm> s = orbit_values(rho, count - 1);
  std::vector<double> fs(s.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    FloatForm f = float_form(s[k], rho);
    fs[k] = f.value;
    worst = std::max(worst, f.error);
  }
  const double tol = kSlack + 4 * worst;

  // Indices seen so far ordered by S, largest first.
  std::multiset<std::pair<double, std::size_t>, std::greater<>> by_value;
  double min_s = std::numeric_limits<double>::infinity();
  std::optional<LinearForm> record;
  double record_approx = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> candidates;
  for (std::int64_t i = 1; i <= count; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    by_value.emplace(fs[k], k);
    min_s = std::min(min_s, fs[k]);

    // Only values that can reach the current record matter.
    const double floor = record ? (record_approx - 1) / 2 - tol : -std::numeric_limits<double>::infinity();
    double best = -std::numeric_limits<double>::infinity();
    candidates.clear();
    for (const auto& [value, m] : by_value) {
      if (value - min_s < std::max(best, floor) - tol) break;
      double t = value - fs[k - m];
      if (t >= std::max(best, floor) - tol) candidates.push_back(m);
      best = std::max(best, t);
    }
    if (candidates.empty()) continue;
    double approx = 1 + 2 * best;
    if (record && approx < record_approx - 2 * tol) continue;

    std::optional<LinearForm> exact;
    for (std::size_t m : candidates) {
      if (fs[m] - fs[k - m] < best - tol) continue;
      LinearForm t = s[m] - s[k - m];
      if (!exact || lf_less(*exact, t, rho)) exact = std::move(t);
    }
    LinearForm value = LinearForm(1) + *exact * 2;
    if (!record || lf_less(*record, value, rho)) {
      record = value;
      record_approx = approx;
      out.maxima.push_back({i, value, "ramshaw"});
    }
  }

  RunningExtrema ext = running_extrema(rho, count);
  auto last_before = [](const std::vector<ExtremumRecord>& recs, const Integer& bound) -> std::optional<std::int64_t> {
    std::optional<std::int64_t> found;
    for (const auto& r : recs) {
      if (Integer(r.index) < bound) found = r.index;
    }
    return found;
  };
  auto q = [&](std::size_t j) { return rho.convergent(j).q; };
  auto known = [&](std::size_t j) { return q(j) - 1 <= count; };  // all indices below q_j are scanned
  auto big_m = [&](std::size_t j) -> std::optional<std::int64_t> {  // M_{2j+1}
    if (!known(2 * j + 2)) return std::nullopt;
    return last_before(ext.maxima, q(2 * j + 2));
  };
  auto small_m = [&](std::size_t j) -> std::optional<std::int64_t> {  // m_{2j}
    if (!known(2 * j + 1)) return std::nullopt;
    return last_before(ext.minima, q(2 * j + 1));
  };
  for (std::size_t j = 0;; ++j) {
    if (!known(2 * j + 1)) break;
    auto bm = big_m(j);
    auto sm = small_m(j);
    if (!sm || !bm) {
      if (!known(2 * j + 2)) break;
      continue;
    }
    MaximaPrediction p;
    p.j = j;
    p.big_m = *bm;
    p.small_m = *sm;
    p.big_m_in_bracket = q(2 * j + 1) <= *bm;
    p.small_m_in_bracket = q(2 * j) <= *sm;
    auto prev_big = j > 0 ? big_m(j - 1) : std::optional<std::int64_t>{};
    auto next_small = small_m(j + 1);
    if (prev_big && next_small) p.hypothesis = *bm - *prev_big < *next_small - *sm;
    p.predicted = 1 + *bm + *sm;
    if (p.predicted <= count) {
      p.is_running_max = std::any_of(out.maxima.begin(), out.maxima.end(),
                                     [&](const ClumpinessRecord& r) { return r.n == p.predicted; });
    }
    out.predictions.push_back(p);
  }
  return out;
}

CertifiedInterval metallic_c(std::int64_t a, int bits) {
  if (a < 1) throw InvalidDigitError("metallic mean needs a >= 1");
  if (bits < 8) throw PreconditionError("metallic_c needs bits >= 8");
  const mpfr_prec_t prec = bits + 32;
  mpfr_t s, l, num, out;
  mpfr_inits2(prec, s, l, num, out, static_cast<mpfr_ptr>(nullptr));
  // Rational prefactor K.
  Rational k = (a % 2 == 0) ? make_rational(a, 16) : make_rational(Integer(a) * (a * a + 3), Integer(16) * (a * a + 4));
  auto bound = [&](mpfr_rnd_t towards, mpfr_rnd_t away) {
    // log((sqrt(a² + 4) + a) / 2) = ln(1/rho_a), rounded `away`, so K / log rounds `towards`.
    mpfr_set_si(s, a * a + 4, MPFR_RNDN);
    mpfr_sqrt(s, s, away);
    mpfr_add_si(s, s, a, away);
    mpfr_div_2ui(s, s, 1, away);
    mpfr_log(l, s, away);
    mpfr_set_q(num, k.get_mpq_t(), towards);
    mpfr_div(out, num, l, towards);
    return mpfr_get_d(out, towards);
  };
  CertifiedInterval c;
  c.lo = bound(MPFR_RNDD, MPFR_RNDU);
  c.hi = bound(MPFR_RNDU, MPFR_RNDD);
  mpfr_clears(s, l, num, out, static_cast<mpfr_ptr>(nullptr));
  return c;
}

namespace {

// Branch and bound over Ostrowski digits of m <= limit for max S(rho, m, 0).
//   S(m) = sum_j g_j(b_j) + b_j q_j T_j,  g_j(b) = (b/2)((b q_j + 1) d_j + (−1)^{j+1}),
//   T_j = sum_{k>j} b_k d_k.
// Digits below j contribute S(r) + T·r with r < q_j, bounded by smax_j + max(0, T)(q_j − 1).
class SumSearch {
 public:
  explicit SumSearch(RotationNumber rho) : rho_(std::move(rho)) {}

  SumMaximum run(const Integer& limit) {
    OstrowskiExpansion x = ostrowski_expand(rho_, limit);
    if (!x.leading_index()) return {Integer(0), LinearForm()};
    const std::size_t top = *x.leading_index();
    prepare(top + 1);
    for (std::size_t j = smax_.size(); j <= top; ++j) {
      // max over r < q_j: digits of q_j − 1.
      Integer below = rho_.convergent(j).q - 1;
      smax_.push_back(below == 0 ? 0.0 : approximate_max(ostrowski_expand(rho_, below)));
    }
    return exact_max(x);
  }

 private:
  void prepare(std::size_t levels) {
    while (q_.size() < levels + 1) {
      std::size_t j = q_.size();
      const Convergent& c = rho_.convergent(j);
      q_.push_back(c.q.get_d());
      d_.push_back(lf_to_float(c.d, rho_, 80).value);
      cap_.push_back(j == 0 ? rho_.digit(1) - 1 : rho_.digit(j + 1));
      full_.push_back(rho_.digit(j + 1));
    }
  }

  double g(std::size_t j, std::int64_t b) const {
    double bd = static_cast<double>(b);
    return 0.5 * bd * ((bd * q_[j] + 1) * d_[j] + (j % 2 == 1 ? 1.0 : -1.0));
  }

  double bound_below(std::size_t j, double t) const {  // digits j−1..0
    if (j == 0) return 0.0;
    if (j >= smax_.size()) return std::numeric_limits<double>::infinity();
    return smax_[j] + std::max(0.0, t) * (q_[j] - 1);
  }

  void search(std::size_t level, double t, double acc, bool tight, bool forced_zero) {
    // level = number of digits still to choose; next digit index level − 1.
    if (level == 0) {
      if (acc >= best_ - kSlack) {
        leaves_.push_back({acc, digits_});
        best_ = std::max(best_, acc);
        if (leaves_.size() > 4096) {
          std::erase_if(leaves_, [&](const auto& leaf) { return leaf.first < best_ - kSlack; });
        }
      }
      return;
    }
    const std::size_t j = level - 1;
    if (acc + bound_below(level, t) < best_ - kSlack) return;
    std::int64_t hi = forced_zero ? 0 : cap_[j];
    if (tight) hi = std::min(hi, limit_digits_[j]);
    // Most promising digit first.
    std::vector<std::pair<double, std::int64_t>> options;
    for (std::int64_t b = 0; b <= hi; ++b) {
      double gain = g(j, b) + static_cast<double>(b) * q_[j] * t;
      options.emplace_back(gain + bound_below(j, t + static_cast<double>(b) * d_[j]), b);
    }
    std::sort(options.begin(), options.end(), std::greater<>());
    for (const auto& [estimate, b] : options) {
      if (acc + estimate < best_ - kSlack) break;
      digits_[j] = b;
      double gain = g(j, b) + static_cast<double>(b) * q_[j] * t;
      search(j, t + static_cast<double>(b) * d_[j], acc + gain, tight && b == limit_digits_[j],
             j >= 1 && b == full_[j]);
    }
    digits_[j] = 0;
  }

  void start(const OstrowskiExpansion& x) {
    const std::size_t levels = *x.leading_index() + 1;
    limit_digits_.assign(levels, 0);
    for (std::size_t j = 0; j < levels; ++j) limit_digits_[j] = x.digit(j);
    digits_.assign(levels, 0);
    leaves_.clear();
    best_ = 0.0;  // m = 0
    leaves_.push_back({0.0, digits_});
    search(levels, 0.0, 0.0, true, false);
  }

  double approximate_max(const OstrowskiExpansion& x) {
    start(x);
    return best_;
  }

  SumMaximum exact_max(const OstrowskiExpansion& x) {
    start(x);
    SumMaximum out{Integer(0), LinearForm()};
    for (const auto& [value, digits] : leaves_) {
      if (value < best_ - kSlack) continue;
      OstrowskiExpansion e = OstrowskiExpansion::from_digits(rho_, digits);
      LinearForm s = ostrowski_sum(e);
      if (lf_less(out.value, s, rho_)) out = {e.value(), s};
    }
    return out;
  }

  RotationNumber rho_;
  std::vector<double> q_, d_, smax_;
  std::vector<std::int64_t> cap_, full_;
  std::vector<std::int64_t> limit_digits_, digits_;
  std::vector<std::pair<double, std::vector<std::int64_t>>> leaves_;
  double best_ = 0.0;
};

}  // namespace

SumMaximum max_sum_up_to(const RotationNumber& rho, const Integer& limit) {
  require_irrational(rho, "maximum search");
  if (limit < 0) throw PreconditionError("maximum search needs limit >= 0");
  SumSearch search(rho);
  return search.run(limit);
}

AsymptoticReport asymptotic_report(std::int64_t a, int max_index_exponent, int clumpiness_exponent) {
  if (max_index_exponent < 1 || clumpiness_exponent < 1) throw PreconditionError("exponents must be >= 1");
  RotationNumber rho = RotationNumber::metallic(a);
  AsymptoticReport report;
  report.a = a;
  report.c = metallic_c(a);
  const double c = report.c.mid();

  SumSearch search(rho);
  Integer bound = 1;
  for (int e = 1; e <= max_index_exponent; ++e) {
    bound *= 10;
    SumMaximum m = search.run(bound);
    AsymptoticRow row{e, m.index, m.value, 0.0, 0.0};
    if (m.index >= 2) {
      row.ratio = lf_to_float(m.value, rho, 53).value / std::log(m.index.get_d());
      row.ratio_to_limit = row.ratio / c;
    }
    report.sums.push_back(std::move(row));
  }

  std::int64_t count = 1;
  for (int e = 0; e < clumpiness_exponent; ++e) count *= 10;
  ClumpinessMaxima cm = running_clumpiness_maxima(rho, count);
  std::int64_t decade = 1;
  for (int e = 1; e <= clumpiness_exponent; ++e) {
    decade *= 10;
    const ClumpinessRecord* last = nullptr;
    for (const auto& r : cm.maxima) {
      if (r.n <= decade) last = &r;
    }
    AsymptoticRow row{e, Integer(last->n), last->value, 0.0, 0.0};
    if (last->n >= 2) {
      row.ratio = lf_to_float(last->value, rho, 53).value / std::log(static_cast<double>(last->n));
      row.ratio_to_limit = row.ratio / (4 * c);
    }
    report.clumpiness.push_back(std::move(row));
  }
  return report;
}

}  // namespace birkhoff
