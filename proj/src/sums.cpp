#include "birkhoff/sums.hpp"

#include <string>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

const Rational kHalf(1, 2);

void require_irrational(const RotationNumber& rho, const char* what) {
  if (rho.is_rational()) {
    throw DomainError(std::string(what) + " needs an irrational rotation number, got " + rho.spec());
  }
}

// {y + step} for y, step in [0, 1).
LinearForm advance(const LinearForm& y, const LinearForm& step, const RotationNumber& field) {
  LinearForm next = y + step;
  if (lf_compare(next, LinearForm(1), field) != Ordering::Less) next -= LinearForm(1);
  return next;
}

}  // namespace

LinearForm sum_direct(const Angle& alpha, std::int64_t n, const LinearForm& x) {
  if (n < 0) throw PreconditionError("sum_direct needs n >= 0");
  const RotationNumber& field = alpha.field;
  LinearForm step = lf_frac(alpha.value, field);
  LinearForm y = lf_frac(x, field);
  LinearForm total;
  for (std::int64_t i = 1; i <= n; ++i) {
    y = advance(y, step, field);
    total += y;
  }
  return total - LinearForm(make_rational(n, 2));
}

LinearForm sum_hat(const Angle& alpha, std::int64_t n, const LinearForm& x) {
  if (n < 0) throw PreconditionError("sum_hat needs n >= 0");
  const RotationNumber& field = alpha.field;
  LinearForm step = lf_frac(alpha.value, field);
  LinearForm y = lf_frac(x, field);
  LinearForm total;
  for (std::int64_t i = 0; i < n; ++i) {
    total += y;
    y = advance(y, step, field);
  }
  return total - LinearForm(make_rational(n, 2));
}

Orbit::Orbit(Angle alpha, std::int64_t count, LinearForm x0)
    : alpha_(std::move(alpha)), count_(count) {
  if (count < 1) throw PreconditionError("orbit needs N >= 1");
  step_ = lf_frac(alpha_.value, alpha_.field);
  point_ = lf_frac(x0, alpha_.field);
}

std::optional<OrbitRecord> Orbit::next() {
  if (index_ >= count_) return std::nullopt;
  ++index_;
  point_ = advance(point_, step_, alpha_.field);
  sum_ += point_;
  sum_ -= LinearForm(kHalf);
  OrbitRecord rec;
  rec.index = index_;
  rec.value = sum_;
  if (index_ == 1) {
    rec.is_running_max = rec.is_running_min = true;
    max_ = min_ = sum_;
  } else {
    if (lf_less(max_, sum_, alpha_.field)) {
      rec.is_running_max = true;
      max_ = sum_;
    }
    if (lf_less(sum_, min_, alpha_.field)) {
      rec.is_running_min = true;
      min_ = sum_;
    }
  }
  return rec;
}

std::vector<OrbitRecord> orbit(const Angle& alpha, std::int64_t count, const LinearForm& x0) {
  Orbit stream(alpha, count, x0);
  std::vector<OrbitRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  while (auto rec = stream.next()) out.push_back(std::move(*rec));
  return out;
}

std::vector<LinearForm> orbit_values(const Angle& alpha, std::int64_t count, const LinearForm& x0) {
  if (count < 0) throw PreconditionError("orbit_values needs count >= 0");
  const RotationNumber& field = alpha.field;
  LinearForm step = lf_frac(alpha.value, field);
  LinearForm y = lf_frac(x0, field);
  std::vector<LinearForm> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  out.emplace_back();
  LinearForm total;
  for (std::int64_t i = 1; i <= count; ++i) {
    y = advance(y, step, field);
    total += y;
    total -= LinearForm(kHalf);
    out.push_back(total);
  }
  return out;
}

LinearForm shifted_sum(const RotationNumber& rho, std::int64_t n, std::int64_t k) {
  require_irrational(rho, "shifted_sum");
  if (k < 1 || k > n) throw PreconditionError("shifted_sum needs 1 <= k <= n");
  LinearForm total;
  for (std::int64_t i = 1; i <= n; ++i) {
    total += lf_frac(LinearForm::rho() * (i - k), rho);
  }
  return total - LinearForm(make_rational(n, 2));
}

LinearForm s_qn(const RotationNumber& rho, std::size_t n) {
  const Convergent& c = rho.convergent(n);
  LinearForm inner = c.d * Rational(c.q + 1) + LinearForm(n % 2 == 1 ? 1 : -1);
  return inner * kHalf;
}

LinearForm admissible_closeness(std::int64_t p, std::int64_t q, const Angle& alpha) {
  if (q < 2) throw PreconditionError("admissible (p, q) needs q >= 2");
  if (gcd(Integer(p), Integer(q)) != 1) throw PreconditionError("admissible (p, q) needs gcd(p, q) = 1");
  LinearForm d = alpha.value * Rational(q) - LinearForm(Rational(p));
  // |d| < 1/(q − 1)
  LinearForm bound(make_rational(1, q - 1));
  if (!lf_less(lf_abs(d, alpha.field), bound, alpha.field)) {
    throw PreconditionError("admissible (p, q) needs |q*rho - p| < 1/(q - 1)");
  }
  return d;
}

Integer floor_sum(std::int64_t p, std::int64_t q, const Angle& alpha) {
  LinearForm d = admissible_closeness(p, q, alpha);
  Integer numerator = Integer(q + 1) * p - q + 1;  // always even
  Integer closed = Integer(numerator / 2) + lf_floor(d, alpha.field);
  Integer direct = 0;
  for (std::int64_t i = 1; i <= q; ++i) direct += lf_floor(alpha.value * i, alpha.field);
  if (closed != direct) {
    throw InconsistencyError("floor sum closed form " + closed.get_str() + " != direct " + direct.get_str());
  }
  return closed;
}

LinearForm frac_sum(std::int64_t p, std::int64_t q, const Angle& alpha) {
  LinearForm d = admissible_closeness(p, q, alpha);
  LinearForm closed = (d * Rational(q + 1) + LinearForm(q - 1)) * kHalf - LinearForm(lf_floor(d, alpha.field));
  LinearForm direct;
  for (std::int64_t i = 1; i <= q; ++i) direct += lf_frac(alpha.value * i, alpha.field);
  if (!lf_equal(closed, direct, alpha.field)) {
    throw InconsistencyError("fractional-part sum closed form " + closed.to_string() + " != direct " +
                             direct.to_string());
  }
  return closed;
}

LinearForm recursion_step(const RotationNumber& rho, std::size_t n, std::int64_t k) {
  require_irrational(rho, "recursion_step");
  const Convergent& c = rho.convergent(n);
  const Convergent& next = rho.convergent(n + 1);
  if (k < 0 || Integer(k) >= next.q) throw PreconditionError("recursion_step needs 0 <= k < q_{n+1}");
  std::int64_t qn = to_int64(c.q);
  return sum_direct(rho, qn) + sum_direct(rho, k) + c.d * k;
}

std::size_t convergent_bracket(const RotationNumber& rho, const Integer& m) {
  if (m < 1) throw PreconditionError("convergent_bracket needs m >= 1");
  std::size_t k = 0;
  while (true) {
    if (auto last = rho.last_index(); last && k == *last) return k;
    if (rho.convergent(k + 1).q > m) return k;
    ++k;
  }
}

RunningExtrema running_extrema(const RotationNumber& rho, std::int64_t count) {
  require_irrational(rho, "running_extrema");
  RunningExtrema out;
  Orbit stream(rho, count);
  while (auto rec = stream.next()) {
    if (!rec->is_running_max && !rec->is_running_min) continue;
    ExtremumRecord e;
    e.index = rec->index;
    e.value = rec->value;
    e.bracket = convergent_bracket(rho, Integer(rec->index));
    if (rec->is_running_max) {
      ExtremumRecord m = e;
      m.in_expected_bracket = e.bracket % 2 == 1;
      out.maxima.push_back(std::move(m));
    }
    if (rec->is_running_min) {
      e.in_expected_bracket = e.bracket % 2 == 0;
      out.minima.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace birkhoff
