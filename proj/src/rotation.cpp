#include "birkhoff/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

// Digits of e − 2 = [1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, ...], 0-based.
std::int64_t e_minus_2_digit(std::size_t j) {
  if (j == 0) return 1;
  if (j == 1) return 2;
  std::size_t r = (j - 2) % 3;
  if (r < 2) return 1;
  return 2 * static_cast<std::int64_t>((j - 2) / 3 + 2);
}

std::string join_digits(const std::vector<std::int64_t>& digits) {
  std::ostringstream os;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) os << ',';
    os << digits[i];
  }
  return os.str();
}

void check_digits(const std::vector<std::int64_t>& digits) {
  for (auto a : digits) {
    if (a <= 0) throw InvalidDigitError("continued-fraction digit must be >= 1, got " + std::to_string(a));
  }
}

std::vector<std::int64_t> parse_digit_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(to_int64(parse_integer(piece)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double round_down(const Rational& x) {
  double d = mpq_get_d(x.get_mpq_t());  // truncates toward zero
  if (sgn(x) < 0 && Rational(d) != x) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double round_up(const Rational& x) {
  double d = mpq_get_d(x.get_mpq_t());
  if (sgn(x) > 0 && Rational(d) != x) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace

struct RotationNumber::State {
  Kind kind = Kind::ExactRational;
  std::vector<std::int64_t> prefix;
  std::vector<std::int64_t> period;  // PeriodicCF
  std::function<std::int64_t(std::size_t)> stream;  // StreamCF, 0-based after prefix
  std::string spec_text;

  mutable std::mutex mu;
  mutable std::deque<Convergent> convergents;
  mutable std::size_t cap = kDefaultRefinementCap;
  mutable std::optional<std::pair<double, double>> enclosure;
  mutable std::optional<Rational> exact;

  std::optional<std::int64_t> digit_at(std::size_t k) const {
    if (k == 0) return std::nullopt;
    if (k <= prefix.size()) return prefix[k - 1];
    std::size_t j = k - prefix.size() - 1;
    switch (kind) {
      case Kind::ExactRational:
        return std::nullopt;
      case Kind::PeriodicCF:
        return period[j % period.size()];
      case Kind::StreamCF:
        return stream(j);
    }
    return std::nullopt;
  }

  // Caller holds mu.
  const Convergent& convergent_locked(std::size_t n) const {
    if (convergents.empty() && kind == Kind::ExactRational) {
      // Build the whole finite table once so that every d_n can be folded to
      // its exact rational value.
      extend_locked(prefix.size());
      const Convergent& last = convergents.back();
      exact = make_rational(last.p, last.q);
      for (auto& c : convergents) c.d = LinearForm(Rational(c.q * *exact - c.p));
    }
    extend_locked(n);
    return convergents[n];
  }

  void extend_locked(std::size_t n) const {
    if (convergents.empty()) {
      Convergent c0;
      c0.index = 0;
      c0.p = 0;
      c0.q = 1;
      c0.d = LinearForm::rho();
      convergents.push_back(std::move(c0));
    }
    while (convergents.size() <= n) {
      std::size_t next = convergents.size();
      auto a = digit_at(next);
      if (!a) {
        throw OutOfRangeError("convergent index " + std::to_string(n) + " beyond the expansion of length " +
                              std::to_string(next - 1));
      }
      const Convergent& prev = convergents.back();
      Integer p_prev2 = next >= 2 ? convergents[next - 2].p : Integer(1);
      Integer q_prev2 = next >= 2 ? convergents[next - 2].q : Integer(0);
      Convergent c;
      c.index = next;
      c.p = Integer(*a) * prev.p + p_prev2;
      c.q = Integer(*a) * prev.q + q_prev2;
      c.d = LinearForm(Rational(-c.p), Rational(c.q));
      convergents.push_back(std::move(c));
    }
  }
};

RotationNumber RotationNumber::from_cf(std::vector<std::int64_t> pre,
                                       std::optional<std::vector<std::int64_t>> period) {
  check_digits(pre);
  auto st = std::make_shared<State>();
  st->prefix = std::move(pre);
  if (period) {
    if (period->empty()) throw InvalidDigitError("periodic continued fraction needs a nonempty period");
    check_digits(*period);
    st->kind = Kind::PeriodicCF;
    st->period = std::move(*period);
    st->spec_text = "cf:" + join_digits(st->prefix) + ";" + join_digits(st->period);
    if (st->prefix.empty() && st->period.size() == 1) {
      std::int64_t a = st->period[0];
      st->spec_text = a == 1 ? "golden" : a == 2 ? "silver" : "metallic:" + std::to_string(a);
    }
  } else {
    st->kind = Kind::ExactRational;
    st->spec_text = "cf:" + join_digits(st->prefix);
  }
  return RotationNumber(std::move(st));
}

RotationNumber RotationNumber::metallic(std::int64_t a) {
  if (a <= 0) throw InvalidDigitError("metallic mean needs a >= 1, got " + std::to_string(a));
  return from_cf({}, std::vector<std::int64_t>{a});
}

RotationNumber RotationNumber::e_minus_2() {
  auto st = std::make_shared<State>();
  st->kind = Kind::StreamCF;
  st->stream = e_minus_2_digit;
  st->spec_text = "e-2";
  return RotationNumber(std::move(st));
}

RotationNumber RotationNumber::rational(const Rational& value) {
  if (sgn(value) < 0 || value > 1) {
    throw DomainError("rational rotation number must lie in [0, 1], got " + to_string(value));
  }
  std::vector<std::int64_t> digits;
  Rational x = value;
  while (sgn(x) != 0) {
    Rational inv = 1 / x;
    Integer a = floor(inv);
    digits.push_back(to_int64(a));
    x = inv - a;
  }
  RotationNumber r = from_cf(std::move(digits), std::nullopt);
  r.state_->spec_text = "rat:" + value.get_num().get_str() + "/" + value.get_den().get_str();
  return r;
}

RotationNumber RotationNumber::parse(std::string_view spec) {
  auto starts = [&](std::string_view p) { return spec.substr(0, p.size()) == p; };
  try {
    if (spec == "golden") return golden();
    if (spec == "silver") return silver();
    if (spec == "e-2") return e_minus_2();
    if (starts("metallic:")) return metallic(to_int64(parse_integer(spec.substr(9))));
    if (starts("rat:")) {
      std::string_view body = spec.substr(4);
      if (body.find('/') == std::string_view::npos) throw ParseError("rat: expects <p>/<q>");
      return rational(parse_rational(body));
    }
    if (starts("cf:")) {
      std::string_view body = spec.substr(3);
      auto semi = body.find(';');
      if (semi == std::string_view::npos) return from_cf(parse_digit_list(body), std::nullopt);
      return from_cf(parse_digit_list(body.substr(0, semi)), parse_digit_list(body.substr(semi + 1)));
    }
    if (starts("1-")) return parse(spec.substr(2)).complement();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("bad rotation spec '" + std::string(spec) + "': " + e.what());
  }
  throw ParseError("unknown rotation spec '" + std::string(spec) + "'");
}

RotationNumber::Kind RotationNumber::kind() const { return state_->kind; }

std::optional<std::size_t> RotationNumber::cf_length() const {
  if (state_->kind != Kind::ExactRational) return std::nullopt;
  return state_->prefix.size();
}

std::optional<Rational> RotationNumber::exact_value() const {
  if (!is_rational()) return std::nullopt;
  std::lock_guard lock(state_->mu);
  state_->convergent_locked(0);
  return state_->exact;
}

std::int64_t RotationNumber::digit(std::size_t k) const {
  auto a = state_->digit_at(k);
  if (!a) throw OutOfRangeError("continued-fraction digit " + std::to_string(k) + " does not exist");
  return *a;
}

std::vector<std::int64_t> RotationNumber::digits(std::size_t count) const {
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k <= count; ++k) {
    auto a = state_->digit_at(k);
    if (!a) break;
    out.push_back(*a);
  }
  return out;
}

const Convergent& RotationNumber::convergent(std::size_t n) const {
  std::lock_guard lock(state_->mu);
  const Convergent& c = state_->convergent_locked(n);
  return c;
}

LinearForm RotationNumber::normalize(const LinearForm& v) const {
  if (!is_rational() || v.is_constant()) return v;
  return LinearForm(v.a() + v.b() * *exact_value());
}

RotationNumber RotationNumber::complement() const {
  // 1 − [a1, a2, a3, ...] = [a2 + 1, a3, ...] when a1 = 1, else [1, a1 − 1, a2, ...].
  auto a1 = state_->digit_at(1);
  if (is_rational()) {
    Rational value = *exact_value();
    RotationNumber r = rational(Rational(1 - value));
    return r;
  }
  std::vector<std::int64_t> head;
  std::size_t consumed;
  if (*a1 == 1) {
    head.push_back(*state_->digit_at(2) + 1);
    consumed = 2;
  } else {
    head.push_back(1);
    head.push_back(*a1 - 1);
    consumed = 1;
  }
  if (state_->kind == Kind::PeriodicCF) {
    // The tail after `consumed` digits is again eventually periodic.
    std::vector<std::int64_t> pre = head;
    std::size_t pos = consumed;  // number of original digits already used
    while (pos < state_->prefix.size()) pre.push_back(state_->prefix[pos++]);
    std::size_t shift = (pos - state_->prefix.size()) % state_->period.size();
    std::vector<std::int64_t> period;
    for (std::size_t i = 0; i < state_->period.size(); ++i) {
      period.push_back(state_->period[(shift + i) % state_->period.size()]);
    }
    return from_cf(std::move(pre), std::move(period));
  }
  auto st = std::make_shared<State>();
  st->kind = Kind::StreamCF;
  st->prefix = head;
  RotationNumber original = *this;
  st->stream = [original, consumed](std::size_t j) { return original.digit(consumed + 1 + j); };
  st->spec_text = "1-" + state_->spec_text;
  return RotationNumber(std::move(st));
}

std::string RotationNumber::spec() const { return state_->spec_text; }

std::size_t RotationNumber::refinement_cap() const {
  std::lock_guard lock(state_->mu);
  return state_->cap;
}

void RotationNumber::set_refinement_cap(std::size_t cap) {
  std::lock_guard lock(state_->mu);
  state_->cap = std::max<std::size_t>(cap, 2);
}

std::pair<double, double> RotationNumber::enclosure() const {
  {
    std::lock_guard lock(state_->mu);
    if (state_->enclosure) return *state_->enclosure;
  }
  std::pair<double, double> box;
  if (is_rational()) {
    Rational v = *exact_value();
    box = {round_down(v), round_up(v)};
  } else {
    // First convergent pair with q_k >= 2^40; the bracket is then far below
    // double resolution.
    const Integer threshold = Integer(1) << 40;
    std::size_t k = 1;
    while (convergent(k).q < threshold) ++k;
    const Convergent& c0 = convergent(k);
    const Convergent& c1 = convergent(k + 1);
    Rational x0 = make_rational(c0.p, c0.q);
    Rational x1 = make_rational(c1.p, c1.q);
    if (x0 > x1) std::swap(x0, x1);
    box = {round_down(x0), round_up(x1)};
  }
  std::lock_guard lock(state_->mu);
  state_->enclosure = box;
  return box;
}

int RotationNumber::sign_exact(const Integer& A, const Integer& B) const {
  // sign(A + B·rho) for integers A, B.
  if (sgn(B) == 0) return sgn(A);
  if (is_rational()) {
    const Convergent& last = convergent(*cf_length());
    return sgn(Integer(A * last.q + B * last.p));
  }
  const std::size_t cap = refinement_cap();
  // rho lies strictly between consecutive convergents, and the brackets are
  // nested, so jumping ahead in k is always valid.
  std::size_t k = 1;
  while (true) {
    const Convergent& c0 = convergent(k);
    const Convergent& c1 = convergent(k + 1);
    int s0 = sgn(Integer(A * c0.q + B * c0.p));
    int s1 = sgn(Integer(A * c1.q + B * c1.p));
    if (s0 == 0) return s1;
    if (s1 == 0) return s0;
    if (s0 == s1) return s0;
    if (k + 1 >= cap) {
      throw RefinementExhaustedError("comparison undecided after " + std::to_string(cap) +
                                     " continued-fraction digits of " + spec());
    }
    k = std::min(2 * k, cap - 1);
  }
}

int RotationNumber::sign_of(const LinearForm& v) const {
  if (v.is_constant()) return sgn(v.a());
  FloatForm f = float_form(v, *this);
  if (std::isfinite(f.value) && std::isfinite(f.error)) {
    if (f.value > f.error) return 1;
    if (f.value < -f.error) return -1;
  }
  Integer A = v.a().get_num() * v.b().get_den();
  Integer B = v.b().get_num() * v.a().get_den();
  return sign_exact(A, B);
}

FloatForm float_form(const LinearForm& v, const RotationNumber& rho) {
  constexpr double kRel = 0x1p-50;
  double a = mpq_get_d(v.a().get_mpq_t());
  if (v.is_constant()) {
    return {a, std::fabs(a) * kRel + 1e-300};
  }
  double b = mpq_get_d(v.b().get_mpq_t());
  auto [lo, hi] = rho.enclosure();
  double mid = 0.5 * (lo + hi);
  double rad = std::max(hi - mid, mid - lo) * (1 + kRel);
  double value = a + b * mid;
  double error = (std::fabs(a) + std::fabs(b) * (std::fabs(mid) + rad)) * kRel + std::fabs(b) * rad * (1 + kRel) +
                 1e-300;
  return {value, error};
}

Ordering filtered_compare(const LinearForm& u, const FloatForm& fu, const LinearForm& v, const FloatForm& fv,
                          const RotationNumber& rho) {
  if (fu.value + fu.error < fv.value - fv.error) return Ordering::Less;
  if (fu.value - fu.error > fv.value + fv.error) return Ordering::Greater;
  return lf_compare(u, v, rho);
}

std::vector<std::size_t> sorted_order(const std::vector<LinearForm>& values, const RotationNumber& rho) {
  std::vector<FloatForm> approx;
  approx.reserve(values.size());
  for (const auto& v : values) approx.push_back(float_form(v, rho));
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return filtered_compare(values[i], approx[i], values[j], approx[j], rho) == Ordering::Less;
  });
  return order;
}

RotationNumber rotation_from_cf(const std::vector<std::int64_t>& pre,
                                const std::optional<std::vector<std::int64_t>>& period) {
  return RotationNumber::from_cf(pre, period);
}

RotationNumber rotation_metallic(std::int64_t a) { return RotationNumber::metallic(a); }

RotationNumber rotation_e_minus_2() { return RotationNumber::e_minus_2(); }

const Convergent& convergent(const RotationNumber& rho, std::size_t n) { return rho.convergent(n); }

Ordering compare_to_rational(const RotationNumber& rho, const Rational& r) {
  return to_ordering(rho.sign_of(LinearForm(Rational(-r), Rational(1))));
}

int lf_sign(const LinearForm& v, const RotationNumber& rho) { return rho.sign_of(v); }

Ordering lf_compare(const LinearForm& u, const LinearForm& v, const RotationNumber& rho) {
  if (u == v) return Ordering::Equal;
  return to_ordering(rho.sign_of(u - v));
}

bool lf_equal(const LinearForm& u, const LinearForm& v, const RotationNumber& rho) {
  return lf_compare(u, v, rho) == Ordering::Equal;
}

bool lf_less(const LinearForm& u, const LinearForm& v, const RotationNumber& rho) {
  return lf_compare(u, v, rho) == Ordering::Less;
}

LinearForm lf_abs(const LinearForm& v, const RotationNumber& rho) { return rho.sign_of(v) < 0 ? -v : v; }

const LinearForm& lf_max(const LinearForm& u, const LinearForm& v, const RotationNumber& rho) {
  return lf_less(u, v, rho) ? v : u;
}

const LinearForm& lf_min(const LinearForm& u, const LinearForm& v, const RotationNumber& rho) {
  return lf_less(v, u, rho) ? v : u;
}

Integer lf_floor(const LinearForm& v, const RotationNumber& rho) {
  if (v.is_constant()) return floor(v.a());
  FloatForm f = float_form(v, rho);
  if (std::isfinite(f.value) && std::fabs(f.value) < 0x1p52) {
    double lo = std::floor(f.value - f.error);
    double hi = std::floor(f.value + f.error);
    if (lo == hi) return Integer(lo);
  }
  if (rho.is_rational()) return floor(Rational(v.a() + v.b() * *rho.exact_value()));
  const std::size_t cap = rho.refinement_cap();
  std::size_t k = 1;
  while (true) {
    const Convergent& c0 = rho.convergent(k);
    const Convergent& c1 = rho.convergent(k + 1);
    Integer f0 = floor(Rational(v.a() + v.b() * make_rational(c0.p, c0.q)));
    Integer f1 = floor(Rational(v.a() + v.b() * make_rational(c1.p, c1.q)));
    if (f0 == f1) return f0;
    if (k + 1 >= cap) {
      throw RefinementExhaustedError("floor undecided after " + std::to_string(cap) + " continued-fraction digits");
    }
    k = std::min(2 * k, cap - 1);
  }
}

LinearForm lf_frac(const LinearForm& v, const RotationNumber& rho) {
  Integer k = lf_floor(v, rho);
  if (sgn(k) == 0) return v;
  return v - LinearForm(Rational(k));
}

CertifiedFloat lf_to_float(const LinearForm& v, const RotationNumber& rho, int bits) {
  if (bits < 1) throw PreconditionError("lf_to_float needs bits >= 1");
  Rational approx;
  Rational approx_error(0);
  if (v.is_constant()) {
    approx = v.a();
  } else if (rho.is_rational()) {
    approx = v.a() + v.b() * *rho.exact_value();
  } else {
    // |rho − p_k/q_k| < 1/(q_k q_{k+1}); pick k with q_k q_{k+1} > |b|·2^(bits+1).
    Integer bound = Integer(ceil(abs(v.b()))) << (bits + 1);
    std::size_t k = 0;
    while (Integer(rho.convergent(k).q * rho.convergent(k + 1).q) <= bound) ++k;
    const Convergent& c = rho.convergent(k);
    approx = v.a() + v.b() * make_rational(c.p, c.q);
    approx_error = make_rational(1, Integer(1) << (bits + 1));
  }
  double value = mpq_get_d(approx.get_mpq_t());
  Rational rounding = abs(Rational(approx - Rational(value)));
  double error = round_up(Rational(approx_error + rounding));
  return {value, error};
}

double lf_approx(const LinearForm& v, const RotationNumber& rho) { return float_form(v, rho).value; }

}  // namespace birkhoff
