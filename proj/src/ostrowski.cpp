#include "birkhoff/ostrowski.hpp"

#include <string>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

// a_{i+1}, or nullopt when a finite expansion has no such digit.
std::optional<std::int64_t> next_digit(const RotationNumber& rho, std::size_t i) {
  if (auto len = rho.cf_length(); len && i + 1 > *len) return std::nullopt;
  return rho.digit(i + 1);
}

std::int64_t digit_cap(const RotationNumber& rho, std::size_t i) {
  auto a = next_digit(rho, i);
  if (!a) return 0;
  return i == 0 ? *a - 1 : *a;
}

std::string where(std::size_t i) { return "digit b_" + std::to_string(i); }

void validate(const RotationNumber& rho, const std::vector<std::int64_t>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 0) throw InvalidExpansionError(where(i) + " is negative");
    if (b[i] == 0) continue;
    if (!next_digit(rho, i)) {
      throw InvalidExpansionError(where(i) + " lies beyond the finite expansion of " + rho.spec());
    }
    std::int64_t cap = digit_cap(rho, i);
    if (b[i] > cap) {
      throw InvalidExpansionError(where(i) + " = " + std::to_string(b[i]) + " exceeds " + std::to_string(cap));
    }
    if (i >= 1 && b[i] == *next_digit(rho, i) && b[i - 1] != 0) {
      throw InvalidExpansionError(where(i) + " = a_" + std::to_string(i + 1) + " needs b_" +
                                  std::to_string(i - 1) + " = 0");
    }
  }
}

int alternating(std::size_t k) { return k % 2 == 1 ? 1 : -1; }  // (−1)^{k+1}

}  // namespace

OstrowskiExpansion::OstrowskiExpansion(RotationNumber rho, std::vector<std::int64_t> digits)
    : rho_(std::move(rho)), digits_(std::move(digits)) {
  while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
  partial_.reserve(digits_.size());
  Integer acc = 0;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    acc += rho_.convergent(i).q * digits_[i];
    partial_.push_back(acc);
  }
}

OstrowskiExpansion OstrowskiExpansion::from_digits(RotationNumber rho, std::vector<std::int64_t> digits) {
  validate(rho, digits);
  return OstrowskiExpansion(std::move(rho), std::move(digits));
}

std::optional<std::size_t> OstrowskiExpansion::leading_index() const {
  if (digits_.empty()) return std::nullopt;
  return digits_.size() - 1;
}

OstrowskiExpansion OstrowskiExpansion::with_digit(std::size_t m, std::int64_t b) const {
  std::vector<std::int64_t> d = digits_;
  if (d.size() <= m) d.resize(m + 1, 0);
  d[m] = b;
  return from_digits(rho_, std::move(d));
}

std::int64_t OstrowskiExpansion::admissible_max(std::size_t m) const {
  auto a = next_digit(rho_, m);
  if (!a) return 0;
  std::int64_t cap = digit_cap(rho_, m);
  if (m >= 1 && digit(m - 1) != 0 && cap == *a) cap -= 1;
  if (auto up = next_digit(rho_, m + 1); up && digit(m + 1) == *up) cap = 0;
  return cap;
}

OstrowskiExpansion ostrowski_expand(const RotationNumber& rho, const Integer& m) {
  if (m < 0) throw PreconditionError("Ostrowski expansion needs m >= 0");
  if (m == 0) return OstrowskiExpansion::from_digits(rho, {});
  // Largest n with q_n <= m.
  std::size_t n = 0;
  while (true) {
    if (auto len = rho.cf_length(); len && n == *len) {
      if (rho.convergent(n).q <= m) {
        throw OutOfRangeError(to_string(m) + " is not below the last denominator " +
                              to_string(rho.convergent(n).q) + " of " + rho.spec());
      }
      break;
    }
    if (rho.convergent(n + 1).q > m) break;
    ++n;
  }
  std::vector<std::int64_t> digits(n + 1, 0);
  Integer rest = m;
  for (std::size_t i = n + 1; i-- > 0 && rest > 0;) {
    const Integer& q = rho.convergent(i).q;
    Integer b = rest / q;
    digits[i] = to_int64(b);
    rest -= b * q;
  }
  return OstrowskiExpansion::from_digits(rho, std::move(digits));
}

Integer ostrowski_value(const OstrowskiExpansion& expansion) { return expansion.value(); }

Integer ostrowski_value(const RotationNumber& rho, const std::vector<std::int64_t>& digits) {
  return OstrowskiExpansion::from_digits(rho, digits).value();
}

LinearForm ostrowski_sum(const OstrowskiExpansion& expansion) {
  const RotationNumber& rho = expansion.rotation();
  if (rho.is_rational()) throw DomainError("fast summation needs an irrational rotation number");
  LinearForm total;
  const auto& b = expansion.digits();
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == 0) continue;
    const Convergent& c = rho.convergent(k);
    Integer factor = c.q * b[k] + 2 * expansion.partial_before(k) + 1;
    LinearForm term = c.d * factor + LinearForm(alternating(k));
    total += term * make_rational(b[k], 2);
  }
  return total;
}

LinearForm sum_fast(const RotationNumber& rho, const Integer& m) {
  if (rho.is_rational()) throw DomainError("fast summation needs an irrational rotation number");
  return ostrowski_sum(ostrowski_expand(rho, m));
}

LinearForm digit_influence(const OstrowskiExpansion& expansion, std::size_t m, std::int64_t b) {
  OstrowskiExpansion e = [&] {
    try {
      return expansion.with_digit(m, b);
    } catch (const InvalidExpansionError& err) {
      throw InvalidDigitError(err.what());
    }
  }();
  if (b == 0) return LinearForm();
  const RotationNumber& rho = expansion.rotation();
  const Convergent& c = rho.convergent(m);
  LinearForm tail;
  for (std::size_t j = m + 1; j < e.digits().size(); ++j) {
    if (e.digit(j) != 0) tail += rho.convergent(j).d * e.digit(j);
  }
  LinearForm linear = LinearForm(make_rational(alternating(m), 2)) + c.d * e.partial_before(m) +
                      c.d * make_rational(1, 2) + tail * c.q;
  LinearForm quad = c.d * Integer(c.q * b * b) * make_rational(1, 2);
  return quad + linear * Rational(b);
}

LinearForm digit_influence_residual(const OstrowskiExpansion& expansion, std::size_t m, std::int64_t b) {
  OstrowskiExpansion e = expansion.with_digit(m, b);
  return ostrowski_sum(e) - digit_influence(expansion, m, b);
}

std::int64_t maximize_digit(const OstrowskiExpansion& expansion, std::size_t m) {
  if (m % 2 == 0) throw PreconditionError("maximize_digit needs an odd digit index");
  std::int64_t hi = expansion.admissible_max(m);
  if (hi <= 0) return 0;
  const RotationNumber& rho = expansion.rotation();
  // f(b) − f(b − 1) decreases in b (f is concave for odd m); find the last b where it is positive.
  auto gain = [&](std::int64_t b) {
    return digit_influence(expansion, m, b) - digit_influence(expansion, m, b - 1);
  };
  std::int64_t lo = 0;
  std::int64_t top = hi;
  while (lo < top) {
    std::int64_t mid = lo + (top - lo + 1) / 2;
    if (lf_sign(gain(mid), rho) > 0) {
      lo = mid;
    } else {
      top = mid - 1;
    }
  }
  return lo;
}

}  // namespace birkhoff
