#pragma once

#include <string>

#include "birkhoff/rational.hpp"

namespace birkhoff {

/// The exact value a + b·rho for an implicit ambient rotation number rho.
///
/// Every sum, breakpoint and discrepancy in the library is affine in rho with
/// rational coefficients, so this type is closed under everything we need:
/// addition, subtraction and scaling by rationals. Products of two
/// non-constant forms leave the field and are rejected (see mul()).
///
/// operator== compares coefficients. For irrational rho that is the same as
/// comparing values; over a rational rho use lf_compare().
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  // Implicit so that integer and rational constants mix freely with forms.
  LinearForm(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  LinearForm(const Integer& a) : a_(a) {}       // NOLINT(google-explicit-constructor)
  LinearForm(long a) : a_(a) {}                 // NOLINT(google-explicit-constructor)
  LinearForm(int a) : a_(a) {}                  // NOLINT(google-explicit-constructor)

  /// The generator rho itself.
  static LinearForm rho() { return LinearForm(Rational(0), Rational(1)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_constant() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  LinearForm& operator+=(const LinearForm& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  LinearForm& operator*=(const Rational& s) {
    a_ *= s;
    b_ *= s;
    return *this;
  }
  LinearForm& operator/=(const Rational& s);

  friend LinearForm operator+(LinearForm u, const LinearForm& v) { return u += v; }
  friend LinearForm operator-(LinearForm u, const LinearForm& v) { return u -= v; }
  friend LinearForm operator-(const LinearForm& u) { return LinearForm(-u.a_, -u.b_); }
  friend LinearForm operator*(LinearForm u, const Rational& s) { return u *= s; }
  friend LinearForm operator*(const Rational& s, LinearForm u) { return u *= s; }
  friend LinearForm operator*(LinearForm u, const Integer& s) { return u *= Rational(s); }
  friend LinearForm operator*(const Integer& s, LinearForm u) { return u *= Rational(s); }
  friend LinearForm operator*(LinearForm u, long s) { return u *= Rational(s); }
  friend LinearForm operator*(long s, LinearForm u) { return u *= Rational(s); }
  friend LinearForm operator/(LinearForm u, const Rational& s) { return u /= s; }

  friend bool operator==(const LinearForm& u, const LinearForm& v) {
    return u.a_ == v.a_ && u.b_ == v.b_;
  }

  /// Substitutes rho := image, i.e. returns a + b·image. Used to move a
  /// value between fields whose generators are affinely related.
  LinearForm substitute(const LinearForm& image) const;

  /// Human-readable "a + b*rho" form, e.g. "10*rho - 6".
  std::string to_string(const std::string& symbol = "rho") const;

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Product of two forms; throws DomainError unless one of them is constant.
LinearForm mul(const LinearForm& u, const LinearForm& v);

}  // namespace birkhoff
