#include "birkhoff/linear_form.hpp"

#include "birkhoff/errors.hpp"

namespace birkhoff {

LinearForm& LinearForm::operator/=(const Rational& s) {
  if (sgn(s) == 0) throw PreconditionError("division of a linear form by zero");
  a_ /= s;
  b_ /= s;
  return *this;
}

LinearForm LinearForm::substitute(const LinearForm& image) const {
  return LinearForm(a_) + image * b_;
}

std::string LinearForm::to_string(const std::string& symbol) const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(b_) != 0) {
    if (b_ == 1) {
      out = symbol;
    } else if (b_ == -1) {
      out = "-" + symbol;
    } else {
      out = birkhoff::to_string(b_) + "*" + symbol;
    }
  }
  if (sgn(a_) != 0) {
    if (out.empty()) return birkhoff::to_string(a_);
    out += sgn(a_) < 0 ? " - " : " + ";
    out += birkhoff::to_string(birkhoff::abs(a_));
  }
  return out;
}

LinearForm mul(const LinearForm& u, const LinearForm& v) {
  if (u.is_constant()) return v * u.a();
  if (v.is_constant()) return u * v.a();
  throw DomainError("product of two non-constant linear forms leaves Q + Q*rho");
}

}  // namespace birkhoff
