#include "ordspace/scalar.hpp"

#include <cmath>
#include <cstdio>

#include "ordspace/errors.hpp"

namespace ordspace {

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) throw ModeMismatch("exact and approximate scalars combined");
}

}  // namespace

Scalar Scalar::approx(double x) {
  Scalar s;
  s.mode_ = ScalarMode::Approx;
  s.approx_ = x;
  return s;
}

const Rational& Scalar::exact() const {
  if (mode_ != ScalarMode::Exact) throw ModeMismatch("exact value requested from an approximate scalar");
  return exact_;
}

Scalar Scalar::operator-() const { return is_exact() ? Scalar(Rational(-exact_)) : approx(-approx_); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar(Rational(a.exact_ + b.exact_)) : Scalar::approx(a.approx_ + b.approx_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar(Rational(a.exact_ - b.exact_)) : Scalar::approx(a.approx_ - b.approx_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar(Rational(a.exact_ * b.exact_)) : Scalar::approx(a.approx_ * b.approx_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_exact()) {
    if (b.exact_ == 0) throw PreconditionError("division by zero");
    return Scalar(Rational(a.exact_ / b.exact_));
  }
  return Scalar::approx(a.approx_ / b.approx_);
}

bool Scalar::near(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.exact_ == b.exact_;
  return std::fabs(a.approx_ - b.approx_) <= tol;
}

std::string Scalar::to_string() const {
  if (is_exact()) return ordspace::to_string(exact_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", approx_);
  return buf;
}

Scalar max(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return a.exact() >= b.exact() ? a : b;
  return a.to_double() >= b.to_double() ? a : b;
}

Scalar abs(const Scalar& a) {
  if (a.is_exact()) return Scalar(abs(a.exact()));
  return Scalar::approx(std::fabs(a.to_double()));
}

}  // namespace ordspace
