#pragma once

#include <string>

#include "ordspace/rational.hpp"

namespace ordspace {

enum class ScalarMode { Exact, Approx };

/// A real number tagged with how it was computed. Arithmetic never mixes
/// modes implicitly; use to_approx() to demote an exact value on purpose.
class Scalar {
 public:
  Scalar() : mode_(ScalarMode::Exact), exact_(0), approx_(0.0) {}
  Scalar(const Rational& q) : mode_(ScalarMode::Exact), exact_(q), approx_(q.get_d()) {}  // NOLINT
  static Scalar approx(double x);

  ScalarMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ScalarMode::Exact; }
  /// Throws ModeMismatch for approximate values.
  const Rational& exact() const;
  double to_double() const { return approx_; }
  Scalar to_approx() const { return approx(approx_); }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  /// Exact equality for exact pairs; |a - b| <= tol otherwise.
  static bool near(const Scalar& a, const Scalar& b, double tol);
  /// Decimal text for approximate values, "p/q" for exact ones.
  std::string to_string() const;

 private:
  ScalarMode mode_;
  Rational exact_;
  double approx_;
};

Scalar max(const Scalar& a, const Scalar& b);
Scalar abs(const Scalar& a);

}  // namespace ordspace
