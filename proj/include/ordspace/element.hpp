#pragma once

#include <cstddef>

#include "ordspace/rational.hpp"

namespace ordspace {

/// v = re + i*im with re, im in the hermitian part R^n.
struct ComplexElement {
  QVector re;
  QVector im;

  static ComplexElement hermitian(const QVector& h);
  std::size_t dim() const { return re.size(); }
  bool is_hermitian() const { return is_zero(im); }
  bool operator==(const ComplexElement& other) const = default;
};

ComplexElement star(const ComplexElement& v);
/// (v + v*) / 2
QVector re_part(const ComplexElement& v);
/// (v - v*) / 2i
QVector im_part(const ComplexElement& v);
ComplexElement add(const ComplexElement& a, const ComplexElement& b);
/// (a + ib) * v
ComplexElement complex_scale(const Rational& a, const Rational& b, const ComplexElement& v);
/// Coordinatewise action of a real matrix.
ComplexElement apply(const QMatrix& map, const ComplexElement& v);

/// f(h) = coeffs . h on the hermitian part.
struct RealFunctional {
  QVector coeffs;
  Rational operator()(const QVector& h) const { return dot(coeffs, h); }
};

/// Complexification f(x + iy) = f(x) + i f(y).
struct ComplexValue {
  Rational re;
  Rational im;
  Rational abs_squared() const { return re * re + im * im; }
  bool operator==(const ComplexValue& other) const = default;
};

ComplexValue evaluate(const RealFunctional& f, const ComplexElement& v);

}  // namespace ordspace
