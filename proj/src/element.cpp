#include "ordspace/element.hpp"

#include "ordspace/errors.hpp"

namespace ordspace {

ComplexElement ComplexElement::hermitian(const QVector& h) { return {h, zeros(h.size())}; }

ComplexElement star(const ComplexElement& v) { return {v.re, negate(v.im)}; }

QVector re_part(const ComplexElement& v) { return v.re; }

QVector im_part(const ComplexElement& v) { return v.im; }

ComplexElement add(const ComplexElement& a, const ComplexElement& b) {
  return {ordspace::add(a.re, b.re), ordspace::add(a.im, b.im)};
}

ComplexElement complex_scale(const Rational& a, const Rational& b, const ComplexElement& v) {
  // (a + ib)(x + iy) = (ax - by) + i(bx + ay)
  QVector re = axpy(scale(a, v.re), -b, v.im);
  QVector im = axpy(scale(b, v.re), a, v.im);
  return {re, im};
}

ComplexElement apply(const QMatrix& map, const ComplexElement& v) {
  for (const auto& row : map) {
    if (row.size() != v.dim()) throw DimensionMismatch("linear map does not match element dimension");
  }
  return {mat_vec(map, v.re), mat_vec(map, v.im)};
}

ComplexValue evaluate(const RealFunctional& f, const ComplexElement& v) { return {f(v.re), f(v.im)}; }

}  // namespace ordspace
