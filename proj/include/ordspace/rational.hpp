#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace ordspace {

using Rational = mpq_class;
using QVector = std::vector<Rational>;
/// Row-major; rows()[i] is the i-th row.
using QMatrix = std::vector<QVector>;

/// Accepts "p", "-p", "p/q". Throws ParseError otherwise.
Rational parse_rational(const std::string& text);
/// Accepts integers and plain decimals such as "-0.125"; the value is kept exactly.
Rational parse_decimal(const std::string& text);
/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double x);
/// Best rational approximation with denominator at most max_den.
Rational rationalize(double x, long max_den);

/// Largest double d with d*d <= q (q >= 0).
double sqrt_lower(const Rational& q);
/// Smallest double d with d*d >= q (q >= 0).
double sqrt_upper(const Rational& q);
/// True when q is the square of a rational; root receives the nonnegative root.
bool exact_sqrt(const Rational& q, Rational& root);

Rational abs(const Rational& q);

// Dense exact linear algebra on small matrices.

QVector zeros(std::size_t n);
QVector unit_vector(std::size_t n, std::size_t i);
Rational dot(const QVector& a, const QVector& b);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const Rational& s, const QVector& a);
QVector negate(const QVector& a);
/// a + s*b
QVector axpy(const QVector& a, const Rational& s, const QVector& b);
bool is_zero(const QVector& a);
QVector mat_vec(const QMatrix& m, const QVector& x);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);
QMatrix transpose(const QMatrix& m, std::size_t cols);
QMatrix identity(std::size_t n);

struct Rref {
  QMatrix rows;                     // nonzero rows of the reduced echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};
Rref rref(const QMatrix& m, std::size_t cols);
std::size_t rank(const QMatrix& m, std::size_t cols);
/// Basis of {x : m x = 0}, one vector per free column in increasing order.
QMatrix null_space(const QMatrix& m, std::size_t cols);
/// Some x with m x = b, or false when none exists.
bool solve(const QMatrix& m, std::size_t cols, const QVector& b, QVector& x);
/// Coefficients c with sum_k c[k] * basis[k] = v, or false.
bool in_span(const QMatrix& basis, const QVector& v, std::size_t n, QVector* coeffs = nullptr);
/// Indices of a maximal independent subset, greedy in the given order.
std::vector<std::size_t> independent_subset(const QMatrix& vectors, std::size_t n);
/// Scales to a primitive integer vector with the same direction.
void normalize_direction(QVector& v);

}  // namespace ordspace
