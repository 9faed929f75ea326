#include "ordspace/rational.hpp"

#include <cmath>
#include <limits>
#include <regex>

#include "ordspace/errors.hpp"

namespace ordspace {

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*[-+]?[0-9]+(/[0-9]+)?\s*$)");
  if (!std::regex_match(text, pattern)) {
    throw ParseError("not a rational literal: '" + text + "'");
  }
  std::string body = text;
  body.erase(0, body.find_first_not_of(" \t"));
  body.erase(body.find_last_not_of(" \t") + 1);
  if (!body.empty() && body[0] == '+') body.erase(0, 1);
  Rational q;
  if (q.set_str(body, 10) != 0) throw ParseError("not a rational literal: '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

Rational parse_decimal(const std::string& text) {
  static const std::regex pattern(R"(^\s*([-+]?)([0-9]*)(\.([0-9]*))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern) || (m[2].length() == 0 && m[4].length() == 0)) {
    throw ParseError("not a decimal literal: '" + text + "'");
  }
  std::string digits = m[2].str() + m[4].str();
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(m[4].length()));
  Rational q(num, den);
  q.canonicalize();
  if (m[1] == "-") q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite value has no rational form");
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite value has no rational form");
  // Continued fraction convergents of the exact binary value.
  Rational target = from_double(x);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational rest = target;
  for (int iter = 0; iter < 64; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h2 = a * h1 + h0;
    mpz_class k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  if (k1 == 0) return target;
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

double sqrt_lower(const Rational& q) {
  if (q < 0) throw PreconditionError("square root of a negative value");
  if (q == 0) return 0.0;
  double d = std::sqrt(q.get_d());
  while (d > 0 && Rational(d) * Rational(d) > q) d = std::nextafter(d, 0.0);
  for (;;) {
    double up = std::nextafter(d, std::numeric_limits<double>::infinity());
    if (Rational(up) * Rational(up) <= q) {
      d = up;
    } else {
      break;
    }
  }
  return d;
}

double sqrt_upper(const Rational& q) {
  if (q < 0) throw PreconditionError("square root of a negative value");
  if (q == 0) return 0.0;
  double d = std::sqrt(q.get_d());
  while (Rational(d) * Rational(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  for (;;) {
    double down = std::nextafter(d, 0.0);
    if (down > 0 && Rational(down) * Rational(down) >= q) {
      d = down;
    } else {
      break;
    }
  }
  return d;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

QVector zeros(std::size_t n) { return QVector(n, Rational(0)); }

QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zeros(n);
  v.at(i) = 1;
  return v;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: length mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector sub(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: length mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector scale(const Rational& s, const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

QVector negate(const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

QVector axpy(const QVector& a, const Rational& s, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("axpy: length mismatch");
  QVector r = a;
  if (sgn(s) == 0) return r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) != 0) r[i] += s * b[i];
  }
  return r;
}

bool is_zero(const QVector& a) {
  for (const auto& x : a) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

QVector mat_vec(const QMatrix& m, const QVector& x) {
  QVector r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  QMatrix r(a.size(), zeros(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw DimensionMismatch("mat_mul: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

QMatrix transpose(const QMatrix& m, std::size_t cols) {
  QMatrix t(cols, zeros(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

QMatrix identity(std::size_t n) {
  QMatrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Rref rref(const QMatrix& m, std::size_t cols) {
  QMatrix a = m;
  for (const auto& row : a) {
    if (row.size() != cols) throw DimensionMismatch("rref: ragged matrix");
  }
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

std::size_t rank(const QMatrix& m, std::size_t cols) { return rref(m, cols).pivots.size(); }

QMatrix null_space(const QMatrix& m, std::size_t cols) {
  Rref r = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v = zeros(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const QMatrix& m, std::size_t cols, const QVector& b, QVector& x) {
  if (b.size() != m.size()) throw DimensionMismatch("solve: rhs length mismatch");
  QMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Rref r = rref(aug, cols + 1);
  x = zeros(cols);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.pivots[i] == cols) return false;
    x[r.pivots[i]] = r.rows[i][cols];
  }
  return true;
}

bool in_span(const QMatrix& basis, const QVector& v, std::size_t n, QVector* coeffs) {
  if (v.size() != n) throw DimensionMismatch("in_span: vector length mismatch");
  QMatrix cols_as_rows = transpose(basis, n);  // n x k
  QVector c;
  bool ok = solve(cols_as_rows, basis.size(), v, c);
  if (ok && coeffs) *coeffs = c;
  return ok;
}

std::vector<std::size_t> independent_subset(const QMatrix& vectors, std::size_t n) {
  std::vector<std::size_t> keep;
  QMatrix chosen;
  std::size_t current = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    chosen.push_back(vectors[i]);
    std::size_t r = rank(chosen, n);
    if (r > current) {
      keep.push_back(i);
      current = r;
    } else {
      chosen.pop_back();
    }
  }
  return keep;
}

void normalize_direction(QVector& v) {
  mpz_class l = 1;
  for (const auto& x : v) {
    if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_class num = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return;
  Rational factor(l, g);
  factor.canonicalize();
  for (auto& x : v) {
    if (sgn(x) != 0) x *= factor;
  }
}

}  // namespace ordspace
