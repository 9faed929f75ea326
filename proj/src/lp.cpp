#include "ordspace/lp.hpp"

#include <algorithm>
#include <string>

#include "ordspace/errors.hpp"
#include "ordspace/rays.hpp"

namespace ordspace {

const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal:
      return "optimal";
    case LPStatus::Infeasible:
      return "infeasible";
    case LPStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

StandardSimplex::StandardSimplex(std::size_t rows, QVector rhs) : m_(rows), b_(std::move(rhs)) {
  if (b_.size() != m_) throw DimensionMismatch("simplex: rhs length differs from row count");
}

std::size_t StandardSimplex::add_column(const QVector& column, const Rational& cost) {
  if (column.size() != m_) throw DimensionMismatch("simplex: column length differs from row count");
  cols_.push_back(column);
  costs_.push_back(cost);
  if (initialized_) {
    QVector tc = tableau_column(column);
    Rational d = phase_two_ ? cost : Rational(0);
    for (std::size_t i = 0; i < m_; ++i) {
      t_[i].push_back(tc[i]);
      if (sgn(tc[i]) == 0) continue;
      if (phase_two_) {
        if (basis_[i] >= m_) d -= costs_[basis_[i] - m_] * tc[i];
      } else if (basis_[i] < m_) {
        d += tc[i];
      }
    }
    d_.push_back(d);
  }
  return cols_.size() - 1;
}

QVector StandardSimplex::tableau_column(const QVector& column) const {
  QVector tc = zeros(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    if (sgn(column[k]) == 0) continue;
    Rational a = sign_[k] > 0 ? column[k] : Rational(-column[k]);
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(t_[i][k]) != 0) tc[i] += t_[i][k] * a;
    }
  }
  return tc;
}

void StandardSimplex::initialize() {
  const std::size_t total = m_ + cols_.size();
  sign_.assign(m_, 1);
  t_.assign(m_, zeros(total));
  rhs_ = zeros(m_);
  basis_.resize(m_);
  d_ = zeros(total);
  for (std::size_t i = 0; i < m_; ++i) {
    sign_[i] = b_[i] < 0 ? -1 : 1;
    rhs_[i] = sign_[i] > 0 ? b_[i] : Rational(-b_[i]);
    t_[i][i] = 1;
    basis_[i] = i;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      const Rational& a = cols_[j][i];
      if (sgn(a) == 0) continue;
      t_[i][m_ + j] = sign_[i] > 0 ? a : Rational(-a);
      d_[m_ + j] += t_[i][m_ + j];
    }
  }
  initialized_ = true;
}

void StandardSimplex::pivot(std::size_t row, std::size_t col) {
  const std::size_t total = t_[row].size();
  Rational inv = 1 / t_[row][col];
  for (std::size_t j = 0; j < total; ++j) {
    if (sgn(t_[row][j]) != 0) t_[row][j] *= inv;
  }
  rhs_[row] *= inv;
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < total; ++j) {
    if (sgn(t_[row][j]) != 0) nz.push_back(j);
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == row || sgn(t_[i][col]) == 0) continue;
    Rational f = t_[i][col];
    for (auto j : nz) t_[i][j] -= f * t_[row][j];
    rhs_[i] -= f * rhs_[row];
  }
  if (sgn(d_[col]) != 0) {
    Rational f = d_[col];
    for (auto j : nz) d_[j] -= f * t_[row][j];
  }
  basis_[row] = col;
  ++pivots_;
}

void StandardSimplex::compute_phase2_costs() {
  const std::size_t total = m_ + cols_.size();
  d_ = zeros(total);
  for (std::size_t j = 0; j < cols_.size(); ++j) d_[m_ + j] = costs_[j];
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < m_) continue;
    const Rational& cb = costs_[basis_[i] - m_];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < total; ++j) {
      if (sgn(t_[i][j]) != 0) d_[j] -= cb * t_[i][j];
    }
  }
}

LPStatus StandardSimplex::run_phase(bool phase_one) {
  const std::size_t guard = 100000;
  for (std::size_t iter = 0; iter < guard; ++iter) {
    const std::size_t total = m_ + cols_.size();
    std::size_t enter = total;
    for (std::size_t j = m_; j < total; ++j) {
      if (sgn(d_[j]) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == total) return LPStatus::Optimal;

    std::size_t leave = m_;
    Rational best;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& a = t_[i][enter];
      Rational ratio;
      if (!phase_one && basis_[i] < m_ && sgn(a) != 0) {
        ratio = 0;  // a redundant row must keep its artificial at zero
      } else if (sgn(a) > 0) {
        ratio = rhs_[i] / a;
      } else {
        continue;
      }
      if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m_) {
      ray_ = zeros(cols_.size());
      ray_[enter - m_] = 1;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= m_) ray_[basis_[i] - m_] = -t_[i][enter];
      }
      return LPStatus::Unbounded;
    }
    pivot(leave, enter);
  }
  throw InternalError("simplex iteration guard exceeded");
}

LPStatus StandardSimplex::solve() {
  if (!initialized_) initialize();
  if (!phase_two_) {
    run_phase(true);
    Rational infeas = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < m_) infeas += rhs_[i];
    }
    if (sgn(infeas) > 0) {
      farkas_ = zeros(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        Rational y = -1 - d_[i];
        farkas_[i] = sign_[i] > 0 ? y : Rational(-y);
      }
      return LPStatus::Infeasible;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= m_) continue;
      for (std::size_t j = m_; j < m_ + cols_.size(); ++j) {
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    phase_two_ = true;
    compute_phase2_costs();
  }
  return run_phase(false);
}

Rational StandardSimplex::value() const {
  Rational v = 0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] >= m_) v += costs_[basis_[i] - m_] * rhs_[i];
  }
  return v;
}

QVector StandardSimplex::primal() const {
  QVector x = zeros(cols_.size());
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] >= m_) x[basis_[i] - m_] = rhs_[i];
  }
  return x;
}

QVector StandardSimplex::dual() const {
  QVector y = zeros(m_);
  for (std::size_t i = 0; i < m_; ++i) y[i] = sign_[i] > 0 ? Rational(-d_[i]) : d_[i];
  return y;
}

namespace {

void verify_result(const LinearProgram& lp, const LPResult& r) {
  const std::size_t n = lp.num_vars;
  auto nonneg = [&](std::size_t j) { return !lp.nonnegative.empty() && lp.nonnegative[j]; };
  auto fail = [](const std::string& what) { throw InternalError("LP certificate check failed: " + what); };

  auto dual_combination = [&]() {
    QVector s = zeros(n);
    for (std::size_t i = 0; i < lp.equalities.size(); ++i) s = axpy(s, r.dual_eq[i], lp.equalities[i].a);
    for (std::size_t i = 0; i < lp.inequalities.size(); ++i) s = axpy(s, r.dual_ineq[i], lp.inequalities[i].a);
    return s;
  };
  auto dual_value = [&]() {
    Rational v = 0;
    for (std::size_t i = 0; i < lp.equalities.size(); ++i) v += r.dual_eq[i] * lp.equalities[i].b;
    for (std::size_t i = 0; i < lp.inequalities.size(); ++i) v += r.dual_ineq[i] * lp.inequalities[i].b;
    return v;
  };
  auto check_primal = [&](const QVector& x) {
    for (const auto& row : lp.equalities) {
      if (dot(row.a, x) != row.b) fail("equality violated");
    }
    for (const auto& row : lp.inequalities) {
      if (dot(row.a, x) < row.b) fail("inequality violated");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (nonneg(j) && x[j] < 0) fail("sign constraint violated");
    }
  };

  if (r.status == LPStatus::Optimal) {
    check_primal(r.witness);
    if (dot(lp.objective, r.witness) != r.value) fail("objective value");
    QVector s = dual_combination();
    for (std::size_t j = 0; j < n; ++j) {
      if (nonneg(j)) {
        if (lp.maximize ? s[j] < lp.objective[j] : s[j] > lp.objective[j]) fail("dual feasibility");
      } else if (s[j] != lp.objective[j]) {
        fail("dual equality");
      }
    }
    for (const auto& w : r.dual_ineq) {
      if (lp.maximize ? w > 0 : w < 0) fail("dual sign");
    }
    if (dual_value() != r.value) fail("duality gap");
  } else if (r.status == LPStatus::Infeasible) {
    QVector s = dual_combination();
    for (std::size_t j = 0; j < n; ++j) {
      if (nonneg(j) ? s[j] < 0 : sgn(s[j]) != 0) fail("Farkas combination");
    }
    for (const auto& w : r.dual_ineq) {
      if (w > 0) fail("Farkas sign");
    }
    if (dual_value() >= 0) fail("Farkas value");
  } else {
    check_primal(r.witness);
    for (const auto& row : lp.equalities) {
      if (sgn(dot(row.a, r.ray)) != 0) fail("ray leaves equalities");
    }
    for (const auto& row : lp.inequalities) {
      if (dot(row.a, r.ray) < 0) fail("ray leaves inequalities");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (nonneg(j) && r.ray[j] < 0) fail("ray sign");
    }
    Rational gain = dot(lp.objective, r.ray);
    if (lp.maximize ? gain <= 0 : gain >= 0) fail("ray does not improve");
  }
}

}  // namespace

LPResult solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw DimensionMismatch("LP objective length differs from variable count");
  if (!lp.nonnegative.empty() && lp.nonnegative.size() != n) {
    throw DimensionMismatch("LP sign vector length differs from variable count");
  }
  for (const auto& r : lp.equalities) {
    if (r.a.size() != n) throw DimensionMismatch("LP equality row length");
  }
  for (const auto& r : lp.inequalities) {
    if (r.a.size() != n) throw DimensionMismatch("LP inequality row length");
  }
  const std::size_t me = lp.equalities.size();
  const std::size_t m = me + lp.inequalities.size();

  QVector rhs(m);
  for (std::size_t i = 0; i < me; ++i) rhs[i] = lp.equalities[i].b;
  for (std::size_t i = me; i < m; ++i) rhs[i] = lp.inequalities[i - me].b;
  StandardSimplex sx(m, rhs);

  auto row_entry = [&](std::size_t i, std::size_t j) -> const Rational& {
    return i < me ? lp.equalities[i].a[j] : lp.inequalities[i - me].a[j];
  };
  // pos[j]/neg[j] are the standard-form columns carrying x_j = x+ - x-.
  std::vector<std::size_t> pos(n), neg(n, SIZE_MAX);
  for (std::size_t j = 0; j < n; ++j) {
    QVector col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = row_entry(i, j);
    Rational c = lp.maximize ? lp.objective[j] : Rational(-lp.objective[j]);
    pos[j] = sx.add_column(col, c);
    if (lp.nonnegative.empty() || !lp.nonnegative[j]) neg[j] = sx.add_column(negate(col), -c);
  }
  for (std::size_t i = me; i < m; ++i) {
    QVector col = zeros(m);
    col[i] = -1;
    sx.add_column(col, 0);
  }

  LPResult r;
  r.status = sx.solve();
  auto recover = [&](const QVector& z) {
    QVector x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = z[pos[j]];
      if (neg[j] != SIZE_MAX) x[j] -= z[neg[j]];
    }
    return x;
  };
  auto split = [&](const QVector& y) {
    r.dual_eq.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(me));
    r.dual_ineq.assign(y.begin() + static_cast<std::ptrdiff_t>(me), y.end());
  };

  if (r.status == LPStatus::Optimal) {
    r.witness = recover(sx.primal());
    r.value = lp.maximize ? sx.value() : Rational(-sx.value());
    QVector y = sx.dual();
    if (!lp.maximize) y = negate(y);
    split(y);
  } else if (r.status == LPStatus::Infeasible) {
    split(sx.farkas());
  } else {
    r.witness = recover(sx.primal());
    r.ray = recover(sx.ray());
  }
  verify_result(lp, r);
  return r;
}

VertexEnumeration enumerate_vertices(const Polyhedron& p) {
  const std::size_t n = p.n;
  if (n > kEnumerationDimensionCap) {
    throw CapabilityError("vertex enumeration is limited to dimension " + std::to_string(kEnumerationDimensionCap));
  }
  QMatrix ineq, eq;
  for (const auto& row : p.inequalities) {
    if (row.a.size() != n) throw DimensionMismatch("polyhedron row length");
    QVector h = row.a;
    h.push_back(-row.b);
    ineq.push_back(std::move(h));
  }
  for (const auto& row : p.equalities) {
    if (row.a.size() != n) throw DimensionMismatch("polyhedron row length");
    QVector h = row.a;
    h.push_back(-row.b);
    eq.push_back(std::move(h));
  }
  ineq.push_back(unit_vector(n + 1, n));
  RayEnumeration rays = enumerate_rays(ineq, eq, n + 1);

  VertexEnumeration out;
  if (!rays.lineality.empty()) {
    out.bounded = false;
    out.recession_direction.assign(rays.lineality[0].begin(), rays.lineality[0].end() - 1);
  }
  for (const auto& r : rays.rays) {
    QVector x(r.begin(), r.end() - 1);
    if (sgn(r[n]) == 0) {
      if (out.bounded) {
        out.bounded = false;
        out.recession_direction = x;
      }
      continue;
    }
    out.vertices.push_back(scale(1 / r[n], x));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  return out;
}

std::vector<QVector> vertices(const Polyhedron& p) {
  VertexEnumeration e = enumerate_vertices(p);
  if (!e.bounded) throw PreconditionError("polyhedron is unbounded");
  return e.vertices;
}

double infimum_by_bisection(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
  if (!(tol > 0)) throw PreconditionError("bisection tolerance must be positive");
  if (!pred(hi)) throw PreconditionError("bisection upper end does not satisfy the predicate");
  if (pred(lo)) return lo;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace ordspace
