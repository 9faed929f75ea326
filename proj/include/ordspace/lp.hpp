#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ordspace/rational.hpp"

namespace ordspace {

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus s);

/// a . x (= or >=) b
struct LinearRow {
  QVector a;
  Rational b;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  QVector objective;
  bool maximize = true;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;  // a . x >= b
  std::vector<bool> nonnegative;        // empty means every variable is free
};

/// Certificates use the convention below, with E/G the equality/inequality
/// rows and c the objective.
///  Optimal: E^T u + G^T w = c on free variables (>= c for maximize / <= c for
///    minimize on nonnegative ones), w <= 0 when maximizing, w >= 0 when
///    minimizing, and f.u + g.w = value.
///  Infeasible: E^T u + G^T w = 0 on free variables, >= 0 on nonnegative ones,
///    w <= 0, f.u + g.w < 0.
///  Unbounded: witness is a feasible point, ray satisfies E d = 0, G d >= 0,
///    and improves the objective.
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  QVector witness;
  QVector dual_eq;
  QVector dual_ineq;
  QVector ray;
};

/// Exact two-phase simplex with Bland's rule. Every result is re-checked
/// against its certificate before it is returned.
LPResult solve(const LinearProgram& lp);

/// Standard form: maximize c.x subject to A x = b, x >= 0.
/// Columns may be appended after an optimal solve; the next solve() resumes
/// from the current basis, which is the usual column-generation loop.
class StandardSimplex {
 public:
  StandardSimplex(std::size_t rows, QVector rhs);

  std::size_t add_column(const QVector& column, const Rational& cost);
  LPStatus solve();

  std::size_t rows() const { return m_; }
  std::size_t columns() const { return cols_.size(); }
  Rational value() const;
  QVector primal() const;
  /// y with A^T y >= c and b.y = value (after Optimal).
  QVector dual() const;
  /// y with A^T y >= 0 and b.y < 0 (after Infeasible).
  QVector farkas() const { return farkas_; }
  /// d >= 0 with A d = 0 and c.d > 0 (after Unbounded).
  QVector ray() const { return ray_; }
  std::size_t pivots() const { return pivots_; }

 private:
  void initialize();
  void pivot(std::size_t row, std::size_t col);
  void compute_phase2_costs();
  LPStatus run_phase(bool phase_one);
  QVector tableau_column(const QVector& column) const;

  std::size_t m_;
  QVector b_;
  std::vector<int> sign_;
  QMatrix cols_;
  QVector costs_;

  bool initialized_ = false;
  bool phase_two_ = false;
  QMatrix t_;  // m_ rows, m_ artificial columns then user columns
  QVector rhs_;
  QVector d_;  // reduced costs over all tableau columns
  std::vector<std::size_t> basis_;
  QVector farkas_;
  QVector ray_;
  std::size_t pivots_ = 0;
};

/// {x : a.x >= b for inequalities, a.x = b for equalities}
struct Polyhedron {
  std::size_t n = 0;
  std::vector<LinearRow> inequalities;
  std::vector<LinearRow> equalities;
};

struct VertexEnumeration {
  std::vector<QVector> vertices;
  bool bounded = true;
  QVector recession_direction;  // set when unbounded
};

/// Enumerates vertices exactly. Dimension is capped at 8.
VertexEnumeration enumerate_vertices(const Polyhedron& p);
/// Same, but throws PreconditionError when the polyhedron is unbounded.
std::vector<QVector> vertices(const Polyhedron& p);

constexpr std::size_t kEnumerationDimensionCap = 8;

/// Approximate infimum of {t in [lo, hi] : pred(t)} for a monotone predicate
/// (false below the threshold, true above). Returns hi-side bracket end.
double infimum_by_bisection(const std::function<bool(double)>& pred, double lo, double hi, double tol);

}  // namespace ordspace
