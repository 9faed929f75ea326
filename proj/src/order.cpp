#include "ordspace/order.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ordspace/errors.hpp"
#include "ordspace/lp.hpp"
#include "ordspace/psd.hpp"
#include "space_cache.hpp"

namespace ordspace {

namespace {

const QMatrix& closure_rows(const OrderedSpace& v) { return v.cone.geometry().rows; }

/// min r with r e - h and r e + h in the closure; nullopt when no r works.
std::optional<Rational> unit_radius(const OrderedSpace& v, const QVector& h) {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(1)};
  lp.maximize = false;
  for (const auto& a : closure_rows(v)) {
    Rational ae = dot(a, v.unit);
    Rational ah = dot(a, h);
    lp.inequalities.push_back({{ae}, ah});
    lp.inequalities.push_back({{ae}, -ah});
  }
  LPResult r = solve(lp);
  if (r.status != LPStatus::Optimal) return std::nullopt;
  return r.value;
}

}  // namespace

ValidationReport check_space(const OrderedSpace& v) {
  ValidationReport rep;
  const std::size_t n = v.dim();
  if (v.unit.size() != n) throw DimensionMismatch("unit length differs from cone dimension");

  rep.pointed = is_pointed(v.cone);
  rep.checks.push_back({"pointed", rep.pointed, rep.pointed ? "cone meets its negative only at 0"
                                                            : "cone contains a line"});

  rep.unit_in_cone = member(v.cone, v.unit, v.tol);
  rep.checks.push_back({"unit_positive", rep.unit_in_cone, rep.unit_in_cone ? "e lies in the cone"
                                                                          : "e is not in the cone"});

  if (v.is_polyhedral()) {
    rep.order_unit = true;
    std::string detail = "every basis vector is dominated by a multiple of e";
    for (std::size_t i = 0; i < n && rep.order_unit; ++i) {
      QVector b = unit_vector(n, i);
      auto r = unit_radius(v, b);
      if (!r) {
        rep.order_unit = false;
        detail = "no multiple of e dominates +-b" + std::to_string(i + 1);
        break;
      }
      Rational radius = *r < 0 ? Rational(0) : *r;
      if (v.cone.has_strict_rows()) {
        // The closure bound is not attained in a strict cone; step past it.
        Rational probe = radius + 1;
        bool ok = member(v.cone, axpy(b, probe, v.unit)) && member(v.cone, axpy(negate(b), probe, v.unit));
        if (!ok) {
          rep.order_unit = false;
          detail = "r e +- b" + std::to_string(i + 1) + " leaves the cone beyond the closure radius";
          break;
        }
        radius = probe;
      }
      rep.unit_radii.push_back(radius);
    }
    rep.checks.push_back({"order_unit", rep.order_unit, detail});
  } else {
    double lmin = min_eigenvalue(v.unit, v.cone.matrix_size());
    rep.order_unit = lmin > v.tol;
    rep.checks.push_back({"order_unit", rep.order_unit, rep.order_unit ? "e is positive definite"
                                                                      : "e is not positive definite"});
  }

  rep.valid = rep.pointed && rep.unit_in_cone && rep.order_unit;
  rep.archimedean = rep.valid && is_archimedean(v);
  return rep;
}

ValidationReport validate_space(const OrderedSpace& v) {
  ValidationReport rep = check_space(v);
  for (const auto& c : rep.checks) {
    if (!c.ok) throw ValidationError(c.axiom, c.detail);
  }
  return rep;
}

bool is_archimedean(const OrderedSpace& v) { return is_closed(v.cone); }

StateInterval state_interval(const OrderedSpace& v, const QVector& h) {
  require_hermitian(v, h);
  StateInterval out;
  if (!v.is_polyhedral()) {
    const std::size_t d = v.cone.matrix_size();
    // Generalized eigenvalues against e; e = I in the standard setup.
    Eigen::MatrixXcd e = hermitian_matrix(v.unit, d);
    Eigen::LLT<Eigen::MatrixXcd> llt(e);
    if (llt.info() != Eigen::Success) throw PreconditionError("unit is not positive definite");
    Eigen::MatrixXcd linv = llt.matrixL().solve(Eigen::MatrixXcd::Identity(e.rows(), e.cols()));
    Eigen::MatrixXcd m = linv * hermitian_matrix(h, d) * linv.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    out.alpha = Scalar::approx(gs.eigenvalues().minCoeff());
    out.beta = Scalar::approx(gs.eigenvalues().maxCoeff());
    return out;
  }
  const QMatrix& rows = closure_rows(v);
  // alpha: max r s.t. a.h - r a.e >= 0.
  LinearProgram lo;
  lo.num_vars = 1;
  lo.objective = {Rational(1)};
  lo.maximize = true;
  // beta: min s s.t. s a.e - a.h >= 0.
  LinearProgram hi = lo;
  hi.maximize = false;
  for (const auto& a : rows) {
    Rational ae = dot(a, v.unit);
    Rational ah = dot(a, h);
    lo.inequalities.push_back({{-ae}, -ah});
    hi.inequalities.push_back({{ae}, ah});
  }
  LPResult rl = solve(lo);
  LPResult rh = solve(hi);
  if (rl.status != LPStatus::Optimal || rh.status != LPStatus::Optimal) {
    throw PreconditionError("state interval is unbounded; the unit is not an order unit");
  }
  QVector fl = zeros(v.dim()), fh = zeros(v.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    fl = axpy(fl, -rl.dual_ineq[i], rows[i]);
    fh = axpy(fh, rh.dual_ineq[i], rows[i]);
  }
  out.alpha = Scalar(rl.value);
  out.beta = Scalar(rh.value);
  out.alpha_state = RealFunctional{fl};
  out.beta_state = RealFunctional{fh};
  return out;
}

Scalar order_seminorm(const OrderedSpace& v, const QVector& h) {
  StateInterval s = state_interval(v, h);
  return max(abs(s.alpha), abs(s.beta));
}

namespace {

StatePolytope compute_states(const OrderedSpace& v) {
  Polyhedron p;
  p.n = v.dim();
  for (const auto& g : generators(v.cone)) p.inequalities.push_back({g, 0});
  p.equalities.push_back({v.unit, 1});
  VertexEnumeration e = enumerate_vertices(p);
  if (!e.bounded) throw PreconditionError("state space is unbounded; the unit is not an order unit");
  StatePolytope s;
  for (auto& f : e.vertices) s.extreme_states.push_back({std::move(f)});
  return s;
}

QMatrix compute_ball(const OrderedSpace& v) {
  Polyhedron p;
  p.n = v.dim();
  for (const auto& a : closure_rows(v)) {
    Rational ae = dot(a, v.unit);
    p.inequalities.push_back({a, -ae});
    p.inequalities.push_back({negate(a), -ae});
  }
  for (const auto& l : v.cone.geometry().lineality) p.equalities.push_back({l, 0});
  VertexEnumeration e = enumerate_vertices(p);
  if (!e.bounded) throw PreconditionError("unit ball is unbounded; the unit is not an order unit");
  return e.vertices;
}

template <class T, class F>
T cached(const OrderedSpace& v, std::optional<T> SpaceCache::*slot, F compute) {
  if (!v.cache) return compute(v);
  SpaceCache& c = *v.cache;
  {
    std::lock_guard<std::mutex> lock(c.mu);
    c.sync(v);
    if (c.*slot) return *(c.*slot);
  }
  T value = compute(v);
  std::lock_guard<std::mutex> lock(c.mu);
  c.sync(v);
  c.*slot = value;
  return value;
}

}  // namespace

StatePolytope state_polytope(const OrderedSpace& v) {
  if (!v.is_polyhedral()) throw CapabilityError("state enumeration needs a polyhedral cone");
  return cached(v, &SpaceCache::states, compute_states);
}

QMatrix unit_ball_vertices(const OrderedSpace& v) {
  if (!v.is_polyhedral()) throw CapabilityError("unit ball enumeration needs a polyhedral cone");
  return cached(v, &SpaceCache::ball, compute_ball);
}

bool is_positive_functional(const OrderedSpace& v, const RealFunctional& f, double tol) {
  if (f.coeffs.size() != v.dim()) throw DimensionMismatch("functional length differs from dimension");
  if (!v.is_polyhedral()) {
    ComplexMatrixQ m = representing_matrix(f.coeffs, v.cone.matrix_size());
    if (is_psd_exact(m)) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
  }
  for (const auto& g : generators(v.cone)) {
    if (f(g) < 0) return false;
  }
  return true;
}

FunctionalNorm functional_norm(const OrderedSpace& v, const RealFunctional& f) {
  if (f.coeffs.size() != v.dim()) throw DimensionMismatch("functional length differs from dimension");
  FunctionalNorm out;
  if (!v.is_polyhedral()) {
    ComplexMatrixQ m = representing_matrix(f.coeffs, v.cone.matrix_size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    double trace_norm = es.eigenvalues().cwiseAbs().sum();
    double at_unit = f(v.unit).get_d();
    out.norm = Scalar::approx(trace_norm);
    out.value_at_unit = Scalar::approx(at_unit);
    out.norm_equals_unit_value = std::fabs(trace_norm - at_unit) <= 1e-9 * std::max(1.0, trace_norm);
    return out;
  }
  for (const auto& l : v.cone.geometry().lineality) {
    if (sgn(f(l)) != 0) throw PreconditionError("functional is unbounded on the order seminorm ball");
  }
  Rational best = 0;
  for (const auto& b : unit_ball_vertices(v)) {
    Rational x = abs(f(b));
    if (x > best) best = x;
  }
  out.norm = Scalar(best);
  out.value_at_unit = Scalar(f(v.unit));
  out.norm_equals_unit_value = best == f(v.unit);
  return out;
}

Extension extend_positive_functional(const OrderedSpace& v, const QMatrix& subspace, const QVector& values) {
  if (!v.is_polyhedral()) throw CapabilityError("functional extension needs a polyhedral cone");
  const std::size_t n = v.dim();
  if (subspace.size() != values.size()) throw DimensionMismatch("one value is needed per spanning vector");
  for (const auto& b : subspace) {
    if (b.size() != n) throw DimensionMismatch("spanning vector length differs from dimension");
  }

  QMatrix basis;
  QVector vals;
  for (std::size_t i : independent_subset(subspace, n)) {
    basis.push_back(subspace[i]);
    vals.push_back(values[i]);
  }
  for (std::size_t i = 0; i < subspace.size(); ++i) {
    QVector c;
    in_span(basis, subspace[i], n, &c);
    if (dot(c, vals) != values[i]) throw PreconditionError("values are not linear on the given vectors");
  }
  if (!in_span(basis, v.unit, n)) throw PreconditionError("the unit is not in the subspace");

  const QMatrix& rows = closure_rows(v);
  // f(z) for z = sum c_k basis_k is c . vals.
  auto lp_over_subspace = [&](bool maximize) {
    LinearProgram lp;
    lp.num_vars = basis.size();
    lp.objective = vals;
    lp.maximize = maximize;
    return lp;
  };
  auto image = [&](const QVector& a) {
    QVector r(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) r[k] = dot(a, basis[k]);
    return r;
  };

  {
    // min f(z) over z in E ∩ closure with e - z in the closure.
    LinearProgram lp = lp_over_subspace(false);
    for (const auto& a : rows) {
      QVector ai = image(a);
      lp.inequalities.push_back({ai, 0});
      lp.inequalities.push_back({negate(ai), -dot(a, v.unit)});
    }
    LPResult r = solve(lp);
    if (r.status != LPStatus::Optimal || r.value < 0) {
      throw PreconditionError("functional is not positive on the subspace");
    }
  }

  Extension out;
  for (std::size_t i = 0; i < n; ++i) {
    QVector h = unit_vector(n, i);
    if (in_span(basis, h, n)) continue;
    LinearProgram lower = lp_over_subspace(true);   // z <= h
    LinearProgram upper = lp_over_subspace(false);  // z >= h
    for (const auto& a : rows) {
      QVector ai = image(a);
      Rational ah = dot(a, h);
      lower.inequalities.push_back({negate(ai), -ah});
      upper.inequalities.push_back({ai, ah});
    }
    LPResult rl = solve(lower);
    LPResult ru = solve(upper);
    if (rl.status != LPStatus::Optimal || ru.status != LPStatus::Optimal) {
      throw InternalError("extension interval is not finite");
    }
    if (rl.value > ru.value) throw InternalError("extension interval is empty");
    Rational gamma = (rl.value + ru.value) / 2;
    out.steps.push_back({h, rl.value, gamma, ru.value});
    basis.push_back(h);
    vals.push_back(gamma);
  }

  QVector coeffs;
  if (!solve(basis, n, vals, coeffs)) throw InternalError("extended values are inconsistent");
  out.functional = RealFunctional{coeffs};
  for (std::size_t i = 0; i < subspace.size(); ++i) {
    if (out.functional(subspace[i]) != values[i]) throw InternalError("extension does not restrict to f");
  }
  if (!is_positive_functional(v, out.functional)) throw InternalError("extension is not positive");
  return out;
}

}  // namespace ordspace
