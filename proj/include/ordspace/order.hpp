#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordspace/element.hpp"
#include "ordspace/scalar.hpp"
#include "ordspace/space.hpp"

namespace ordspace {

struct AxiomCheck {
  std::string axiom;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  bool valid = false;
  bool pointed = false;
  bool unit_in_cone = false;
  bool order_unit = false;
  bool archimedean = false;
  /// r_i with r_i e +- b_i in the cone, per basis vector (polyhedral spaces).
  std::vector<Rational> unit_radii;
  std::vector<AxiomCheck> checks;
};

/// Evaluates every axiom without throwing.
ValidationReport check_space(const OrderedSpace& v);
/// Same report; throws ValidationError naming the first failed axiom.
ValidationReport validate_space(const OrderedSpace& v);

/// Re + h in the cone for all r > 0 implies h in the cone.
bool is_archimedean(const OrderedSpace& v);

/// alpha = max{r : h - r e in closure}, beta = min{s : s e - h in closure}.
/// Polyhedral endpoints come with the states attaining them.
struct StateInterval {
  Scalar alpha;
  Scalar beta;
  std::optional<RealFunctional> alpha_state;
  std::optional<RealFunctional> beta_state;
};

StateInterval state_interval(const OrderedSpace& v, const QVector& h);
/// max(|alpha|, |beta|).
Scalar order_seminorm(const OrderedSpace& v, const QVector& h);

struct StatePolytope {
  std::vector<RealFunctional> extreme_states;
};

/// Vertices of {f positive, f(e) = 1}. Polyhedral spaces only; cached per space.
StatePolytope state_polytope(const OrderedSpace& v);

/// Vertices of the order-unit ball {h : e +- h in closure} within the
/// orthogonal complement of the closure's lineality space. Cached per space.
QMatrix unit_ball_vertices(const OrderedSpace& v);

bool is_positive_functional(const OrderedSpace& v, const RealFunctional& f, double tol = 1e-9);

struct FunctionalNorm {
  Scalar norm;
  Scalar value_at_unit;
  /// ||f|| = f(e) holds exactly when f is positive.
  bool norm_equals_unit_value = false;
};

FunctionalNorm functional_norm(const OrderedSpace& v, const RealFunctional& f);

struct ExtensionStep {
  QVector direction;
  Rational lower;
  Rational value;
  Rational upper;
};

struct Extension {
  RealFunctional functional;
  std::vector<ExtensionStep> steps;
};

/// Extends f, given by its values on a spanning list for a subspace E that
/// contains the unit, to a positive functional on the whole space. New
/// directions are the standard basis vectors outside E, in index order; each
/// takes the midpoint of its admissible interval.
Extension extend_positive_functional(const OrderedSpace& v, const QMatrix& subspace, const QVector& values);

}  // namespace ordspace
