#include <gtest/gtest.h>

#include "ordspace/errors.hpp"
#include "ordspace/lp.hpp"
#include "ordspace/order.hpp"
#include "ordspace/psd.hpp"
#include "support/fixtures.hpp"

using namespace ordspace;
using namespace ordspace::testing;

namespace {

Rational max_abs(const QVector& h) {
  Rational m = 0;
  for (const auto& x : h) m = std::max(m, abs(x));
  return m;
}

/// Seminorm from the definition on a closed H-cone: the least r with
/// a.(r e +- h) >= 0 on every row, i.e. max |a.h| / a.e.
Rational seminorm_by_rows(const QMatrix& rows, const QVector& e, const QVector& h) {
  Rational r = 0;
  for (const auto& a : rows) r = std::max(r, Rational(abs(dot(a, h)) / dot(a, e)));
  return r;
}

}  // namespace

TEST(Validate, OrthantIsValidAndArchimedean) {
  ValidationReport r = validate_space(orthant(2));
  EXPECT_TRUE(r.valid);
  EXPECT_TRUE(r.archimedean);
  EXPECT_EQ(r.unit_radii, (std::vector<Rational>{1, 1}));
}

TEST(Validate, BoundaryUnitFailsOrderUnitAxiom) {
  OrderedSpace v = OrderedSpace::make(orthant_cone(2), qv({1, 0}));
  ValidationReport r = check_space(v);
  EXPECT_FALSE(r.valid);
  EXPECT_TRUE(r.unit_in_cone);
  EXPECT_FALSE(r.order_unit);
  try {
    validate_space(v);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.axiom(), "order_unit");
  }
}

TEST(Validate, ClosedHalfplaneIsNotPointed) {
  OrderedSpace v = OrderedSpace::make(ConeSpec::polyhedral_h(2, {{qv({1, 0}), false}}), qv({1, 0}));
  ValidationReport r = check_space(v);
  EXPECT_FALSE(r.pointed);
  EXPECT_FALSE(r.valid);
}

TEST(Validate, OpenQuadrantValidButNotArchimedean) {
  OrderedSpace v = open_quadrant();
  ValidationReport r = validate_space(v);
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(r.archimedean);
  EXPECT_FALSE(is_archimedean(v));
  EXPECT_TRUE(is_archimedean(orthant(3)));
  EXPECT_TRUE(validate_space(open_halfplane()).valid);
}

TEST(Validate, MatrixSpace) {
  ValidationReport r = validate_space(matrix_space(2));
  EXPECT_TRUE(r.valid);
  EXPECT_TRUE(r.archimedean);
}

TEST(StateInterval, OrthantMatchesCoordinates) {
  OrderedSpace v = orthant(2);
  StateInterval s = state_interval(v, qv({3, -1}));
  EXPECT_EQ(s.alpha.exact(), -1);
  EXPECT_EQ(s.beta.exact(), 3);
  ASSERT_TRUE(s.alpha_state && s.beta_state);
  EXPECT_EQ((*s.alpha_state)(qv({3, -1})), -1);
  EXPECT_EQ((*s.beta_state)(v.unit), 1);
  EXPECT_EQ(order_seminorm(v, qv({3, -1})).exact(), 3);
}

TEST(StateInterval, MatrixSpaceUsesEigenvalues) {
  OrderedSpace v = matrix_space(2);
  StateInterval s = state_interval(v, qv({2, -1, 0, 0}));
  EXPECT_FALSE(s.alpha.is_exact());
  EXPECT_NEAR(s.alpha.to_double(), -1.0, 1e-12);
  EXPECT_NEAR(s.beta.to_double(), 2.0, 1e-12);
}

TEST(StateInterval, RandomSpacesAgreeWithRowFormulaAndStates) {
  RandomSpaces gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    const QMatrix& rows = v.cone.geometry().rows;
    StatePolytope states = state_polytope(v);
    for (const auto& f : states.extreme_states) {
      EXPECT_TRUE(is_positive_functional(v, f));
      EXPECT_EQ(f(v.unit), 1);
    }
    for (int s = 0; s < 5; ++s) {
      QVector h = gen.vector(n, -5, 5);
      Rational norm = order_seminorm(v, h).exact();
      EXPECT_EQ(norm, seminorm_by_rows(rows, v.unit, h));
      Rational by_states = 0;
      for (const auto& f : states.extreme_states) by_states = std::max(by_states, abs(f(h)));
      EXPECT_EQ(norm, by_states);
      StateInterval si = state_interval(v, h);
      EXPECT_TRUE(is_positive_functional(v, *si.alpha_state));
      EXPECT_TRUE(is_positive_functional(v, *si.beta_state));
    }
  }
}

TEST(StatePolytope, OrthantStatesAreCoordinateFunctionals) {
  StatePolytope s = state_polytope(orthant(3));
  ASSERT_EQ(s.extreme_states.size(), 3u);
  for (const auto& f : s.extreme_states) EXPECT_EQ(max_abs(f.coeffs), 1);
}

TEST(UnitBall, OrthantBallIsTheCube) {
  QMatrix b = unit_ball_vertices(orthant(2));
  EXPECT_EQ(b.size(), 4u);
  for (const auto& x : b) EXPECT_EQ(max_abs(x), 1);
}

TEST(FunctionalNorm, PositivityMatchesNormAtUnit) {
  OrderedSpace v = orthant(2);
  FunctionalNorm pos = functional_norm(v, {qv({2, 1})});
  EXPECT_EQ(pos.norm.exact(), 3);
  EXPECT_TRUE(pos.norm_equals_unit_value);
  FunctionalNorm neg = functional_norm(v, {qv({1, -1})});
  EXPECT_EQ(neg.norm.exact(), 2);
  EXPECT_FALSE(neg.norm_equals_unit_value);
  EXPECT_FALSE(is_positive_functional(v, {qv({1, -1})}));
}

TEST(FunctionalNorm, RandomFunctionalsPositiveIffNormIsValueAtUnit) {
  RandomSpaces gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    for (int s = 0; s < 6; ++s) {
      RealFunctional f{gen.vector(n, -2, 3)};
      EXPECT_EQ(is_positive_functional(v, f), functional_norm(v, f).norm_equals_unit_value);
    }
  }
}

TEST(Extension, StateOnUnitLineExtends) {
  OrderedSpace v = orthant(3);
  Extension ext = extend_positive_functional(v, {v.unit}, {Rational(1)});
  EXPECT_TRUE(is_positive_functional(v, ext.functional));
  EXPECT_EQ(ext.functional(v.unit), 1);
  EXPECT_EQ(ext.steps.size(), 2u);
  for (const auto& st : ext.steps) {
    EXPECT_LE(st.lower, st.value);
    EXPECT_LE(st.value, st.upper);
  }
}

TEST(Extension, RandomRestrictionsOfStatesExtend) {
  RandomSpaces gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    auto states = state_polytope(v).extreme_states;
    const RealFunctional& f = states[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(states.size()) - 1))];
    QMatrix span{v.unit, gen.vector(n, -3, 3)};
    QVector vals{f(span[0]), f(span[1])};
    Extension ext = extend_positive_functional(v, span, vals);
    EXPECT_TRUE(is_positive_functional(v, ext.functional));
    EXPECT_EQ(ext.functional(span[0]), vals[0]);
    EXPECT_EQ(ext.functional(span[1]), vals[1]);
  }
}

TEST(Extension, PreconditionsAreChecked) {
  OrderedSpace v = orthant(2);
  EXPECT_THROW(extend_positive_functional(v, {qv({1, 0})}, {Rational(1)}), PreconditionError);
  // f(1,1) = 1 but f(1,0) = -1 on E = R^2 is not positive.
  EXPECT_THROW(extend_positive_functional(v, {qv({1, 1}), qv({1, 0})}, {Rational(1), Rational(-1)}),
               PreconditionError);
  EXPECT_THROW(extend_positive_functional(v, {qv({1, 1}), qv({2, 2})}, {Rational(1), Rational(3)}),
               PreconditionError);
}
