#include <gtest/gtest.h>

#include "ordspace/arch.hpp"
#include "ordspace/errors.hpp"
#include "ordspace/order.hpp"
#include "support/fixtures.hpp"

using namespace ordspace;
using namespace ordspace::testing;

namespace {

OrderedSpace space_from_rows(std::size_t n, const QMatrix& rows, QVector unit) {
  std::vector<HalfspaceRow> hr;
  for (const auto& a : rows) hr.push_back({a, false});
  return OrderedSpace::make(ConeSpec::polyhedral_h(n, hr), std::move(unit));
}

bool in_closed_cone(const OrderedSpace& v, const QVector& x) { return member(closure(v.cone), x); }

}  // namespace

TEST(DandN, ClosureAndLineality) {
  DandN q = compute_D_and_N(open_quadrant());
  EXPECT_TRUE(q.n_basis.empty());
  EXPECT_TRUE(member(q.d, qv({1, 0})));
  EXPECT_TRUE(is_closed(q.d));

  DandN h = compute_D_and_N(open_halfplane());
  ASSERT_EQ(h.n_basis.size(), 1u);
  EXPECT_EQ(h.n_basis[0][0], 0);
  EXPECT_TRUE(member(h.d, qv({0, -5})));

  EXPECT_TRUE(compute_D_and_N(orthant(3)).n_basis.empty());
}

TEST(Complement, ProjectionKillsSubspaceAndSplitsSection) {
  RandomSpaces gen(4);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 6));
    QMatrix sub;
    int k = gen.uniform(0, static_cast<int>(n) - 1);
    for (int i = 0; i < k; ++i) sub.push_back(gen.vector(n, -3, 3));
    Complement c = complement_coordinates(sub, n);
    EXPECT_EQ(c.projection.size(), n - rank(sub, n));
    for (const auto& s : sub) EXPECT_TRUE(is_zero(mat_vec(c.projection, s)));
    EXPECT_EQ(mat_mul(c.projection, c.section), identity(c.projection.size()));
  }
}

TEST(Archimedeanize, OrthantIsAFixedPoint) {
  QuotientResult r = archimedeanize(orthant(2));
  EXPECT_TRUE(r.identity);
  EXPECT_EQ(r.projection, identity(2));
  EXPECT_TRUE(is_archimedean(r.space));
}

TEST(Archimedeanize, OpenQuadrantClosesWithIdentityProjection) {
  OrderedSpace v = open_quadrant();
  EXPECT_FALSE(member(v.cone, qv({1, 0})));
  for (long den : {1L, 2L, 4L, 1024L}) {
    EXPECT_TRUE(member(v.cone, add(scale(Rational(1, den), v.unit), qv({1, 0}))));
  }
  QuotientResult r = archimedeanize(v);
  EXPECT_EQ(r.projection, identity(2));
  EXPECT_TRUE(is_archimedean(r.space));
  EXPECT_TRUE(member(r.space.cone, qv({1, 0})));
  EXPECT_FALSE(member(r.space.cone, qv({1, -1})));
}

TEST(Archimedeanize, HalfplaneCollapsesToTheRealLine) {
  OrderedSpace v = open_halfplane();
  QuotientResult r = archimedeanize(v);
  ASSERT_EQ(r.space.dim(), 1u);
  EXPECT_EQ(r.projection, (QMatrix{qv({1, 0})}));
  EXPECT_EQ(r.space.unit, qv({1}));
  EXPECT_TRUE(member(r.space.cone, qv({3})));
  EXPECT_FALSE(member(r.space.cone, qv({-1})));
  EXPECT_TRUE(validate_space(r.space).valid);
  EXPECT_TRUE(is_archimedean(r.space));
  EXPECT_EQ(mat_vec(r.projection, qv({0, 7})), qv({0}));
}

TEST(Archimedeanize, IsIdempotent) {
  for (const OrderedSpace& v : {open_halfplane(), open_quadrant(), orthant(3)}) {
    QuotientResult once = archimedeanize(v);
    QuotientResult twice = archimedeanize(once.space);
    EXPECT_TRUE(twice.identity);
    EXPECT_EQ(twice.projection, identity(once.space.dim()));
  }
}

TEST(OrderIdeal, CoordinateAxisAndDiagonal) {
  OrderedSpace v = orthant(3);
  EXPECT_TRUE(is_order_ideal(v, {qv({1, 0, 0})}).is_ideal);
  IdealCheck bad = is_order_ideal(v, {qv({1, 1, 0})});
  ASSERT_FALSE(bad.is_ideal);
  ASSERT_TRUE(bad.witness_p && bad.witness_q);
  // Check the witness from the definition.
  EXPECT_TRUE(in_span({qv({1, 1, 0})}, *bad.witness_p, 3));
  EXPECT_TRUE(in_closed_cone(v, *bad.witness_q));
  EXPECT_TRUE(in_closed_cone(v, sub(*bad.witness_p, *bad.witness_q)));
  EXPECT_FALSE(in_span({qv({1, 1, 0})}, *bad.witness_q, 3));
  EXPECT_TRUE(is_order_ideal(v, {}).is_ideal);
}

TEST(OrderIdeal, OppositeRaysOfASquareConeAreNotAnIdeal) {
  // Each ray alone passes a per-generator test; their sum is interior.
  OrderedSpace v = OrderedSpace::make(
      ConeSpec::polyhedral_v(3, {qv({1, 1, 1}), qv({1, -1, 1}), qv({1, 1, -1}), qv({1, -1, -1})}), qv({1, 0, 0}));
  ASSERT_TRUE(validate_space(v).valid);
  EXPECT_FALSE(is_order_ideal(v, {qv({1, 1, 1}), qv({1, -1, -1})}).is_ideal);
  EXPECT_TRUE(is_order_ideal(v, {qv({1, 1, 1}), qv({1, -1, 1})}).is_ideal);
}

TEST(OrderIdeal, KernelsOfPositiveUnitalMapsAreIdeals) {
  RandomSpaces gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    std::size_t m = static_cast<std::size_t>(gen.uniform(1, 3));
    QMatrix phi = gen.positive_unital_map(v, QVector(m, Rational(1)));
    QMatrix ker = null_space(phi, n);
    EXPECT_TRUE(is_order_ideal(v, ker).is_ideal);
  }
}

TEST(Quotient, CoordinateProjection) {
  QuotientResult r = quotient(orthant(3), {qv({1, 0, 0})});
  ASSERT_EQ(r.space.dim(), 2u);
  EXPECT_EQ(r.space.unit, qv({1, 1}));
  EXPECT_TRUE(member(r.space.cone, qv({0, 2})));
  EXPECT_FALSE(member(r.space.cone, qv({-1, 2})));
  EXPECT_EQ(mat_mul(r.projection, r.section), identity(2));
  EXPECT_TRUE(quotient(orthant(3), {}).identity);
}

TEST(Quotient, PreconditionsAreChecked) {
  EXPECT_THROW(quotient(orthant(3), {qv({1, 1, 0})}), NotOrderIdeal);
  EXPECT_THROW(quotient(orthant(1), {qv({1})}), PreconditionError);
  EXPECT_THROW(quotient(matrix_space(2), {qv({1, 0, 0, 0})}), CapabilityError);
}

TEST(Quotient, RandomFaceIdealsGivePointedQuotients) {
  RandomSpaces gen(12);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    // The span of one extreme ray is a face, hence an order ideal.
    const QMatrix& rays = v.cone.geometry().rays;
    QMatrix j{rays[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(rays.size()) - 1))]};
    ASSERT_TRUE(is_order_ideal(v, j).is_ideal);
    QuotientResult r = quotient(v, j);
    EXPECT_TRUE(is_pointed(r.space.cone));
    EXPECT_TRUE(validate_space(r.space).valid);
    EXPECT_EQ(r.space.unit, mat_vec(r.projection, v.unit));
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(ArchQuotient, CoordinateIdealIsItsOwnClosure) {
  QuotientResult r = arch_quotient(orthant(3), {qv({1, 0, 0})});
  ASSERT_EQ(r.kernel.size(), 1u);
  EXPECT_TRUE(in_span(r.kernel, qv({1, 0, 0}), 3));
  EXPECT_EQ(r.space.dim(), 2u);
  EXPECT_TRUE(is_archimedean(r.space));
  EXPECT_TRUE(arch_quotient(orthant(2), {}).identity);
}

TEST(ArchQuotient, ThreeRayConeWithVerticalIdeal) {
  OrderedSpace v = OrderedSpace::make(
      ConeSpec::polyhedral_v(3, {qv({1, 0, 0}), qv({1, 1, 0}), qv({1, 1, 1})}), qv({3, 2, 1}));
  ASSERT_TRUE(validate_space(v).valid);
  QMatrix j{qv({0, 0, 1})};
  QuotientResult r = arch_quotient(v, j);
  EXPECT_TRUE(is_archimedean(r.space));
  EXPECT_TRUE(validate_space(r.space).valid);
  // x + N_J is positive iff r e + x lies in C + J for every sampled r > 0.
  ConeSpec sum = ConeSpec::polyhedral_v(3, {qv({1, 0, 0}), qv({1, 1, 0}), qv({1, 1, 1}), qv({0, 0, 1}), qv({0, 0, -1})});
  RandomSpaces gen(2);
  for (int s = 0; s < 60; ++s) {
    QVector x = gen.vector(3, -3, 3);
    bool all_r = true;
    for (long den : {1L, 2L, 4L, 8L, 1024L}) all_r = all_r && member(sum, axpy(x, Rational(1, den), v.unit));
    EXPECT_EQ(member(r.space.cone, mat_vec(r.projection, x)), all_r);
  }
}

TEST(Factor, ProjectionFactorsThroughItself) {
  OrderedSpace v = open_halfplane();
  QuotientResult a = archimedeanize(v);
  FactorResult f = factor_through(v, a.projection, a.space);
  EXPECT_TRUE(f.commutes);
  EXPECT_EQ(f.induced, identity(1));
}

TEST(Factor, RandomPositiveUnitalMapsFactorExactly) {
  RandomSpaces gen(17);
  for (int trial = 0; trial < 40; ++trial) {
    bool halfplane = trial % 4 == 0;
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = halfplane ? open_halfplane() : gen.next(n);
    std::size_t m = static_cast<std::size_t>(gen.uniform(1, 3));
    QVector wu = gen.vector(m, 1, 3);
    OrderedSpace w = OrderedSpace::make(orthant_cone(m), wu);
    QMatrix phi = gen.positive_unital_map(v, wu);
    FactorResult f = factor_through(v, phi, w);
    EXPECT_TRUE(f.commutes);
    EXPECT_TRUE(f.induced_unital);
    EXPECT_TRUE(f.induced_positive);
    // N lies in the kernel of phi.
    for (const auto& l : compute_D_and_N(v).n_basis) EXPECT_TRUE(is_zero(mat_vec(phi, l)));
  }
}

TEST(Factor, RejectsNonPositiveMaps) {
  OrderedSpace v = orthant(2);
  OrderedSpace w = orthant(1);
  EXPECT_THROW(factor_through(v, {qv({2, -1})}, w), PreconditionError);
  EXPECT_THROW(factor_through(v, {qv({1, 1})}, w), PreconditionError);
  EXPECT_THROW(factor_through(v, {qv({1, 0})}, open_quadrant()), DimensionMismatch);
}

TEST(FirstIso, CoordinateProjectionIsOrderIsomorphism) {
  OrderedSpace v = orthant(3);
  OrderedSpace w = orthant(2);
  QMatrix phi{qv({1, 0, 0}), qv({0, 1, 0})};
  FirstIsomorphism r = first_isomorphism(v, phi, w);
  EXPECT_TRUE(r.kernel_ideal.is_ideal);
  EXPECT_TRUE(r.null_space_is_kernel);
  EXPECT_TRUE(r.induced_injective);
  EXPECT_TRUE(r.image_condition);
  EXPECT_TRUE(r.is_order_isomorphism);
  EXPECT_EQ(mat_mul(r.induced, r.quotient.projection), phi);
}

TEST(FirstIso, InjectiveIsomorphismHasTrivialQuotient) {
  FirstIsomorphism r = first_isomorphism(orthant(2), identity(2), orthant(2));
  EXPECT_TRUE(r.quotient.identity);
  EXPECT_EQ(r.induced, identity(2));
  EXPECT_TRUE(r.is_order_isomorphism);
}

TEST(FirstIso, StrictlySmallerImageIsReported) {
  OrderedSpace w = space_from_rows(2, {qv({1, 2}), qv({2, 1})}, qv({1, 1}));
  ASSERT_TRUE(validate_space(w).valid);
  FirstIsomorphism r = first_isomorphism(orthant(2), identity(2), w);
  EXPECT_FALSE(r.image_condition);
  EXPECT_FALSE(r.is_order_isomorphism);
  ASSERT_TRUE(r.image_witness);
  EXPECT_TRUE(member(w.cone, *r.image_witness));
  EXPECT_FALSE(member(orthant_cone(2), *r.image_witness));
}

TEST(ComplexLayer, ProjectionCommutesWithStar) {
  OrderedSpace v = open_halfplane();
  QuotientResult r = archimedeanize(v);
  RandomSpaces gen(6);
  for (int s = 0; s < 20; ++s) {
    ComplexElement x{gen.vector(2, -4, 4), gen.vector(2, -4, 4)};
    EXPECT_EQ(project(r, star(x)), star(project(r, x)));
    EXPECT_EQ(project(r, lift(r, project(r, x))), project(r, x));
    // The complex kernel is N + iN: i l maps to zero.
    EXPECT_TRUE(is_zero(project(r, ComplexElement{zeros(2), qv({0, 1})}).im));
  }
}
