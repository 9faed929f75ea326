#include <gtest/gtest.h>

#include <cmath>

#include "ordspace/errors.hpp"
#include "ordspace/norms.hpp"
#include "ordspace/order.hpp"
#include "ordspace/psd.hpp"
#include "support/fixtures.hpp"

using namespace ordspace;
using namespace ordspace::testing;

namespace {

NormOptions with_tol(double tol) {
  NormOptions o;
  o.tol = tol;
  return o;
}

ComplexElement one_i() { return {qv({1, 0}), qv({0, 1})}; }

void expect_verified(const OrderedSpace& s, const ComplexElement& v, NormKind k, const CertifiedInterval& iv) {
  std::string why;
  EXPECT_TRUE(verify_interval(s, v, k, iv, &why)) << to_string(k) << ": " << why;
}

}  // namespace

TEST(MinimalNorm, TwoPointSpaceExample) {
  CertifiedInterval m = minimal_norm(orthant(2), one_i());
  EXPECT_TRUE(m.exact());
  EXPECT_EQ(m.lower.exact(), 1);
  expect_verified(orthant(2), one_i(), NormKind::Minimal, m);
}

TEST(MinimalNorm, UnitAndZero) {
  OrderedSpace v = orthant(3);
  EXPECT_EQ(minimal_norm(v, ComplexElement::hermitian(v.unit)).lower.exact(), 1);
  EXPECT_EQ(minimal_norm(v, ComplexElement::hermitian(zeros(3))).upper.exact(), 0);
}

TEST(MinimalNorm, MatrixUnitHasNumericalRadiusOneHalf) {
  OrderedSpace m2 = matrix_space(2);
  ComplexElement e12 = matrix_unit(2, 0, 1);
  CertifiedInterval iv = minimal_norm(m2, e12, with_tol(1e-6));
  EXPECT_TRUE(iv.tolerance_met);
  EXPECT_LE(iv.lower.to_double(), 0.5);
  EXPECT_GE(iv.upper.to_double(), 0.5);
  EXPECT_LE(iv.width(), 1e-6);
  expect_verified(m2, e12, NormKind::Minimal, iv);
}

TEST(MaximalNorm, TwoPointSpaceExampleIsSqrtTwo) {
  OrderedSpace v = orthant(2);
  CertifiedInterval iv = maximal_norm(v, one_i(), with_tol(1e-4));
  EXPECT_TRUE(iv.tolerance_met);
  EXPECT_LE(iv.lower.to_double(), std::sqrt(2.0));
  EXPECT_GE(iv.upper.to_double(), std::sqrt(2.0));
  EXPECT_LE(iv.width(), 1e-4);
  expect_verified(v, one_i(), NormKind::Maximal, iv);
  // Strictly above the minimal norm, which is 1 here.
  EXPECT_GE(iv.lower.to_double() - 1.0, 0.4);
}

TEST(DecompositionNorm, TwoPointSpaceExampleIsOne) {
  OrderedSpace v = orthant(2);
  CertifiedInterval iv = decomposition_norm(v, one_i(), with_tol(1e-4));
  EXPECT_TRUE(iv.tolerance_met);
  EXPECT_NEAR(iv.value().to_double(), 1.0, 1e-4);
  expect_verified(v, one_i(), NormKind::Decomposition, iv);
}

TEST(MatrixNorms, MatrixUnitCollapsesToOne) {
  OrderedSpace m2 = matrix_space(2);
  ComplexElement e12 = matrix_unit(2, 0, 1);
  for (NormKind k : {NormKind::Maximal, NormKind::Decomposition}) {
    CertifiedInterval iv = norm(k, m2, e12, with_tol(1e-6));
    EXPECT_TRUE(iv.exact()) << to_string(k) << " [" << iv.lower.to_string() << ", " << iv.upper.to_string() << "]";
    EXPECT_EQ(iv.value().to_double(), 1.0);
    expect_verified(m2, e12, k, iv);
  }
}

TEST(MatrixNorms, DiagonalElementUsesCommutativePath) {
  OrderedSpace m2 = matrix_space(2);
  ComplexElement x{qv({1, 0, 0, 0}), qv({0, 1, 0, 0})};
  CertifiedInterval dec = decomposition_norm(m2, x, with_tol(1e-4));
  CertifiedInterval big = maximal_norm(m2, x, with_tol(1e-4));
  EXPECT_NEAR(dec.value().to_double(), 1.0, 1e-4);
  EXPECT_NEAR(big.value().to_double(), std::sqrt(2.0), 1e-4);
  EXPECT_NE(dec.method_notes.find("commutative"), std::string::npos);
  expect_verified(m2, x, NormKind::Decomposition, dec);
  expect_verified(m2, x, NormKind::Maximal, big);
}

TEST(MatrixNorms, GenericElementBoundsAreOrdered) {
  OrderedSpace m2 = matrix_space(2);
  ComplexElement x{qv({1, -1, 2, 1}), qv({0, 2, -1, 1})};
  CertifiedInterval m = minimal_norm(m2, x, with_tol(1e-6));
  CertifiedInterval dec = decomposition_norm(m2, x, with_tol(1e-6));
  CertifiedInterval big = maximal_norm(m2, x, with_tol(1e-6));
  EXPECT_LE(m.lower.to_double(), dec.upper.to_double());
  EXPECT_LE(dec.lower.to_double(), big.upper.to_double());
  EXPECT_LE(big.upper.to_double(), 2 * m.upper.to_double() + 1e-6);
  expect_verified(m2, x, NormKind::Decomposition, dec);
  expect_verified(m2, x, NormKind::Maximal, big);
}

TEST(ConvexCombination, EndpointsAndMidpoint) {
  OrderedSpace v = orthant(2);
  CertifiedInterval half = convex_combination_norm(v, one_i(), Rational(1, 2), with_tol(1e-4));
  EXPECT_NEAR(half.value().to_double(), (1 + std::sqrt(2.0)) / 2, 1e-4);
  EXPECT_EQ(convex_combination_norm(v, one_i(), 1).lower.exact(), 1);
  EXPECT_THROW(convex_combination_norm(v, one_i(), 2), PreconditionError);
}

TEST(NormProperties, HermitianElementsGiveTheOrderSeminormExactly) {
  RandomSpaces gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    QVector h = gen.vector(n, -4, 4);
    Rational seminorm = order_seminorm(v, h).exact();
    for (NormKind k : {NormKind::Minimal, NormKind::Maximal, NormKind::Decomposition}) {
      CertifiedInterval iv = norm(k, v, ComplexElement::hermitian(h));
      ASSERT_TRUE(iv.exact());
      EXPECT_EQ(iv.lower.exact(), seminorm);
      expect_verified(v, ComplexElement::hermitian(h), k, iv);
    }
  }
}

TEST(NormProperties, SandwichStarInvarianceAndCertificatesOnRandomSpaces) {
  RandomSpaces gen(43);
  const double tol = 1e-4;
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = gen.next(n);
    ComplexElement x{gen.vector(n, -3, 3), gen.vector(n, -3, 3)};
    CertifiedInterval m = minimal_norm(v, x, with_tol(tol));
    CertifiedInterval dec = decomposition_norm(v, x, with_tol(tol));
    CertifiedInterval big = maximal_norm(v, x, with_tol(tol));
    EXPECT_TRUE(dec.tolerance_met);
    EXPECT_TRUE(big.tolerance_met);
    EXPECT_LE(m.lower.to_double(), dec.upper.to_double() + tol);
    EXPECT_LE(dec.lower.to_double(), big.upper.to_double() + tol);
    EXPECT_LE(big.lower.to_double(), 2 * m.upper.to_double() + tol);
    for (auto [k, iv] : {std::pair{NormKind::Minimal, m}, {NormKind::Decomposition, dec}, {NormKind::Maximal, big}}) {
      expect_verified(v, x, k, iv);
      CertifiedInterval s = norm(k, v, star(x), with_tol(tol));
      EXPECT_NEAR(s.value().to_double(), iv.value().to_double(), 2 * tol);
    }
  }
}

TEST(NormProperties, CommutativeSpacesHaveEqualMinimalAndDecompositionNorms) {
  RandomSpaces gen(47);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    OrderedSpace v = OrderedSpace::make(orthant_cone(n), gen.vector(n, 1, 3));
    ComplexElement x{gen.vector(n, -3, 3), gen.vector(n, -3, 3)};
    CertifiedInterval m = minimal_norm(v, x);
    CertifiedInterval dec = decomposition_norm(v, x, with_tol(1e-4));
    EXPECT_NEAR(m.value().to_double(), dec.value().to_double(), 1e-4);
  }
}

TEST(MapPositivity, IdentityProjectionAndReflection) {
  OrderedSpace c2 = orthant(2);
  MapPositivity id = map_positivity_test(c2, c2, identity(2));
  EXPECT_TRUE(id.positive);
  EXPECT_NEAR(id.norm_estimate, 1.0, 1e-12);
  EXPECT_TRUE(id.consistent);

  MapPositivity proj = map_positivity_test(orthant(3), c2, {qv({1, 0, 0}), qv({0, 1, 0})});
  EXPECT_TRUE(proj.positive);
  EXPECT_LE(proj.norm_estimate, 1.0);

  MapPositivity bad = map_positivity_test(c2, c2, {qv({2, -1}), qv({-1, 2})});
  EXPECT_FALSE(bad.positive);
  EXPECT_GT(bad.norm_estimate, 1.0);
  EXPECT_TRUE(bad.consistent);
  EXPECT_THROW(map_positivity_test(c2, c2, {qv({1, 1}), qv({0, 1})}), PreconditionError);
}
