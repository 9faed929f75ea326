#include <gtest/gtest.h>

#include "ordspace/element.hpp"
#include "ordspace/errors.hpp"
#include "ordspace/rational.hpp"
#include "ordspace/scalar.hpp"
#include "support/fixtures.hpp"

using namespace ordspace;
using ordspace::testing::q;
using ordspace::testing::qv;

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(parse_rational(" 10/4 ")), "5/2");
  EXPECT_THROW(parse_rational("10/-5"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Rational, DecimalsAreExact) {
  EXPECT_EQ(parse_decimal("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_decimal("-2.50"), Rational(-5, 2));
  EXPECT_EQ(parse_decimal("3"), Rational(3));
  EXPECT_THROW(parse_decimal("1/2"), ParseError);
  EXPECT_THROW(parse_decimal("."), ParseError);
}

TEST(Rational, SquareRootBracketsAreTight) {
  for (long n : {2L, 3L, 5L, 10L, 12345L}) {
    Rational qn(n);
    double lo = sqrt_lower(qn), hi = sqrt_upper(qn);
    EXPECT_LE(Rational(lo) * Rational(lo), qn);
    EXPECT_GE(Rational(hi) * Rational(hi), qn);
    EXPECT_LE(hi - lo, 2 * std::numeric_limits<double>::epsilon() * hi);
  }
  Rational root;
  EXPECT_TRUE(exact_sqrt(Rational(9, 4), root));
  EXPECT_EQ(root, Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2), root));
}

TEST(Rational, RationalizeRecoversSimpleFractions) {
  EXPECT_EQ(rationalize(0.5, 100), Rational(1, 2));
  EXPECT_EQ(rationalize(1.0 / 3.0, 1000), Rational(1, 3));
  EXPECT_EQ(rationalize(-2.25, 10), Rational(-9, 4));
  Rational pi = rationalize(3.14159265358979, 1000);
  EXPECT_EQ(pi, Rational(355, 113));
}

TEST(LinearAlgebra, NullSpaceIsAnnihilated) {
  QMatrix m{qv({1, 2, 3}), qv({2, 4, 6}), qv({1, 0, 1})};
  QMatrix ns = null_space(m, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : m) EXPECT_EQ(dot(row, ns[0]), 0);
  EXPECT_EQ(rank(m, 3), 2u);
}

TEST(LinearAlgebra, SolveAndSpan) {
  QMatrix m{qv({1, 1}), qv({1, -1})};
  QVector x;
  ASSERT_TRUE(solve(m, 2, qv({3, 1}), x));
  EXPECT_EQ(x, qv({2, 1}));
  EXPECT_TRUE(in_span({qv({1, 1, 0})}, qv({2, 2, 0}), 3));
  EXPECT_FALSE(in_span({qv({1, 1, 0})}, qv({1, 0, 0}), 3));
  QVector d{Rational(2, 3), Rational(-4, 9)};
  normalize_direction(d);
  EXPECT_EQ(d, qv({3, -2}));
}

TEST(Scalar, ModesDoNotMixSilently) {
  Scalar a(Rational(1, 2));
  Scalar b = Scalar::approx(0.5);
  EXPECT_TRUE(a.is_exact());
  EXPECT_FALSE(b.is_exact());
  EXPECT_THROW(a + b, ModeMismatch);
  EXPECT_THROW(b.exact(), ModeMismatch);
  EXPECT_EQ((a + a).exact(), Rational(1));
  EXPECT_TRUE(Scalar::near(a.to_approx(), b, 0.0));
  EXPECT_EQ(a.to_string(), "1/2");
}

TEST(Element, StarIsAnInvolution) {
  ComplexElement v{qv({1, 2}), qv({3, -4})};
  EXPECT_EQ(star(star(v)), v);
  EXPECT_EQ(star(v).im, qv({-3, 4}));
  EXPECT_TRUE(ComplexElement::hermitian(qv({1, 1})).is_hermitian());
}

TEST(Element, ComplexScalingMatchesHandComputation) {
  // (1 + i) * ((1,0) + i(0,1)) = (1,-1) + i(1,1)
  ComplexElement v{qv({1, 0}), qv({0, 1})};
  ComplexElement w = complex_scale(1, 1, v);
  EXPECT_EQ(w.re, qv({1, -1}));
  EXPECT_EQ(w.im, qv({1, 1}));
  RealFunctional f{qv({2, 3})};
  ComplexValue z = evaluate(f, v);
  EXPECT_EQ(z.re, 2);
  EXPECT_EQ(z.im, 3);
}
