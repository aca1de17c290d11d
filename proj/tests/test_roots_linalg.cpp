#include <gtest/gtest.h>

#include "irr/linalg.hpp"
#include "irr/roots.hpp"

using namespace irr;

TEST(RealRoots, SilverRatioPair) {
  auto r = isolate_real_roots(poly_from_ints({1, -6, 1}, Var::N), 30);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].value.to_decimal(15), "0.171572875253810");
  EXPECT_EQ(r[1].value.to_decimal(15), "5.82842712474619");
}

TEST(RealRoots, SalikhovCubicAtOne) {
  auto r = isolate_real_roots(poly_from_ints({1, -79, -4325, 3}, Var::N), 20);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0].value.to_double(), -0.02687, 5e-5);
  EXPECT_NEAR(r[1].value.to_double(), 0.008605, 5e-6);
  EXPECT_NEAR(r[2].value.to_double(), 1441.7, 0.05);
}

TEST(RealRoots, LinearHasExactRoot) {
  auto r = isolate_real_roots(poly_from_ints({-1, 1}, Var::N), 10);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].value.to_rational(), 1);
  EXPECT_LE(r[0].lo, 1);
  EXPECT_GE(r[0].hi, 1);
}

TEST(RealRoots, ComplexRootsRejected) {
  try {
    isolate_real_roots(poly_from_ints({1, 0, 1}, Var::N), 10);
    FAIL() << "expected ComplexRootsPresent";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ComplexRootsPresent);
  }
}

TEST(RealRoots, EnclosuresShrinkAndContainValue) {
  const Polynomial p = poly_from_ints({1, -3, 0, 1}, Var::N);  // three irrational real roots
  std::vector<Rational> prev_width(3, Rational(10));
  for (int d : {5, 20, 80, 320}) {
    auto r = isolate_real_roots(p, d);
    ASSERT_EQ(r.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      const Rational w = r[i].hi - r[i].lo;
      EXPECT_LE(w, prev_width[i]);
      prev_width[i] = w;
      const Rational v = r[i].value.to_rational();
      EXPECT_LE(r[i].lo, v);
      EXPECT_GE(r[i].hi, v);
      EXPECT_LE(sgn(p(r[i].lo)) * sgn(p(r[i].hi)), 0);
    }
  }
}

TEST(RealRoots, NonnegativeIntegerRoots) {
  const Polynomial p = poly_from_ints({-3, 1}, Var::n) * poly_from_ints({5, 1}, Var::n) * poly_from_ints({-1, 2}, Var::n);
  EXPECT_EQ(nonnegative_integer_roots(p), std::vector<long>{3});
}

TEST(Linalg, SolveRational) {
  RationalMatrix a{{2, 1}, {1, 3}};
  auto x = solve_rational(a, {3, 5});
  EXPECT_EQ(x[0], Rational(4, 5));
  EXPECT_EQ(x[1], Rational(7, 5));
}

TEST(Linalg, LllFindsIntegerRelation) {
  // Columns (1, 0, 0, K), (0, 1, 0, K*sqrt2 approx), (0, 0, 1, K*2 sqrt2 approx): relation 2*b - c = 0.
  const Integer K("1000000000000");
  const Integer s2("1414213562373");
  IntegerMatrix b{{1, 0, 0, K}, {0, 1, 0, s2}, {0, 0, 1, 2 * s2}};
  auto red = lll_reduce(b);
  const auto& v = red[0];
  EXPECT_EQ(v[0], 0);
  EXPECT_EQ(abs(v[1]), 2);
  EXPECT_EQ(v[1] * v[2], -2);
}
