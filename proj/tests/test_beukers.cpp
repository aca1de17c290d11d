#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "irr/beukers.hpp"
#include "irr/recurrence.hpp"

using namespace irr;

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Nested tanh-sinh over the unit square.
Float50 E_quadrature(long n, long a) {
  boost::math::quadrature::tanh_sinh<Float50> ts;
  const Float50 tol("1e-30");
  auto outer = [&](const Float50& x) {
    auto inner = [&](const Float50& y) {
      const Float50 w = 1 - x * y / a;
      return boost::multiprecision::pow(x * (1 - x) * y * (1 - y) / w, n) / w;
    };
    return ts.integrate(inner, Float50(0), Float50(1), tol);
  };
  return ts.integrate(outer, Float50(0), Float50(1), tol);
}

Float50 to_f50(const BigFloat& x) { return Float50(x.to_decimal(45)); }

}  // namespace

TEST(ESeries, MatchesTwoDimensionalQuadrature) {
  for (long a : {2L, 3L})
    for (long n : {0L, 1L, 2L}) {
      const Float50 series = to_f50(E_series(n, a, 40));
      const Float50 quad = E_quadrature(n, a);
      EXPECT_LE(abs(series - quad), Float50("1e-20") * abs(quad)) << "n = " << n << ", a = " << a;
    }
}

TEST(ESeries, HigherIndexAgainstQuadrature) {
  const Float50 series = to_f50(E_series(3, 2, 40));
  EXPECT_LE(abs(series - E_quadrature(3, 2)), Float50("1e-15") * abs(series));
}

TEST(ESeries, PositiveAndDecreasingInA) {
  BigFloat prev = E_series(0, 2, 30);
  EXPECT_GT(prev.sign(), 0);
  for (long a = 3; a <= 8; ++a) {
    const BigFloat e = E_series(0, a, 30);
    EXPECT_GT(e.sign(), 0);
    EXPECT_LT(e, prev) << a;
    prev = e;
  }
}

TEST(ESeries, RejectsSmallA) { EXPECT_THROW(E_series(0, 1, 20), Error); }

TEST(ESeries, DilogReadingIsShifted) {
  // E(0, a) = a Li2(1/a), the dilog of (a-1)/a read as Li2(1 - z).
  for (long a : {2L, 3L, 5L}) EXPECT_TRUE(dilog_is_shifted(a, 60));
}

TEST(PrintedRecurrence, InstantiatedCoefficients) {
  const auto p = beukers_printed_coefficients(2);
  ASSERT_EQ(p.size(), 4u);
  const Polynomial np1 = poly_from_ints({1, 1}, Var::n);
  EXPECT_EQ(p[0], np1 * np1 * poly_from_ints({86, 37}, Var::n) * Rational(-8));
  EXPECT_EQ(p[3](Rational(0)), 441);
  EXPECT_EQ(beukers_recurrence(2).order(), 3);
}

TEST(PrintedRecurrence, ResidualsAgainstSeries) {
  for (long a : {2L, 3L, 4L})
    for (long n = 0; n <= 10; ++n) EXPECT_LT(beukers_residual(a, n, 60).to_double(), 1e-30) << a << " " << n;
}

TEST(PrintedRecurrence, ReversedCoefficientsFail) {
  EXPECT_GT(beukers_residual(2, 5, 60, true).to_double(), 1e-3);
}

TEST(Reconstruction, BaseCaseZero) {
  const auto t = reconstruct_ABC(2, 0, 60);
  EXPECT_EQ(t, (BeukersTriple{0, 2, 0}));
}

TEST(Reconstruction, TinyHeightFails) {
  try {
    reconstruct_ABC(2, 2, 60, Integer(10));
    FAIL() << "expected ReconstructionFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReconstructionFailed);
  }
}

TEST(Reconstruction, PropagationMatchesDirectRelation) {
  const long a = 2;
  const auto base = reconstruct_base(a, 60);
  EXPECT_LT(base.worst_gate_error.to_double(), 1e-30);
  const auto seq = beukers_sequences(a, base, 4);
  for (long n : {3L, 4L}) {
    auto direct = detail::beukers_relation(a, n, bits_for_digits(120), Integer("1000000000000000000"));
    ASSERT_TRUE(direct.has_value()) << n;
    const auto i = static_cast<std::size_t>(n);
    EXPECT_EQ(*direct, (BeukersTriple{seq.A[i], seq.B[i], seq.C[i]})) << n;
  }
}

TEST(Reconstruction, CoordinatesShareTheRecurrence) {
  const long a = 3;
  const auto base = reconstruct_base(a, 60);
  const auto seq = beukers_sequences(a, base, 15);
  AtomRegistry reg;
  const long p = bits_for_digits(60);
  for (long n = 0; n <= 15; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const BigFloat v = beukers_value(a, {seq.A[i], seq.B[i], seq.C[i]}).evaluate(reg, p);
    const BigFloat s = E_series(n, a, 60);
    EXPECT_LT(((v - s).abs() / s).to_double(), 1e-25) << n;
  }
}

TEST(TripleDelta, PositiveOnWindow) {
  const auto s = triple_delta(2, 40, 50, 60);
  ASSERT_EQ(s.reports.size(), 11u);
  for (const auto& r : s.reports) {
    EXPECT_FALSE(r.near_trivial);
    EXPECT_GT(r.delta.sign(), 0) << r.n;
  }
  EXPECT_NEAR(s.coeff_growth.to_double(), s.dominant_log.to_double(), 0.15);
}

TEST(TripleDelta, BaseCaseIsNearTrivial) {
  const auto s = triple_delta(2, 0, 0, 60);
  ASSERT_EQ(s.reports.size(), 1u);
  EXPECT_TRUE(s.reports[0].near_trivial);
}
