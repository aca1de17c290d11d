#include <gtest/gtest.h>
#include <mpfr.h>

#include <functional>

#include "irr/hiprec.hpp"

using namespace irr;

namespace {

// Converts an MPFR value to a BigFloat without rounding.
BigFloat from_mpfr(const mpfr_t v, long prec) {
  Integer m;
  const long e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  return BigFloat(m, e, prec);
}

BigFloat mpfr_oracle(long prec, const std::function<void(mpfr_t)>& f) {
  mpfr_t v;
  mpfr_init2(v, prec + 32);
  f(v);
  BigFloat r = from_mpfr(v, prec + 32);
  mpfr_clear(v);
  return r;
}

/// log2 of the relative error of `got` against `want`; very negative when equal.
long rel_err_bits(const BigFloat& got, const BigFloat& want) {
  const BigFloat d = got - want;
  if (d.is_zero()) return -1000000;
  return d.ilog2() - want.ilog2();
}

}  // namespace

TEST(BigFloatTest, DecimalOfLog2) {
  EXPECT_EQ(ln2(bits_for_digits(40)).to_decimal(30), "0.693147180559945309417232121458");
}

TEST(BigFloatTest, LogOfUnitInQuadraticField) {
  // log(3 + 2 sqrt 2) = 2 log(1 + sqrt 2)
  const long p = bits_for_digits(40);
  const BigFloat y = BigFloat::from_integer(3, p) + BigFloat::from_integer(2, p) * sqrt_rational(2, p);
  EXPECT_EQ(log(y, p).to_decimal(15), "1.76274717403909");
}

TEST(BigFloatTest, QuarterPiFromArctan) {
  const long p = bits_for_digits(60);
  EXPECT_LE(rel_err_bits(arctan_rational(1, p), pi(p).ldexp(-2)), -p + 4);
}

TEST(BigFloatTest, DilogAtOneIsZeta2) {
  const long p = bits_for_digits(60);
  const BigFloat want = pi(p) * pi(p) / BigFloat::from_integer(6, p);
  EXPECT_LE(rel_err_bits(dilog_rational(1, p), want), -p + 4);
}

TEST(BigFloatTest, DilogAtOneHalf) {
  const long p = bits_for_digits(60);
  const BigFloat l2 = ln2(p);
  const BigFloat want = pi(p) * pi(p) / BigFloat::from_integer(12, p) - l2 * l2 / BigFloat::from_integer(2, p);
  EXPECT_LE(rel_err_bits(dilog_rational(Rational(1, 2), p), want), -p + 4);
}

TEST(BigFloatTest, DilogReflectionFormula) {
  // Li2(z) + Li2(1 - z) = pi^2/6 - log z log(1 - z)
  const long p = bits_for_digits(50);
  for (const Rational& z : {Rational(1, 3), Rational(1, 7), Rational(3, 4), Rational(9, 10)}) {
    const BigFloat lhs = dilog_rational(z, p) + dilog_rational(1 - z, p);
    const BigFloat rhs =
        pi(p) * pi(p) / BigFloat::from_integer(6, p) - log_rational(z, p) * log_rational(1 - z, p);
    EXPECT_LE(rel_err_bits(lhs, rhs), -p + 6) << z;
  }
}

TEST(BigFloatTest, PrecisionDoublingAgrees) {
  for (long d : {50L, 200L, 1000L}) {
    const long p = bits_for_digits(d), p2 = bits_for_digits(2 * d);
    EXPECT_LE(rel_err_bits(log_rational(Rational(7, 3), p), log_rational(Rational(7, 3), p2)), -p + 4);
    EXPECT_LE(rel_err_bits(zeta3(p), zeta3(p2)), -p + 4);
    EXPECT_LE(rel_err_bits(dilog_rational(Rational(-1, 5), p), dilog_rational(Rational(-1, 5), p2)), -p + 4);
  }
}

TEST(MpfrOracle, Constants) {
  for (long d : {30L, 300L, 1500L}) {
    const long p = bits_for_digits(d);
    EXPECT_LE(rel_err_bits(pi(p), mpfr_oracle(p, [](mpfr_t v) { mpfr_const_pi(v, MPFR_RNDN); })), -p + 2);
    EXPECT_LE(rel_err_bits(ln2(p), mpfr_oracle(p, [](mpfr_t v) { mpfr_const_log2(v, MPFR_RNDN); })), -p + 2);
    EXPECT_LE(rel_err_bits(zeta3(p), mpfr_oracle(p, [](mpfr_t v) { mpfr_zeta_ui(v, 3, MPFR_RNDN); })), -p + 2);
    EXPECT_LE(rel_err_bits(exp_minus_one(p), mpfr_oracle(p, [](mpfr_t v) {
                             mpfr_set_si(v, -1, MPFR_RNDN);
                             mpfr_exp(v, v, MPFR_RNDN);
                           })),
              -p + 2);
  }
}

TEST(MpfrOracle, ElementaryFunctionsOfRationals) {
  const long p = bits_for_digits(200);
  for (const Rational& q : {Rational(1, 3), Rational(7, 2), Rational(1000001, 999), Rational(3, 1000)}) {
    auto set_q = [&](mpfr_t v) { mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN); };
    EXPECT_LE(rel_err_bits(log_rational(q, p), mpfr_oracle(p, [&](mpfr_t v) {
                             set_q(v);
                             mpfr_log(v, v, MPFR_RNDN);
                           })),
              -p + 2)
        << q;
    EXPECT_LE(rel_err_bits(arctan_rational(q, p), mpfr_oracle(p, [&](mpfr_t v) {
                             set_q(v);
                             mpfr_atan(v, v, MPFR_RNDN);
                           })),
              -p + 2)
        << q;
    EXPECT_LE(rel_err_bits(sqrt_rational(q, p), mpfr_oracle(p, [&](mpfr_t v) {
                             set_q(v);
                             mpfr_sqrt(v, v, MPFR_RNDN);
                           })),
              -p + 2)
        << q;
  }
}

TEST(MpfrOracle, Dilogarithm) {
  const long p = bits_for_digits(150);
  for (const Rational& q : {Rational(1, 2), Rational(1, 5), Rational(-3, 7), Rational(2, 3), Rational(-4)}) {
    EXPECT_LE(rel_err_bits(dilog_rational(q, p), mpfr_oracle(p, [&](mpfr_t v) {
                             mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN);
                             mpfr_li2(v, v, MPFR_RNDN);
                           })),
              -p + 4)
        << q;
  }
}

TEST(BigFloatTest, ArithmeticMatchesExactRationals) {
  const long p = 256;
  const Rational a(22, 7), b(-355, 113);
  const BigFloat fa = BigFloat::from_rational(a, p), fb = BigFloat::from_rational(b, p);
  EXPECT_LE(rel_err_bits(fa * fb, BigFloat::from_rational(a * b, p)), -p + 2);
  EXPECT_LE(rel_err_bits(fa / fb, BigFloat::from_rational(a / b, p)), -p + 2);
  EXPECT_LE(rel_err_bits(fa + fb, BigFloat::from_rational(a + b, p)), -p + 12);
  EXPECT_TRUE(fb < fa);
}

TEST(BigFloatTest, DomainErrors) {
  EXPECT_THROW(log_rational(0, 64), Error);
  EXPECT_THROW(log_rational(-2, 64), Error);
  EXPECT_THROW(sqrt_rational(-1, 64), Error);
}
