#include <gtest/gtest.h>

#include "irr/diophantine.hpp"
#include "irr/integrate.hpp"
#include "irr/recurrence.hpp"
#include "kernels.hpp"

using namespace irr;
using namespace irr::testing;

namespace {

struct WarmUpData {
  std::vector<Rational> A, B;
};

const WarmUpData& warmup() {
  static const WarmUpData d = [] {
    auto v = evaluate_exact(warmup_recurrence(), initial_values(warmup_kernel(), 2), 1000);
    WarmUpData out;
    for (const auto& e : v) {
      out.A.push_back(e.rational_part());
      out.B.push_back(e.coord(Atom::log(2)));
    }
    return out;
  }();
  return d;
}

DeltaReport warmup_delta(long n, long prec) {
  const Rational q = -warmup().A[static_cast<std::size_t>(n)] / warmup().B[static_cast<std::size_t>(n)];
  return empirical_delta(ln2(prec), q.get_num(), q.get_den(), n);
}

BigFloat bf(long v, long p = 256) { return BigFloat::from_integer(v, p); }

bool close(const BigFloat& x, const BigFloat& y, long bits) {
  const BigFloat d = x - y;
  return d.is_zero() || d.ilog2() < -bits;
}

void expect_kind(const std::function<void()>& f, ErrorKind k) {
  try {
    f();
    FAIL() << "expected " << to_string(k);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), k) << e.what();
  }
}

}  // namespace

TEST(EmpiricalDelta, WarmUpPrintedValues) {
  const long p = bits_for_digits(400);
  EXPECT_EQ(warmup_delta(50, p).delta.to_decimal(20), "0.33269846131126944438");
  EXPECT_EQ(warmup_delta(51, p).delta.to_decimal(20), "0.31992792581569268673");
  EXPECT_EQ(warmup_delta(53, p).delta.to_decimal(20), "0.30031107795443952791");
}

TEST(EmpiricalDelta, WarmUpWindowMinimum) {
  const long p = bits_for_digits(2000);
  DeltaReport best = warmup_delta(990, p);
  for (long n = 991; n <= 1000; ++n) {
    DeltaReport r = warmup_delta(n, p);
    if (r.delta < best.delta) best = r;
  }
  EXPECT_EQ(best.delta.to_decimal(20), "0.28193333613008344616");
  const BigFloat diff = best.measure_estimate - BigFloat::from_rational(Rational("45469377751717949058/10000000000000000000"), 128);
  EXPECT_LT(diff.abs().to_double(), 1e-10);
  EXPECT_GT(best.measure_estimate.to_double(), 4.0);
  EXPECT_LT(best.measure_estimate.to_double(), 5.0);
}

TEST(EmpiricalDelta, SignFlipInvariance) {
  const long p = bits_for_digits(400);
  const Rational q = -warmup().A[40] / warmup().B[40];
  const auto r1 = empirical_delta(ln2(p), q.get_num(), q.get_den());
  const auto r2 = empirical_delta(ln2(p), -q.get_num(), -q.get_den());
  EXPECT_EQ(r1.delta, r2.delta);
}

TEST(EmpiricalDelta, InsufficientPrecisionEscalates) {
  // The reported bit count is a lower bound; following it converges.
  const Rational q = -warmup().A[200] / warmup().B[200];
  long bits = 200;
  std::optional<DeltaReport> r;
  for (int step = 0; step < 20 && !r; ++step) {
    try {
      r = empirical_delta(ln2(bits), q.get_num(), q.get_den());
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::InsufficientPrecision);
      EXPECT_GT(e.detail(), bits);
      bits = e.detail();
    }
  }
  ASSERT_TRUE(r.has_value());
  EXPECT_GT(bits, 200);
  EXPECT_EQ(r->delta.to_decimal(15), empirical_delta(ln2(4000), q.get_num(), q.get_den()).delta.to_decimal(15));
}

TEST(EmpiricalDelta, ExactHitAndDegenerateDenominators) {
  expect_kind([] { empirical_delta(BigFloat::from_rational(Rational(1, 2), 200), 1, 2); }, ErrorKind::ExactHit);
  expect_kind([] { empirical_delta(ln2(200), 1, 0); }, ErrorKind::InvalidInput);
  expect_kind([] { empirical_delta(ln2(200), 1, 1); }, ErrorKind::InvalidInput);
}

TEST(ScalingSearch, WarmUpNeedsOneLcm) {
  std::vector<Rational> a(warmup().A.begin(), warmup().A.begin() + 301);
  auto r = scaling_search(a);
  EXPECT_EQ(r.lcm_power, 1);
  EXPECT_EQ(r.lcm_stride, 1);
  EXPECT_EQ(r.K, 1);
  EXPECT_EQ(r.c, 1);
  EXPECT_EQ(r.verified_upto, 300);
}

TEST(ScalingSearch, IntegerInputIsTrivial) {
  std::vector<Rational> b(warmup().B.begin(), warmup().B.begin() + 40);
  auto r = scaling_search(b);
  EXPECT_EQ(r.lcm_power, 0);
  EXPECT_EQ(r.K, 1);
  EXPECT_EQ(r.c, 1);
}

TEST(ScalingSearch, GeometricDenominatorsFindK) {
  std::vector<Rational> v;
  for (unsigned long n = 0; n < 40; ++n) v.emplace_back(Integer(n + 1), int_pow(6, n) * 7);
  auto r = scaling_search(v);
  EXPECT_EQ(r.lcm_power, 0);
  EXPECT_EQ(r.K, 6);
  EXPECT_EQ(r.c, 7);
}

TEST(ScalingSearch, TooFewValues) {
  expect_kind([] { scaling_search(std::vector<Rational>(5, Rational(1, 2))); }, ErrorKind::InvalidInput);
}

TEST(ScalingSearch, OutsideCatalog) {
  std::vector<Rational> v;
  for (unsigned long n = 0; n < 40; ++n) v.emplace_back(Integer(1), factorial(n));
  expect_kind([&] { scaling_search(v); }, ErrorKind::NoRuleFound);
}

TEST(MeasureBoundTest, WarmUpClosedForm) {
  const long p = 256;
  const BigFloat a = log(bf(3, p) + bf(2, p) * sqrt_rational(2, p), p);
  auto m = measure_bound(a, -a, bf(1, p));
  EXPECT_EQ(m.mu.to_decimal(20), "4.6221008324542313342");
}

TEST(MeasureBoundTest, AperyRates) {
  const long p = 256;
  const BigFloat a = log(bf(1, p) + sqrt_rational(2, p), p) * bf(4, p);
  auto m = measure_bound(a, -a, bf(3, p));
  EXPECT_EQ(m.delta.to_decimal(4), "0.08053");
  EXPECT_EQ(m.mu.to_decimal(7), "13.41782");
  EXPECT_EQ(m.delta, apery_delta(p));
}

TEST(MeasureBoundTest, SymmetricToy) {
  auto m = measure_bound(bf(2), bf(-2), bf(1));
  EXPECT_TRUE(close(m.delta, BigFloat::from_rational(Rational(1, 3), 256), 250));
  EXPECT_TRUE(close(m.mu, bf(4), 248));
}

TEST(MeasureBoundTest, NonpositiveDelta) {
  expect_kind([] { measure_bound(bf(2), bf(-1), bf(1)); }, ErrorKind::NonpositiveDelta);
}

TEST(MeasureBoundTest, InvariantUnderRecurrenceRescaling) {
  const auto base = warmup_recurrence();
  std::vector<Polynomial> scaled;
  for (const auto& c : base.coeffs()) scaled.push_back(c * poly_from_ints({7, 1}, Var::n) * Rational(-5, 3));
  ScalingRule rule;
  rule.lcm_power = 1;
  const auto m1 = measure_bound(growth_rates(base, 40), rule, 128);
  const auto m2 = measure_bound(growth_rates(LinearRecurrence(scaled), 40), rule, 128);
  EXPECT_EQ(m1.mu, m2.mu);
  EXPECT_EQ(m1.mu.to_decimal(20), "4.6221008324542313342");
}

TEST(MeasureBoundTest, CaveatNamesVerifiedRange) {
  ScalingRule rule;
  rule.lcm_power = 1;
  rule.verified_upto = 1000;
  const auto m = measure_bound(growth_rates(warmup_recurrence(), 40), rule, 128);
  ASSERT_EQ(m.caveats.size(), 1u);
  EXPECT_NE(m.caveats[0].find("verified to n = 1000"), std::string::npos);
}

TEST(Apery, SmallValues) {
  auto s = apery_sequences(10);
  EXPECT_EQ(s.b[0], 1);
  EXPECT_EQ(s.b[1], 5);
  EXPECT_EQ(s.b[2], 73);
  EXPECT_EQ(s.a[0], 0);
  EXPECT_EQ(s.a[1], 6);
  const auto lcm = lcm_table(10);
  for (std::size_t n = 0; n <= 10; ++n) {
    EXPECT_EQ(Rational(s.p[n]), s.a[n] * Rational(int_pow(lcm[n], 3)));
    EXPECT_EQ(s.q[n], s.b[n] * int_pow(lcm[n], 3));
  }
}

TEST(Apery, EmpiricalDeltaStaysAboveClosedForm) {
  // Finite-n deltas fluctuate above the limit and approach it slowly.
  auto s = apery_sequences(240);
  const BigFloat z = zeta3(bits_for_digits(1600));
  const BigFloat limit = apery_delta(128);
  std::vector<double> deltas;
  for (std::size_t n : {40u, 80u, 160u, 240u}) {
    const Rational q = make_rational(s.p[n], s.q[n]);
    const auto r = empirical_delta(z, q.get_num(), q.get_den(), static_cast<long>(n));
    EXPECT_GT(r.delta, limit) << n;
    EXPECT_LT(r.delta.to_double(), 0.18) << n;
    deltas.push_back(r.delta.to_double());
  }
  EXPECT_LT(deltas.back(), deltas.front());
}

TEST(ClosedForms, AlladiRobinson) {
  EXPECT_EQ(alladi_robinson_measure(1, 1).to_decimal(20), "4.6221008324542313342");
  expect_kind([] { alladi_robinson_measure(1, 10); }, ErrorKind::ConditionViolated);
}

TEST(ClosedForms, Arctan) {
  EXPECT_EQ(arctan_measure(3).to_decimal(15), "8.30998634015547");
  EXPECT_GT(arctan_measure(7).to_double(), 2.0);
  expect_kind([] { arctan_measure(5); }, ErrorKind::CongruenceViolated);
}

TEST(ClosedForms, ArctanTargetForThree) {
  // arctan(sqrt 3)/sqrt 3 = pi / (3 sqrt 3)
  const long p = 256;
  const BigFloat s = sqrt_rational(3, p);
  const BigFloat lhs = atan(s, p) / s;
  const BigFloat rhs = pi(p) / (bf(3, p) * s);
  EXPECT_TRUE(close(lhs, rhs, 240));
}

TEST(Salikhov, Cubics) {
  EXPECT_EQ(salikhov_cubic(1), poly_from_ints({1, -79, -4325, 3}, Var::N));
  // 108*64 + 648*32 + 1440*16 + 1440*8 + 614*4 + 76*2 - 1 = 64815
  EXPECT_EQ(salikhov_cubic(2), poly_from_ints({1, 6, -64815, 8}, Var::N));
  EXPECT_EQ(salikhov_K(1), 3);
  EXPECT_EQ(salikhov_K(2), 2);
  EXPECT_EQ(salikhov_K(5), 35);
}

TEST(Salikhov, RootLocations) {
  EXPECT_TRUE(salikhov_root_check(1));
  EXPECT_TRUE(salikhov_root_check(2));
  EXPECT_TRUE(salikhov_root_check(100));
  // At a = 1 the negative root is larger in modulus than the small positive one.
  auto r = salikhov_roots(1, 20);
  EXPECT_GT(r.c3.value.abs(), r.c2.value);
  EXPECT_NEAR(r.c1.value.to_double(), 1441.69, 0.01);
}

TEST(Salikhov, NuValues) {
  EXPECT_NEAR(salikhov_nu(1).to_double(), 20.02, 0.005);
  EXPECT_EQ(salikhov_nu(2).to_decimal(12), "4.12492856553");
  // Independent evaluation from 30-digit roots.
  auto r = salikhov_roots(2, 30);
  const double d = std::log(2.0) + 2;
  const double want = -(std::log(r.c1.value.to_double()) + d) / (std::log(r.c2.value.to_double()) + d);
  EXPECT_NEAR(salikhov_nu(2).to_double(), want, 1e-12);
}
