#pragma once

// From sequences to irrationality statements: denominator scaling rules,
// empirical deltas, measure bounds from growth rates, Apery's sequences and
// closed-form measure formulas (log, arctan and Salikhov families).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/hiprec.hpp"
#include "irr/recurrence.hpp"
#include "irr/roots.hpp"
#include "irr/telescope.hpp"

namespace irr {

// --------------------------------------------------------------------------
// Scaling rules: c * K^n * lcm(1..m n)^s * value(n) is an integer.

struct ScalingRule {
  int lcm_power = 0;   // s
  int lcm_stride = 1;  // m
  Integer K = 1;
  Integer c = 1;
  long verified_upto = -1;  // largest n checked

  /// Per-n logarithmic growth of the scaling factor: s m + log K.
  BigFloat denom_growth(long prec) const {
    BigFloat d = BigFloat::from_integer(Integer(lcm_power * lcm_stride), prec);
    if (K > 1) d += log_integer(K, prec);
    return d.with_precision(prec);
  }

  Integer factor(long n, const std::vector<Integer>& lcm) const {
    const long idx = lcm_stride * n;
    if (idx >= static_cast<long>(lcm.size())) throw Error(ErrorKind::InvalidInput, "lcm table too short");
    Integer f = c * int_pow(K, static_cast<unsigned long>(n));
    if (lcm_power > 0) f *= int_pow(lcm[static_cast<std::size_t>(idx)], static_cast<unsigned long>(lcm_power));
    return f;
  }

  std::string to_string() const {
    std::string s = c.get_str() + " * " + K.get_str() + "^n";
    if (lcm_power > 0) {
      s += " * lcm(1.." + (lcm_stride == 1 ? std::string("n") : std::to_string(lcm_stride) + "n") + ")";
      if (lcm_power > 1) s += "^" + std::to_string(lcm_power);
    }
    return s;
  }
};

struct ScalingCatalog {
  int max_lcm_power = 3;
  std::vector<int> strides{1, 2};
  Integer max_K = 1000000;
  Integer max_c = 1000000;
  unsigned long smooth_bound = 10000;  // K and c are built from primes below this
  std::size_t min_values = 32;
};

namespace detail {

inline long floor_log(unsigned long p, long x) {
  long e = 0;
  Integer pk = p;
  while (pk <= x) {
    pk *= p;
    ++e;
  }
  return e;
}

/// Rule for a fixed (s, m), or nullopt.
inline std::optional<ScalingRule> scaling_for(const std::vector<std::vector<Rational>>& seqs, int s, int m,
                                              const ScalingCatalog& cat, const std::vector<Integer>& lcm) {
  const auto primes = primes_upto(cat.smooth_bound);
  std::vector<unsigned long> support;
  for (unsigned long p : primes) {
    if (p > cat.smooth_bound) break;
    support.push_back(p);
  }
  // Per prime: largest deficit at each n.
  std::map<unsigned long, std::vector<std::pair<long, long>>> deficits;  // p -> (n, deficit)
  for (const auto& seq : seqs)
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const Rational& v = seq[i];
      if (is_zero(v) || v.get_den() == 1) continue;
      const long n = static_cast<long>(i);
      Integer d = v.get_den();
      for (unsigned long p : support) {
        if (d == 1) break;
        if (!mpz_divisible_ui_p(d.get_mpz_t(), p)) continue;
        long e = 0;
        while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
          mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
          ++e;
        }
        const long covered = s * floor_log(p, m * n);
        if (e > covered) deficits[p].emplace_back(n, e - covered);
      }
      if (d != 1) {
        // Primes beyond the smooth bound must come from the lcm factor.
        if (s == 0) return std::nullopt;
        Integer l = lcm[static_cast<std::size_t>(m * n)];
        if (!mpz_divisible_p(l.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      }
    }
  ScalingRule rule;
  rule.lcm_power = s;
  rule.lcm_stride = m;
  for (const auto& [p, list] : deficits) {
    long worst = 0;
    for (const auto& [n, e] : list) worst = std::max(worst, e);
    bool placed = false;
    for (long k = 0; k <= worst; ++k) {
      long cp = 0;
      for (const auto& [n, e] : list) cp = std::max(cp, e - n * k);
      Integer pc = int_pow(Integer(p), static_cast<unsigned long>(cp));
      if (pc > cat.max_c) continue;
      rule.K *= int_pow(Integer(p), static_cast<unsigned long>(k));
      rule.c *= pc;
      placed = true;
      break;
    }
    if (!placed || rule.K > cat.max_K || rule.c > cat.max_c) return std::nullopt;
  }
  return rule;
}

}  // namespace detail

/// Applies the rule to value(n) = seq[n].
inline Rational apply_scaling(const ScalingRule& rule, const Rational& v, long n, const std::vector<Integer>& lcm) {
  return v * Rational(rule.factor(n, lcm));
}

/// True iff the rule makes every value integral; records the range on success.
inline bool verify_scaling(ScalingRule& rule, const std::vector<std::vector<Rational>>& seqs) {
  std::size_t len = 0;
  for (const auto& s : seqs) len = std::max(len, s.size());
  const auto lcm = lcm_table(static_cast<long>(len) * rule.lcm_stride + 1);
  for (const auto& seq : seqs)
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (!is_integer(apply_scaling(rule, seq[i], static_cast<long>(i), lcm))) return false;
  rule.verified_upto = static_cast<long>(len) - 1;
  return true;
}

/// Smallest rule (by s m, then stride, then K, then c) making every value of
/// every sequence integral. Sequences are indexed from n = 0.
inline ScalingRule scaling_search(const std::vector<std::vector<Rational>>& seqs, const ScalingCatalog& cat = {}) {
  std::size_t len = 0;
  for (const auto& s : seqs) len = std::max(len, s.size());
  if (len < cat.min_values)
    throw Error(ErrorKind::InvalidInput, "scaling search needs at least " + std::to_string(cat.min_values) + " values");
  int max_stride = 1;
  for (int m : cat.strides) max_stride = std::max(max_stride, m);
  const auto lcm = lcm_table(static_cast<long>(len) * max_stride + 1);
  std::vector<std::pair<int, int>> order;  // (s, m)
  for (int s = 0; s <= cat.max_lcm_power; ++s)
    for (int m : cat.strides)
      if (s > 0 || m == 1) order.emplace_back(s, m);
  std::sort(order.begin(), order.end(), [](auto a, auto b) {
    if (a.first * a.second != b.first * b.second) return a.first * a.second < b.first * b.second;
    return a.second < b.second;
  });
  for (auto [s, m] : order) {
    auto rule = detail::scaling_for(seqs, s, m, cat, lcm);
    if (rule && verify_scaling(*rule, seqs)) return *rule;
  }
  throw Error(ErrorKind::NoRuleFound, "no scaling rule in the catalog clears the denominators");
}

inline ScalingRule scaling_search(const std::vector<Rational>& values, const ScalingCatalog& cat = {}) {
  return scaling_search(std::vector<std::vector<Rational>>{values}, cat);
}

// --------------------------------------------------------------------------
// Empirical delta.

struct DeltaReport {
  long n = 0;
  Integer A;  // numerator of the approximation
  Integer B;  // denominator
  BigFloat delta;
  BigFloat measure_estimate;
  long log2_error = 0;  // floor(log2 |x - A/B|)
};

/// delta = -log|x - A/B| / log|B| - 1, with x - A/B formed exactly from the
/// binary value of x. Throws ExactHit, InsufficientPrecision (detail = a
/// lower bound on the bits needed) or InvalidInput (B = 0 or |B| = 1).
inline DeltaReport empirical_delta(const BigFloat& x, const Integer& A, const Integer& B, long n = 0) {
  if (sgn(B) == 0) throw Error(ErrorKind::InvalidInput, "empirical delta with B = 0");
  if (abs(B) == 1) throw Error(ErrorKind::InvalidInput, "empirical delta with |B| = 1 (log B = 0)");
  // x = m 2^e; x B - A = (m B - A 2^-e) 2^e when e < 0.
  Integer num;
  long e = x.exponent();
  if (e >= 0) {
    num = x.mantissa() * B * (Integer(1) << static_cast<mp_bitcnt_t>(e)) - A;
    e = 0;
  } else {
    num = x.mantissa() * B - (A << static_cast<mp_bitcnt_t>(-e));
  }
  if (sgn(num) == 0) throw Error(ErrorKind::ExactHit, "approximation equals x to working precision");
  // |diff| = |num| 2^e / |B|
  const long log2_diff = bit_length(num) - 1 + e - bit_length(B);
  const long x_scale = x.is_zero() ? 0 : x.ilog2();
  const long floor_allowed = x_scale - x.precision() + 64;
  if (log2_diff < floor_allowed) {
    const long need = x.precision() + (floor_allowed - log2_diff) + 64;
    throw Error(ErrorKind::InsufficientPrecision,
                "x carries " + std::to_string(x.precision()) + " bits, " + std::to_string(need) + " needed", need);
  }
  const long p = 128;
  const BigFloat diff = BigFloat(abs(num), e, p) / BigFloat::from_integer(abs(B), p);
  const BigFloat ld = log(diff, p);
  const BigFloat lb = log_integer(abs(B), p);
  const BigFloat one = BigFloat::from_integer(1, p);
  DeltaReport r;
  r.n = n;
  r.A = A;
  r.B = B;
  r.delta = -(ld / lb) - one;
  r.measure_estimate = one + one / r.delta;
  r.log2_error = log2_diff;
  return r;
}

// --------------------------------------------------------------------------
// Measure bounds.

struct MeasureBound {
  BigFloat dominant_log;    // a
  BigFloat subdominant_log; // b
  BigFloat denom_growth;    // d
  BigFloat delta;           // -(b + d) / (a + d)
  BigFloat mu;              // 1 + 1/delta
  std::vector<std::string> caveats;
};

inline MeasureBound measure_bound(const BigFloat& a, const BigFloat& b, const BigFloat& d) {
  const BigFloat ad = a + d, bd = b + d;
  if (ad.sign() <= 0 || bd.sign() >= 0)
    throw Error(ErrorKind::NonpositiveDelta, "growth rates give no positive delta (a + d = " + ad.to_decimal(12) +
                                                 ", b + d = " + bd.to_decimal(12) + ")");
  MeasureBound m;
  m.dominant_log = a;
  m.subdominant_log = b;
  m.denom_growth = d;
  m.delta = -(bd / ad);
  const long p = std::max(a.precision(), d.precision());
  const BigFloat one = BigFloat::from_integer(1, p);
  m.mu = one + one / m.delta;
  return m;
}

inline MeasureBound measure_bound(const GrowthAnalysis& g, const ScalingRule& rule, long prec,
                                  std::optional<std::size_t> subdominant_root = std::nullopt) {
  BigFloat b = g.subdominant_log;
  if (subdominant_root) {
    if (*subdominant_root >= g.log_moduli.size()) throw Error(ErrorKind::InvalidInput, "subdominant root index out of range");
    b = g.log_moduli[*subdominant_root];
  }
  MeasureBound m = measure_bound(g.dominant_log.with_precision(prec), b.with_precision(prec), rule.denom_growth(prec));
  if (rule.verified_upto >= 0)
    m.caveats.push_back("conditional on divisibility pattern " + rule.to_string() + ", verified to n = " +
                        std::to_string(rule.verified_upto));
  else
    m.caveats.push_back("divisibility pattern " + rule.to_string() + " not verified");
  return m;
}

// --------------------------------------------------------------------------
// Apery's sequences for zeta(3).

struct AperySequences {
  std::vector<Rational> a;
  std::vector<Integer> b;
  std::vector<Integer> p;  // lcm(1..n)^3 a_n
  std::vector<Integer> q;  // lcm(1..n)^3 b_n
};

inline AperySequences apery_sequences(long n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidInput, "apery_sequences needs n_max >= 1");
  AperySequences out;
  const auto lcm = lcm_table(n_max);
  for (long n = 0; n <= n_max; ++n) {
    const auto un = static_cast<unsigned long>(n);
    Rational harmonic3 = 0;
    for (unsigned long m = 1; m <= un; ++m) harmonic3 += Rational(1, m * m * m);
    Integer bn = 0;
    Rational an = 0;
    Rational inner = 0;  // sum_{m<=k} (-1)^(m-1) / (2 m^3 C(n,m) C(n+m,m))
    for (unsigned long k = 0; k <= un; ++k) {
      if (k > 0) {
        Rational t(1);
        t /= Rational(Integer(2 * k * k * k) * binomial(un, k) * binomial(un + k, k));
        if (k % 2 == 0) t = -t;
        inner += t;
      }
      Integer c = binomial(un, k) * binomial(un + k, k);
      c *= c;
      bn += c;
      an += Rational(c) * (harmonic3 + inner);
    }
    const Integer l3 = int_pow(lcm[static_cast<std::size_t>(n)], 3);
    const Rational pn = an * Rational(l3);
    if (!is_integer(pn)) throw Error(ErrorKind::InternalCheckFailed, "lcm^3 a_n not integral at n = " + std::to_string(n));
    out.a.push_back(an);
    out.b.push_back(bn);
    out.p.push_back(pn.get_num());
    out.q.push_back(l3 * bn);
  }
  return out;
}

/// Closed-form delta (4 log(1+sqrt 2) - 3) / (4 log(1+sqrt 2) + 3).
inline BigFloat apery_delta(long prec) {
  const long w = prec + 32;
  BigFloat l = log(BigFloat::from_integer(1, w) + sqrt_rational(2, w), w) * BigFloat::from_integer(4, w);
  BigFloat three = BigFloat::from_integer(3, w);
  return ((l - three) / (l + three)).with_precision(prec);
}

// --------------------------------------------------------------------------
// Closed-form measures.

namespace detail {

/// Evaluates f at two precisions and checks they agree to prec - 32 bits.
template <class F>
BigFloat certified(F f, long prec) {
  BigFloat lo = f(prec + 64);
  BigFloat hi = f(2 * prec + 64);
  BigFloat diff = (lo - hi).abs();
  if (!diff.is_zero() && !hi.is_zero() && diff.ilog2() > hi.ilog2() - prec + 32)
    throw Error(ErrorKind::InternalCheckFailed, "closed-form evaluation unstable under precision doubling");
  return hi.with_precision(prec);
}

}  // namespace detail

/// Measure for log(1 + b/a) from the x(1-x)/(a+bx) family:
///   [ln(2a+b-2r) - ln(2a+b+2r)] / [ln(2a+b-2r) + 1], r = sqrt(a(a+b)),
/// valid when a > (b - 1/e)^2 / 4.
inline BigFloat alladi_robinson_measure(long a, long b, long prec = 128) {
  if (a <= 0 || b <= 0) throw Error(ErrorKind::InvalidInput, "alladi_robinson_measure needs positive a, b");
  {
    const long p = 256;
    BigFloat t = BigFloat::from_integer(b, p) - exp_minus_one(p);
    BigFloat rhs = t * t / BigFloat::from_integer(4, p);
    BigFloat gap = BigFloat::from_integer(a, p) - rhs;
    if (gap.sign() <= 0 || gap.abs().ilog2() < -200)
      throw Error(ErrorKind::ConditionViolated, "need a > (b - 1/e)^2 / 4 for (a, b) = (" + std::to_string(a) + ", " +
                                                    std::to_string(b) + ")");
  }
  return detail::certified(
      [&](long w) {
        const Rational s = 2 * a + b;
        BigFloat r2 = sqrt_rational(Rational(4 * a) * (a + b), w);  // 2 sqrt(a(a+b))
        BigFloat plus = BigFloat::from_rational(s, w) + r2;
        // (2a+b)^2 - 4a(a+b) = b^2, so the small root is b^2 / plus.
        BigFloat minus = BigFloat::from_integer(Integer(b) * b, w) / plus;
        BigFloat lm = log(minus, w), lp = log(plus, w);
        return (lm - lp) / (lm + BigFloat::from_integer(1, w));
      },
      prec);
}

/// Measure for arctan(sqrt a)/sqrt a, a = 3 mod 4:
///   [ln(-a+r) - ln(a+r)] / [ln(-a+r) - ln sqrt(a) + 1], r = sqrt(a(a+1)).
inline BigFloat arctan_measure(long a, long prec = 128) {
  if (a <= 0) throw Error(ErrorKind::InvalidInput, "arctan_measure needs a positive integer");
  if (a % 4 != 3) throw Error(ErrorKind::CongruenceViolated, "arctan_measure needs a = 3 mod 4, got " + std::to_string(a));
  return detail::certified(
      [&](long w) {
        BigFloat r = sqrt_rational(Rational(a) * (a + 1), w);
        BigFloat plus = BigFloat::from_integer(a, w) + r;
        BigFloat minus = BigFloat::from_integer(a, w) / plus;  // r - a = a / (r + a)
        BigFloat lm = log(minus, w), lp = log(plus, w);
        BigFloat half_log_a = log_rational(a, w).ldexp(-1);
        BigFloat den = lm - half_log_a + BigFloat::from_integer(1, w);
        if (den.is_zero()) throw Error(ErrorKind::NonpositiveDelta, "degenerate arctan measure denominator");
        return (lm - lp) / den;
      },
      prec);
}

// --------------------------------------------------------------------------
// Salikhov's family for {1, log(a/(a+1)), log((a+1)/(a+2))}.

inline Polynomial salikhov_cubic(long a) {
  if (a < 1) throw Error(ErrorKind::InvalidInput, "salikhov_cubic needs a >= 1");
  const Integer A = a;
  const Integer c1 = 4 * int_pow(A, 4) + 16 * int_pow(A, 3) - 11 * A * A - 54 * A - 34;
  const Integer c2 = -(108 * int_pow(A, 6) + 648 * int_pow(A, 5) + 1440 * int_pow(A, 4) + 1440 * int_pow(A, 3) +
                       614 * A * A + 76 * A - 1);
  const Integer c3 = A * (A + 2);
  return Polynomial({Rational(1), Rational(c1), Rational(c2), Rational(c3)}, Var::N);
}

/// K(a) = a(a+2) for odd a, (a/2)(a/2+1) for even a.
inline Integer salikhov_K(long a) {
  if (a < 1) throw Error(ErrorKind::InvalidInput, "salikhov_K needs a >= 1");
  if (a % 2) return Integer(a) * (a + 2);
  return Integer(a / 2) * (a / 2 + 1);
}

/// E1 on [0, 2a+1] and E2 on [0, 2a+3], sharing
///   R = x^2 (x^2 - (2a+1)^2)(x^2 - (2a+3)^2) / (x^2 - (2a+1)^2 (2a+3)^2)^2,
///   S = 1 / (x^2 - (2a+1)^2 (2a+3)^2).
inline std::pair<HyperexponentialKernel, HyperexponentialKernel> salikhov_kernels(long a) {
  if (a < 1) throw Error(ErrorKind::InvalidInput, "salikhov_kernels needs a >= 1");
  const Integer u = 2 * a + 1, v = 2 * a + 3;
  const Polynomial x2 = Polynomial::monomial(1, 2);
  const Polynomial num = x2 * (x2 - Polynomial::constant(Rational(u * u))) * (x2 - Polynomial::constant(Rational(v * v)));
  const Polynomial w = x2 - Polynomial::constant(Rational(u * u * v * v));
  const RationalFunction R(num, w * w), S(Polynomial::constant(1), w);
  return {HyperexponentialKernel{R, S, Rational(0), Rational(u)}, HyperexponentialKernel{R, S, Rational(0), Rational(v)}};
}

struct SalikhovRoots {
  RootEnclosure c1, c2, c3;  // c3 < 0 < c2 < c1
};

inline SalikhovRoots salikhov_roots(long a, int digits) {
  auto roots = isolate_real_roots(salikhov_cubic(a), digits);
  if (roots.size() != 3) throw Error(ErrorKind::InternalCheckFailed, "Salikhov cubic without three real roots");
  return {roots[2], roots[1], roots[0]};
}

/// The location chain
///   -1/(4a^2(a+2)^2) < C3 < 0 < C2 < 1/(27a(a+2)) < 108a^2(a+1)^2 < C1
/// and, for a >= 2, C2 > 1/(4a^2(a+2)^2) > |C3|; decided on exact enclosures.
inline bool salikhov_root_check(long a) {
  const Integer A = a;
  const Rational small(Integer(1), 4 * A * A * (A + 2) * (A + 2));
  const Rational mid(Integer(1), 27 * A * (A + 2));
  const Rational big(108 * A * A * (A + 1) * (A + 1));
  for (int digits = 30; digits <= 960; digits *= 2) {
    SalikhovRoots r = salikhov_roots(a, digits);
    // Each test: +1 holds, -1 fails, 0 undecided at this width.
    auto less = [](const Rational& x_hi, const Rational& y_lo, const Rational& x_lo, const Rational& y_hi) {
      if (x_hi < y_lo) return 1;
      if (x_lo >= y_hi) return -1;
      return 0;
    };
    std::vector<int> tests{
        less(-small, r.c3.lo, -small, r.c3.hi),  // -small < C3
        less(r.c3.hi, Rational(0), r.c3.lo, Rational(0)),
        less(Rational(0), r.c2.lo, Rational(0), r.c2.hi),
        less(r.c2.hi, mid, r.c2.lo, mid),
        mid < big ? 1 : -1,
        less(big, r.c1.lo, big, r.c1.hi),
    };
    if (a >= 2) {
      tests.push_back(less(small, r.c2.lo, small, r.c2.hi));    // small < C2
      tests.push_back(less(-r.c3.lo, small, -r.c3.hi, small));  // |C3| < small
    }
    bool undecided = false;
    for (int t : tests) {
      if (t < 0) return false;
      if (t == 0) undecided = true;
    }
    if (!undecided) return true;
  }
  return false;
}

/// nu(a) <= -(log C1 + log K + 2) / (log C2 + log K + 2), with |C3| in place
/// of C2 at a = 1.
inline BigFloat salikhov_nu(long a, long prec = 128) {
  const int digits = static_cast<int>(prec / 3) + 10;
  SalikhovRoots r = salikhov_roots(a, digits);
  const long w = prec + 32;
  const BigFloat d = log_integer(salikhov_K(a), w) + BigFloat::from_integer(2, w);
  const BigFloat l1 = log(r.c1.value.abs(), w);
  const BigFloat l2 = a == 1 ? log(r.c3.value.abs(), w) : log(r.c2.value.abs(), w);
  const BigFloat den = l2 + d;
  if (den.sign() >= 0) throw Error(ErrorKind::NonpositiveDelta, "Salikhov bound denominator is not negative");
  return (-(l1 + d) / den).with_precision(prec);
}

/// 3 log(a(a+2)) / (log c - 2), c = 108 for even a and 27 for odd a.
inline BigFloat salikhov_nu_asymptotic(long a, long prec = 128) {
  const long w = prec + 32;
  const BigFloat lc = log_rational(a % 2 == 0 ? 108 : 27, w) - BigFloat::from_integer(2, w);
  return (BigFloat::from_integer(3, w) * log_integer(Integer(a) * (a + 2), w) / lc).with_precision(prec);
}

}  // namespace irr
