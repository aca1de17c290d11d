#pragma once

// The double-integral family
//   E(n, a) = int_0^1 int_0^1 (x(1-x)y(1-y)/(1-xy/a))^n dx dy / (1-xy/a),
// its printed third-order recurrence (data, checked numerically), rational
// reconstruction of E = A + B Li2(1/a) + C log((a-1)/a) and empirical
// exponents of the resulting integer combinations.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "irr/diophantine.hpp"
#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/hiprec.hpp"
#include "irr/linalg.hpp"
#include "irr/recurrence.hpp"
#include "irr/value.hpp"

namespace irr {

namespace detail {

inline void require_beukers_a(long a) {
  if (a < 2) throw Error(ErrorKind::InvalidInput, "Beukers family needs an integer a >= 2");
}

}  // namespace detail

/// E(n, a) = sum_k C(n+k, k) a^-k Beta(n+k+1, n+1)^2, summed until the tail
/// bound t_k rho / (1 - rho), rho = (n+k+1)/((k+1)a), drops below
/// 10^-(digits+5) relative to the first term.
inline BigFloat E_series(long n, long a, long digits) {
  detail::require_beukers_a(a);
  if (n < 0) throw Error(ErrorKind::InvalidInput, "E_series needs n >= 0");
  const long prec = bits_for_digits(digits + 5);
  const auto un = static_cast<unsigned long>(n);
  // Beta(n+1, n+1) = n!^2 / (2n+1)!
  const Rational beta0 = make_rational(factorial(un) * factorial(un), factorial(2 * un + 1));
  const Rational t0q = beta0 * beta0;
  const long scale = std::max(0L, -BigFloat::from_rational(t0q, 64).ilog2());
  const long w = prec + scale + 64;
  Integer t = detail::to_fixed(t0q, w);
  Integer sum = t;
  const Integer tol = detail::fixed_one(w - scale - prec);
  for (unsigned long k = 0;; ++k) {
    const Integer m = Integer(un + k + 1);
    t *= m * m * m;
    t /= Integer(k + 1) * a * (2 * un + k + 2) * (2 * un + k + 2);
    sum += t;
    // Tail after this term: ratios are bounded by rho_k = (n+k+2)/((k+2)a).
    const Integer rho_num = Integer(un + k + 2), rho_den = Integer(k + 2) * a;
    if (rho_num < rho_den && t * rho_num <= tol * (rho_den - rho_num)) break;
  }
  return detail::from_fixed(sum, w, bits_for_digits(digits));
}

// --------------------------------------------------------------------------
// The printed recurrence, sum_{i=0}^{3} p_i(n, a) E(n+i, a) = 0.

inline const std::array<std::string, 4>& beukers_provenance() {
  static const std::array<std::string, 4> s{
      "-a^3*(n+1)^2*(a-1)*(32*n*a+76*a-27*n-66)",
      "a^2*(512*a^3*n^3+2752*a^3*n^2-1072*a^2*n^3+4800*a^3*n-5792*a^2*n^2+636*a*n^3+2736*a^3-10140*a^2*n"
      "+3456*a*n^2-81*n^3-5796*a^2+6068*n*a-441*n^2+3472*a-768*n-432)",
      "a*(256*a^2*n^3+1632*a^2*n^2-120*a*n^3+3376*a^2*n-780*a*n^2-81*n^3+2232*a^2-1670*n*a-522*n^2-1170*a"
      "-1086*n-717)",
      "(32*n*a+44*a-27*n-39)*(3+n)^2",
  };
  return s;
}

/// Printed coefficients at integer a, without normalization.
inline std::vector<Polynomial> beukers_printed_coefficients(long a) {
  detail::require_beukers_a(a);
  const Polynomial n = Polynomial::variable(Var::n);
  auto c = [](const Integer& z) { return Polynomial::constant(Rational(z), Var::n); };
  const Integer A = a;
  const Polynomial n2 = n * n, n3 = n2 * n;
  const Polynomial np1 = n + c(1), np3 = n + c(3);
  std::vector<Polynomial> p(4, Polynomial(Var::n));
  p[0] = c(-int_pow(A, 3) * (A - 1)) * np1 * np1 * (n * c(32 * A - 27) + c(76 * A - 66));
  p[1] = c(A * A) * (c(512 * int_pow(A, 3) - 1072 * A * A + 636 * A - 81) * n3 +
                     c(2752 * int_pow(A, 3) - 5792 * A * A + 3456 * A - 441) * n2 +
                     c(4800 * int_pow(A, 3) - 10140 * A * A + 6068 * A - 768) * n +
                     c(2736 * int_pow(A, 3) - 5796 * A * A + 3472 * A - 432));
  p[2] = c(A) * (c(256 * A * A - 120 * A - 81) * n3 + c(1632 * A * A - 780 * A - 522) * n2 +
                 c(3376 * A * A - 1670 * A - 1086) * n + c(2232 * A * A - 1170 * A - 717));
  p[3] = (n * c(32 * A - 27) + c(44 * A - 39)) * np3 * np3;
  return p;
}

inline LinearRecurrence beukers_recurrence(long a) { return LinearRecurrence(beukers_printed_coefficients(a)); }

/// |sum_i p_i(n) E(n+i)| / max_i |p_i(n) E(n+i)| for the printed orientation,
/// or with the coefficient list reversed.
inline BigFloat beukers_residual(long a, long n, long digits, bool reversed = false) {
  auto p = beukers_printed_coefficients(a);
  if (reversed) std::reverse(p.begin(), p.end());
  const long prec = bits_for_digits(digits);
  BigFloat acc(Integer(0), 0, prec), biggest(Integer(0), 0, prec);
  for (int i = 0; i <= 3; ++i) {
    BigFloat term = BigFloat::from_rational(p[static_cast<std::size_t>(i)](Rational(n)), prec) * E_series(n + i, a, digits);
    acc += term;
    biggest = std::max(biggest, term.abs());
  }
  if (biggest.is_zero()) return biggest;
  return acc.abs() / biggest;
}

// --------------------------------------------------------------------------
// Reconstruction of E(n, a) = A + B Li2(1/a) + C log((a-1)/a).

struct BeukersTriple {
  Rational A, B, C;
  friend bool operator==(const BeukersTriple&, const BeukersTriple&) = default;
};

inline ExactValue beukers_value(long a, const BeukersTriple& t) {
  ExactValue v(t.A);
  v += ExactValue::of_atom(Atom::dilog(Rational(1, a)), t.B);
  v += ExactValue::log_of(Rational(a - 1, a)) * t.C;
  return v;
}

namespace detail {

/// Integer relation m0 E + m1 + m2 Li2(1/a) + m3 log((a-1)/a) = 0 with
/// m0 > 0 found by LLL at `bits` bits, or nullopt.
inline std::optional<BeukersTriple> beukers_relation(long a, long n, long bits, const Integer& height) {
  const long digits = bits / 3 + 10;
  const long prec = bits + 64;
  std::array<BigFloat, 4> v{E_series(n, a, digits).with_precision(prec), BigFloat::from_integer(1, prec),
                            dilog_rational(Rational(1, a), prec), log_rational(Rational(a - 1, a), prec)};
  IntegerMatrix basis(4, std::vector<Integer>(5));
  for (std::size_t i = 0; i < 4; ++i) {
    basis[i][i] = 1;
    basis[i][4] = to_fixed(v[i], bits);
  }
  IntegerMatrix red = lll_reduce(basis);
  for (const auto& row : red) {
    if (sgn(row[0]) == 0) continue;
    Integer hmax = 0;
    for (std::size_t i = 0; i < 4; ++i) hmax = std::max(hmax, Integer(abs(row[i])));
    if (hmax > height) continue;
    // The relation must hold far below the lattice scale.
    BigFloat r(Integer(0), 0, prec);
    for (std::size_t i = 0; i < 4; ++i) r += BigFloat::from_integer(row[i], prec) * v[i];
    if (!r.is_zero() && r.abs().ilog2() > -bits / 2) continue;
    const Rational m0(row[0]);
    return BeukersTriple{-Rational(row[1]) / m0, -Rational(row[2]) / m0, -Rational(row[3]) / m0};
  }
  return std::nullopt;
}

}  // namespace detail

/// Rational (A, B, C) at one n <= 2: LLL at `digits` and 2 `digits` must give
/// the same triple, with every relation coefficient bounded by `height`.
inline BeukersTriple reconstruct_ABC(long a, long n, long digits, const Integer& height = Integer("1000000000000")) {
  detail::require_beukers_a(a);
  if (n < 0 || n > 2) throw Error(ErrorKind::InvalidInput, "reconstruction is for the base cases n = 0, 1, 2");
  const long bits = bits_for_digits(digits);
  auto lo = detail::beukers_relation(a, n, bits, height);
  auto hi = detail::beukers_relation(a, n, 2 * bits, height);
  if (!lo || !hi)
    throw Error(ErrorKind::ReconstructionFailed, "no relation within height " + height.get_str() + " at n = " +
                                                     std::to_string(n) + ", a = " + std::to_string(a));
  if (!(*lo == *hi))
    throw Error(ErrorKind::ReconstructionFailed, "relations at two precisions disagree at n = " + std::to_string(n));
  return *hi;
}

struct BeukersBase {
  std::array<BeukersTriple, 3> base;  // n = 0, 1, 2
  BigFloat worst_gate_error;          // max over the gate range of |exact - series|
};

/// Base triples plus the propagation gate: coordinates pushed through the
/// recurrence must match E_series at n = 3..gate_hi to 10^-(digits/2).
inline BeukersBase reconstruct_base(long a, long digits, long gate_hi = 10,
                                    const Integer& height = Integer("1000000000000")) {
  BeukersBase out;
  for (long n = 0; n <= 2; ++n) out.base[static_cast<std::size_t>(n)] = reconstruct_ABC(a, n, digits, height);
  const LinearRecurrence rec = beukers_recurrence(a);
  std::vector<ExactValue> init;
  for (const auto& t : out.base) init.push_back(beukers_value(a, t));
  const auto vals = evaluate_exact(rec, init, gate_hi);
  AtomRegistry reg;
  const long prec = bits_for_digits(digits);
  out.worst_gate_error = BigFloat(Integer(0), 0, prec);
  const BigFloat tol = BigFloat::from_rational(Rational(1, int_pow(Integer(10), static_cast<unsigned long>(digits / 2))), prec);
  for (long n = 3; n <= gate_hi; ++n) {
    const BigFloat exact = vals[static_cast<std::size_t>(n)].evaluate(reg, prec);
    const BigFloat series = E_series(n, a, digits);
    const BigFloat err = (exact - series).abs();
    out.worst_gate_error = std::max(out.worst_gate_error, err);
    if (err > tol * std::max(BigFloat::from_integer(1, prec), series.abs()))
      throw Error(ErrorKind::ReconstructionFailed, "propagated triple misses E(" + std::to_string(n) + ", " +
                                                       std::to_string(a) + ") by " + err.to_decimal(6));
  }
  return out;
}

/// Exact coordinate sequences A(n), B(n), C(n) for n = 0..n_max.
struct BeukersSequences {
  std::vector<Rational> A, B, C;
};

inline BeukersSequences beukers_sequences(long a, const BeukersBase& base, long n_max) {
  const LinearRecurrence rec = beukers_recurrence(a);
  std::vector<Rational> a0, b0, c0;
  for (const auto& t : base.base) {
    a0.push_back(t.A);
    b0.push_back(t.B);
    c0.push_back(t.C);
  }
  return {evaluate_exact(rec, a0, n_max), evaluate_exact(rec, b0, n_max), evaluate_exact(rec, c0, n_max)};
}

// --------------------------------------------------------------------------

struct TripleDeltaReport {
  long n = 0;
  Integer C1, C2, C3;
  BigFloat delta;
  bool near_trivial = false;  // at most one nonzero coefficient
};

struct TripleDeltaSummary {
  long a = 0;
  ScalingRule rule;
  std::vector<TripleDeltaReport> reports;
  BigFloat coeff_growth;   // log max(|A|, |B|, |C|) / n at the top of the range
  BigFloat dominant_log;   // log of the dominant characteristic root
};

/// delta(n) = -log|C1 + C2 Li2(1/a) + C3 log((a-1)/a)| / log max|Ci| for the
/// integer-scaled triples. The combination equals factor(n) E(n, a) exactly,
/// so its size is taken from the series with no cancellation.
inline TripleDeltaSummary triple_delta(long a, long n_lo, long n_hi, long digits) {
  detail::require_beukers_a(a);
  if (n_lo < 0 || n_hi < n_lo) throw Error(ErrorKind::InvalidInput, "triple_delta needs 0 <= n_lo <= n_hi");
  const BeukersBase base = reconstruct_base(a, digits);
  const long n_max = std::max(n_hi, 40L);
  const BeukersSequences seq = beukers_sequences(a, base, n_max);
  TripleDeltaSummary out;
  out.a = a;
  out.rule = scaling_search(std::vector<std::vector<Rational>>{seq.A, seq.B, seq.C});
  const auto lcm = lcm_table(n_max * out.rule.lcm_stride + 1);
  const long prec = bits_for_digits(digits);
  for (long n = n_lo; n <= n_hi; ++n) {
    const auto i = static_cast<std::size_t>(n);
    TripleDeltaReport r;
    r.n = n;
    const Integer f = out.rule.factor(n, lcm);
    r.C1 = apply_scaling(out.rule, seq.A[i], n, lcm).get_num();
    r.C2 = apply_scaling(out.rule, seq.B[i], n, lcm).get_num();
    r.C3 = apply_scaling(out.rule, seq.C[i], n, lcm).get_num();
    r.near_trivial = (sgn(r.C1) != 0) + (sgn(r.C2) != 0) + (sgn(r.C3) != 0) <= 1;
    const Integer big = std::max({Integer(abs(r.C1)), Integer(abs(r.C2)), Integer(abs(r.C3))});
    if (big <= 1) {
      r.near_trivial = true;
      r.delta = BigFloat(Integer(0), 0, 64);
    } else {
      // Enough digits to resolve factor * E(n) relative to its own size.
      const BigFloat comb = BigFloat::from_integer(f, prec) * E_series(n, a, digits);
      r.delta = -(log(comb, prec) / log_integer(big, prec));
    }
    out.reports.push_back(r);
  }
  {
    const auto i = static_cast<std::size_t>(n_hi);
    const long p = 128;
    BigFloat m = std::max({BigFloat::from_rational(abs(seq.A[i]), p), BigFloat::from_rational(abs(seq.B[i]), p),
                           BigFloat::from_rational(abs(seq.C[i]), p)});
    out.coeff_growth = n_hi > 0 && !m.is_zero() ? log(m, p) / BigFloat::from_integer(n_hi, p) : BigFloat(Integer(0), 0, p);
    out.dominant_log = growth_rates(beukers_recurrence(a), 40).dominant_log;
  }
  return out;
}

/// Which reading of dilog makes E(0, a) = a dilog((a-1)/a): returns true when
/// dilog(z) = Li2(1 - z) matches (to 10^-(digits-20)), false when Li2(z)
/// matches; throws InternalCheckFailed when neither does.
inline bool dilog_is_shifted(long a, long digits) {
  const long prec = bits_for_digits(digits);
  const BigFloat e0 = E_series(0, a, digits);
  const BigFloat tol = BigFloat::from_rational(Rational(1, int_pow(Integer(10), static_cast<unsigned long>(digits - 20))), prec);
  const BigFloat A = BigFloat::from_integer(a, prec);
  const BigFloat shifted = A * dilog_rational(Rational(1, a), prec);
  const BigFloat plain = A * dilog_rational(Rational(a - 1, a), prec);
  if ((e0 - shifted).abs() < tol) return true;
  if ((e0 - plain).abs() < tol) return false;
  throw Error(ErrorKind::InternalCheckFailed, "E(0, a) matches neither dilog reading");
}

}  // namespace irr
