#pragma once

// Real root isolation by Sturm sequences and refinement by bisection with
// exact rational endpoints.

#include <algorithm>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/hiprec.hpp"

namespace irr {

/// A real root known to lie in [lo, hi]; lo == hi for exact rational roots.
struct RootEnclosure {
  Rational lo;
  Rational hi;
  BigFloat value;

  bool exact() const { return lo == hi; }
};

class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Sturm sequence of zero");
    // Only positive rescaling is allowed, signs carry the information.
    auto positive_primitive = [](const Polynomial& q) { return q * Rational(1 / rational_abs(content(q))); };
    seq_.push_back(positive_primitive(p));
    if (p.degree() == 0) return;
    seq_.push_back(positive_primitive(p.derivative()));
    while (seq_.back().degree() > 0) {
      Polynomial r = divmod(seq_[seq_.size() - 2], seq_.back()).remainder;
      if (r.is_zero()) break;
      seq_.push_back(positive_primitive(-r));
    }
  }

  /// Number of sign variations of the sequence at x.
  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& q : seq_) {
      int s = sgn(q(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Distinct real roots in the half-open interval (lo, hi].
  int count(const Rational& lo, const Rational& hi) const { return variations(lo) - variations(hi); }

 private:
  std::vector<Polynomial> seq_;
};

/// 1 + max |a_i / a_d|: every root has modulus below this.
inline Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, rational_abs(p.coeff(i) / p.leading()));
  return m + 1;
}

/// Number of distinct real roots of p in the closed interval [lo, hi].
inline int count_roots_closed(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.degree() <= 0) return 0;
  Polynomial sf = squarefree_part(p);
  SturmSequence st(sf);
  return st.count(lo, hi) + (is_zero(sf(lo)) ? 1 : 0);
}

namespace detail {

/// Shrinks (lo, hi] holding exactly one root of squarefree p until the root
/// is exact or lo, hi are nonzero with opposite signs.
inline void bracket_root(const Polynomial& p, const SturmSequence& st, Rational& lo, Rational& hi) {
  for (;;) {
    if (is_zero(p(hi))) {
      lo = hi;
      return;
    }
    if (!is_zero(p(lo))) return;  // sign change holds since the interval has one root
    Rational mid = (lo + hi) / 2;
    if (st.count(lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
}

/// Bisects a sign-change bracket until the width is at most |root| * 2^-bits
/// (absolute 2^-bits near zero).
inline void refine_bracket(const Polynomial& p, Rational& lo, Rational& hi, long bits) {
  if (lo == hi) return;
  const int slo = sgn(p(lo));
  const Rational unit = make_rational(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(bits));
  for (;;) {
    Rational scale = std::max(rational_abs(lo), rational_abs(hi));
    if (sgn(lo) != sgn(hi) || sgn(lo) == 0) scale = 1;
    if (hi - lo <= scale * unit) return;
    Rational mid = (lo + hi) / 2;
    const int sm = sgn(p(mid));
    if (sm == 0) {
      lo = hi = mid;
      return;
    }
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
}

}  // namespace detail

/// Isolates the distinct real roots of p (ascending), refined to `digits`
/// decimal digits. Non-real roots are ignored.
inline std::vector<RootEnclosure> real_roots(const Polynomial& p, int digits) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root isolation of zero");
  if (p.degree() < 1) return {};
  const Polynomial sf = primitive_part(squarefree_part(p));
  const SturmSequence st(sf);
  const Rational bound = cauchy_bound(sf);

  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}}, isolated;
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    int c = st.count(lo, hi);
    if (c == 0) continue;
    if (c == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    work.emplace_back(lo, mid);
    work.emplace_back(mid, hi);
  }
  std::sort(isolated.begin(), isolated.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  const long bits = bits_for_digits(digits);
  std::vector<RootEnclosure> out;
  for (auto [lo, hi] : isolated) {
    detail::bracket_root(sf, st, lo, hi);
    detail::refine_bracket(sf, lo, hi, bits);
    Rational mid = (lo + hi) / 2;
    out.push_back({lo, hi, BigFloat::from_rational(mid, bits)});
  }
  return out;
}

/// Like real_roots, but throws ComplexRootsPresent unless every root of the
/// squarefree part is real.
inline std::vector<RootEnclosure> isolate_real_roots(const Polynomial& p, int digits) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root isolation of zero");
  if (p.degree() < 1) throw Error(ErrorKind::InvalidInput, "root isolation needs degree >= 1");
  const Polynomial sf = squarefree_part(p);
  auto roots = real_roots(sf, digits);
  if (static_cast<int>(roots.size()) < sf.degree())
    throw Error(ErrorKind::ComplexRootsPresent, "polynomial " + p.to_string() + " has non-real roots");
  return roots;
}

/// Integer roots r >= 0 of p, ascending.
inline std::vector<long> nonnegative_integer_roots(const Polynomial& p) {
  std::vector<long> out;
  if (p.degree() < 1) return out;
  for (const auto& r : real_roots(p, 3)) {
    if (r.hi < 0) continue;
    Integer a, b;
    mpz_fdiv_q(a.get_mpz_t(), r.lo.get_num_mpz_t(), r.lo.get_den_mpz_t());
    mpz_cdiv_q(b.get_mpz_t(), r.hi.get_num_mpz_t(), r.hi.get_den_mpz_t());
    for (Integer z = std::max(a, Integer(0)); z <= b; ++z)
      if (is_zero(p(Rational(z)))) out.push_back(z.get_si());
  }
  return out;
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_rational_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_rational_between(-hi, -lo);
  // Continued fraction walk on 0 < lo <= hi.
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational frac_lo = lo - fl, frac_hi = hi - fl;
  Rational inner = simplest_rational_between(1 / frac_hi, 1 / frac_lo);
  return Rational(fl) + 1 / inner;
}

}  // namespace irr
