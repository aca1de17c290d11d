#pragma once

// Creative telescoping for hyperexponential kernels F(n, x) = R(x)^n S(x):
// find p_0(n), ..., p_L(n) and a certificate Q(n, x) with
//   sum_i p_i(n) F(n+i, x) = d/dx [Q(n, x) F(n, x)],
// then check the identity exactly and find where the boundary terms vanish.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/linalg.hpp"
#include "irr/recurrence.hpp"
#include "irr/roots.hpp"

namespace irr {

struct HyperexponentialKernel {
  RationalFunction R;
  RationalFunction S;
  Rational lo;
  Rational hi;

  /// Throws InvalidInput for an empty interval or R = 0, PoleOnPath when R or
  /// S has a pole in [lo, hi].
  void validate() const {
    if (!(lo < hi)) throw Error(ErrorKind::InvalidInput, "kernel interval needs lo < hi");
    if (R.is_zero()) throw Error(ErrorKind::InvalidInput, "kernel base R is identically zero");
    if (S.is_zero()) throw Error(ErrorKind::InvalidInput, "kernel cofactor S is identically zero");
    auto check = [&](const Polynomial& den, const char* what) {
      if (count_roots_closed(den, lo, hi) > 0)
        throw Error(ErrorKind::PoleOnPath, std::string(what) + " has a pole in [" + lo.get_str() + ", " + hi.get_str() +
                                               "]: denominator " + den.to_string());
    };
    check(R.den(), "R");
    check(S.den(), "S");
  }
};

/// Q(n, x) = num(n, x) / (den_n(n) * den_x(x)).
struct TelescoperCertificate {
  BiPolynomial num;
  Polynomial den_n;
  Polynomial den_x;
};

struct TelescoperResult {
  LinearRecurrence recurrence;
  TelescoperCertificate certificate;
  std::optional<long> min_valid_n;  // nullopt when boundary terms never vanish
};

// --------------------------------------------------------------------------
// Q[n][x] helpers.

namespace detail {

inline BiPolynomial lift_x(const Polynomial& p) {
  std::vector<Polynomial> cs;
  cs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) cs.push_back(Polynomial::constant(c, Var::n));
  return BiPolynomial(std::move(cs), Var::x);
}

inline BiPolynomial times_x_poly(const BiPolynomial& a, const Polynomial& p) { return a * lift_x(p); }

/// Division in Q[n][x] by a polynomial in x alone (leading coefficient in Q).
inline std::pair<BiPolynomial, BiPolynomial> divmod_by_x_poly(const BiPolynomial& a, const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  std::vector<Polynomial> rem(a.coeffs());
  const int df = f.degree();
  if (a.degree() < df) return {BiPolynomial(Var::x), a};
  std::vector<Polynomial> q(static_cast<std::size_t>(a.degree() - df + 1), Polynomial(Var::n));
  const Rational inv = 1 / f.leading();
  for (int i = a.degree(); i >= df; --i) {
    Polynomial t = rem[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - df)] = t;
    if (t.is_zero()) continue;
    for (int j = 0; j <= df; ++j)
      if (!is_zero(f.coeff(j))) rem[static_cast<std::size_t>(i - df + j)] -= t * f.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(df));
  return {BiPolynomial(std::move(q), Var::x), BiPolynomial(std::move(rem), Var::x)};
}

/// Multiplicity of f as a factor of a over Q(n)[x] (a nonzero).
inline int bipoly_multiplicity(BiPolynomial a, const Polynomial& f) {
  if (f.degree() <= 0 || a.is_zero()) return 0;
  int m = 0;
  for (;;) {
    auto [q, r] = divmod_by_x_poly(a, f);
    if (!r.is_zero()) return m;
    a = std::move(q);
    ++m;
  }
}

/// Specialization n -> t, giving a polynomial in x.
inline Polynomial specialize_n(const BiPolynomial& a, const Rational& t) {
  std::vector<Rational> cs;
  for (const auto& c : a.coeffs()) cs.push_back(c(t));
  return Polynomial(std::move(cs), Var::x);
}

/// The logarithmic derivative n R'/R + S'/S as Lnum(n, x) / Lden(x).
struct LogDerivative {
  BiPolynomial num;
  Polynomial den;
};

inline LogDerivative log_derivative(const HyperexponentialKernel& k) {
  const Polynomial &r1 = k.R.num(), &r2 = k.R.den(), &s1 = k.S.num(), &s2 = k.S.den();
  RationalFunction rl(r1.derivative() * r2 - r1 * r2.derivative(), r1 * r2);
  RationalFunction sl(s1.derivative() * s2 - s1 * s2.derivative(), s1 * s2);
  Polynomial den = poly_lcm(rl.den(), sl.den());
  Polynomial a = rl.num() * exact_div(den, rl.den());
  Polynomial b = sl.num() * exact_div(den, sl.den());
  const int deg = std::max(a.degree(), b.degree());
  std::vector<Polynomial> cs;
  for (int i = 0; i <= deg; ++i) cs.push_back(Polynomial({b.coeff(i), a.coeff(i)}, Var::n));
  return {BiPolynomial(std::move(cs), Var::x), den};
}

/// sum_i p_i(n) r1^i r2^(L-i) in Q[n][x].
inline BiPolynomial shifted_power_sum(const std::vector<Polynomial>& p, const Polynomial& r1, const Polynomial& r2) {
  const std::size_t L = p.size() - 1;
  BiPolynomial acc(Var::x);
  for (std::size_t i = 0; i <= L; ++i) {
    Polynomial term = r1.pow(static_cast<unsigned>(i)) * r2.pow(static_cast<unsigned>(L - i));
    std::vector<Polynomial> cs;
    for (const auto& c : term.coeffs()) cs.push_back(p[i] * c);
    acc += BiPolynomial(std::move(cs), Var::x);
  }
  return acc;
}

inline Polynomial universal_denominator(const HyperexponentialKernel& k, int order) {
  const Polynomial &r1 = k.R.num(), &r2 = k.R.den(), &s1 = k.S.num();
  Polynomial d = exact_div(r2.pow(static_cast<unsigned>(order)), squarefree_part(r2));
  if (s1.degree() > 0) d *= remove_common_factors(s1, r1 * r2);
  return monic(d);
}

/// x-degree of P tolerated before slack.
inline int numerator_degree_bound(const HyperexponentialKernel& k, int order, const Polynomial& D) {
  const int delta = k.R.num().degree() - k.R.den().degree();
  const int sigma = k.S.num().degree() - k.S.den().degree();
  const int growth = 1 + std::max(0, order * delta);
  const int homogeneous = delta == 0 ? -sigma : 0;
  return D.degree() + std::max(growth, homogeneous);
}

struct OrderAttempt {
  std::vector<Polynomial> a;  // a_0..a_L
  BiPolynomial P;
};

inline int total_degree(const std::vector<Polynomial>& ps) {
  int d = 0;
  for (const auto& p : ps) d += std::max(0, p.degree());
  return d;
}

/// Solves for P (deg <= dP) and a_0..a_L; returns the minimal-degree solution.
inline std::optional<OrderAttempt> attempt_order(const HyperexponentialKernel& k, const LogDerivative& lg, int L,
                                                  const Polynomial& D, int dP) {
  const Polynomial &r1 = k.R.num(), &r2 = k.R.den();
  const Polynomial r2L = r2.pow(static_cast<unsigned>(L));
  const Polynomial base = r2L * lg.den;  // multiplies (P'D - PD')
  const BiPolynomial lnum_term = times_x_poly(lg.num, r2L * D);
  const Polynomial dD = D.derivative();
  std::vector<BiPolynomial> columns;
  for (int j = 0; j <= dP; ++j) {
    Polynomial xj = Polynomial::monomial(1, static_cast<std::size_t>(j));
    Polynomial t1 = base * (xj.derivative() * D - xj * dD);
    columns.push_back(lift_x(t1) + lnum_term * lift_x(xj));
  }
  const Polynomial d2l = D * D * lg.den;
  for (int i = 0; i <= L; ++i) {
    Polynomial t = d2l * r1.pow(static_cast<unsigned>(i)) * r2.pow(static_cast<unsigned>(L - i));
    columns.push_back(lift_x(-t));
  }
  int rows = 0;
  for (const auto& c : columns) rows = std::max(rows, c.degree() + 1);
  PolyMatrix m(static_cast<std::size_t>(rows), std::vector<Polynomial>(columns.size(), Polynomial(Var::n)));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (int r = 0; r <= columns[j].degree(); ++r)
      m[static_cast<std::size_t>(r)][j] = columns[j].coeff(r).with_var(Var::n);

  std::vector<std::vector<Polynomial>> candidates = nullspace_over_qn(m);
  // Basis vectors may each have a_0 = 0 or a_L = 0 while a combination has
  // neither; add a few combinations with distinct integer weights.
  if (candidates.size() > 1) {
    const std::size_t dim = candidates.size();
    for (long base_w : {1L, 2L, 3L}) {
      std::vector<Polynomial> comb(candidates[0].size(), Polynomial(Var::n));
      Rational w = 1;
      for (std::size_t b = 0; b < dim; ++b, w *= base_w)
        for (std::size_t e = 0; e < comb.size(); ++e) comb[e] += candidates[b][e] * Rational(w + Rational(b));
      candidates.push_back(primitive_vector(std::move(comb)));
    }
  }
  std::optional<OrderAttempt> best;
  int best_deg = 0;
  for (auto& v : candidates) {
    std::vector<Polynomial> a(v.begin() + dP + 1, v.end());
    if (a.front().is_zero() || a.back().is_zero()) continue;
    const int deg = total_degree(a);
    if (best && deg >= best_deg) continue;
    best_deg = deg;
    best = OrderAttempt{a, BiPolynomial(std::vector<Polynomial>(v.begin(), v.begin() + dP + 1), Var::x)};
  }
  return best;
}

}  // namespace detail

/// Exact check of Q' + Q (n R'/R + S'/S) = sum_i p_i(n) R^i after clearing
/// denominators, plus the same identity at two specializations of n computed
/// directly with rational functions in x.
inline bool verify_certificate(const HyperexponentialKernel& k, const LinearRecurrence& rec,
                               const TelescoperCertificate& cert) {
  if (cert.den_n.is_zero() || cert.den_x.is_zero()) return false;
  const int L = rec.order();
  const Polynomial &r1 = k.R.num(), &r2 = k.R.den();
  const detail::LogDerivative lg = detail::log_derivative(k);
  const Polynomial& D = cert.den_x;
  const BiPolynomial& P = cert.num;
  const BiPolynomial lhs_inner = detail::times_x_poly(P.derivative(), D * lg.den) -
                                 detail::times_x_poly(P, D.derivative() * lg.den) +
                                 detail::times_x_poly(lg.num * P, D);
  const BiPolynomial lhs = detail::times_x_poly(lhs_inner, r2.pow(static_cast<unsigned>(L)));
  const BiPolynomial sum = detail::shifted_power_sum(rec.coeffs(), r1, r2);
  const BiPolynomial rhs = detail::times_x_poly(sum, D * D * lg.den).scaled(cert.den_n.with_var(Var::n));
  if (!(lhs == rhs)) return false;

  for (const Rational& t : {Rational(7919, 13), Rational(-104729, 3)}) {
    const Rational h = cert.den_n(t);
    if (is_zero(h)) continue;
    RationalFunction Q(detail::specialize_n(P, t), D * h);
    RationalFunction Lg = RationalFunction(Polynomial::constant(t)) * k.R.derivative() / k.R + k.S.derivative() / k.S;
    RationalFunction lhs_t = Q.derivative() + Q * Lg;
    RationalFunction rhs_t;
    RationalFunction Rpow = RationalFunction(Polynomial::constant(1));
    for (int i = 0; i <= L; ++i) {
      rhs_t = rhs_t + RationalFunction(Polynomial::constant(rec.coeff(i)(t))) * Rpow;
      Rpow = Rpow * k.R;
    }
    if (!(lhs_t == rhs_t)) return false;
  }
  return true;
}

/// Smallest n0 >= 0 with Q R^n S continuous on [lo, hi] and zero at both
/// endpoints for every n >= n0. Throws NeverVanishes.
inline long boundary_vanishing_check(const HyperexponentialKernel& k, const TelescoperResult& res) {
  const auto& cert = res.certificate;
  const Polynomial &r1 = k.R.num(), &r2 = k.R.den(), &s1 = k.S.num(), &s2 = k.S.den();
  long n0 = 0;
  for (const Rational& e : {k.lo, k.hi}) {
    const Polynomial lin({Rational(-e), Rational(1)});
    const long ord_r = root_multiplicity(r1, e) - root_multiplicity(r2, e);
    const long ord_s = root_multiplicity(s1, e) - root_multiplicity(s2, e);
    const long pole_q = root_multiplicity(cert.den_x, e) - detail::bipoly_multiplicity(cert.num, lin);
    const long fixed = ord_s - pole_q;  // order of Q S at e
    if (ord_r <= 0) {
      if (ord_r == 0 && fixed >= 1) continue;
      throw Error(ErrorKind::NeverVanishes,
                  "R does not vanish at endpoint " + e.get_str() + ", boundary term Q R^n S survives");
    }
    // n * ord_r + fixed >= 1
    const long need = 1 - fixed;
    const long n_e = need <= 0 ? 0 : (need + ord_r - 1) / ord_r;
    n0 = std::max(n0, n_e);
  }
  // Interior poles of Q that S does not cancel.
  for (const auto& f : squarefree_factorization(cert.den_x).factors) {
    int inside = count_roots_closed(f.factor, k.lo, k.hi);
    if (is_zero(f.factor(k.lo))) --inside;
    if (is_zero(f.factor(k.hi))) --inside;
    if (inside <= 0) continue;
    int cancelled = detail::bipoly_multiplicity(cert.num, f.factor);
    Polynomial s = s1;
    while (s.degree() > 0 && divmod(s, f.factor).remainder.is_zero()) {
      s = exact_div(s, f.factor);
      ++cancelled;
    }
    if (f.multiplicity > cancelled)
      throw Error(ErrorKind::NeverVanishes, "certificate has a pole inside the interval at a root of " + f.factor.to_string());
  }
  // Q is undefined where den_n vanishes.
  const Polynomial& h = cert.den_n;
  if (h.degree() > 0) {
    for (long r : nonnegative_integer_roots(h)) n0 = std::max(n0, r + 1);
  }
  return n0;
}

/// Minimal-order telescoper for the kernel, ascending L = 1..max_order.
/// Throws NoRecurrenceFound (detail = max_order) or PoleOnPath.
inline TelescoperResult derive_recurrence(const HyperexponentialKernel& k, int max_order = 6) {
  if (max_order < 1) throw Error(ErrorKind::InvalidInput, "max_order must be >= 1");
  k.validate();
  const detail::LogDerivative lg = detail::log_derivative(k);
  for (int L = 1; L <= max_order; ++L) {
    const Polynomial D = detail::universal_denominator(k, L);
    const int base = detail::numerator_degree_bound(k, L, D);
    std::optional<detail::OrderAttempt> found;
    for (int slack : {2, 8}) {
      found = detail::attempt_order(k, lg, L, D, std::max(0, base + slack));
      if (found) break;
    }
    if (!found) continue;
    LinearRecurrence rec(found->a);
    Polynomial h = exact_div(found->a.back(), rec.coeffs().back());
    TelescoperResult res{rec, {found->P, h.with_var(Var::n), D}, std::nullopt};
    if (!verify_certificate(k, res.recurrence, res.certificate))
      throw Error(ErrorKind::InternalCheckFailed, "derived certificate fails verification");
    try {
      res.min_valid_n = boundary_vanishing_check(k, res);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NeverVanishes) throw;
    }
    return res;
  }
  throw Error(ErrorKind::NoRecurrenceFound, "no recurrence of order <= " + std::to_string(max_order), max_order);
}

}  // namespace irr
