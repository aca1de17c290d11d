#pragma once

// Exact definite integrals of rational functions over Q, as ExactValues:
// polynomial part, Hermite (Horowitz-Ostrogradsky) reduction, factorization
// of the squarefree remainder into linear and quadratic factors over Q, and
// partial fractions into log and quadratic-integral atoms.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/linalg.hpp"
#include "irr/roots.hpp"
#include "irr/telescope.hpp"
#include "irr/value.hpp"

namespace irr {

struct HermiteReduction {
  RationalFunction rational_part;  // B / D1
  RationalFunction reduced;        // C / D2 with D2 squarefree
};

/// For proper num/den: num/den = (B/D1)' + C/D2 with D1 = gcd(den, den'),
/// D2 = den/D1, deg B < deg D1, deg C < deg D2.
inline HermiteReduction hermite_reduce(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Hermite reduction with zero denominator");
  if (num.degree() >= den.degree()) throw Error(ErrorKind::InvalidInput, "Hermite reduction needs a proper fraction");
  const Polynomial d1 = poly_gcd(den, den.derivative());
  const Polynomial d2 = exact_div(den, d1);
  const int m = d1.degree(), k = d2.degree();
  if (m == 0) return {RationalFunction(Polynomial(Var::x)), RationalFunction(num, den)};
  const Polynomial w = exact_div(d1.derivative() * d2, d1);
  // Columns: coefficients of B (m unknowns) then of C (k unknowns).
  const int rows = m + k;
  RationalMatrix a(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(m + k)));
  for (int j = 0; j < m; ++j) {
    Polynomial xj = Polynomial::monomial(1, static_cast<std::size_t>(j));
    Polynomial col = xj.derivative() * d2 - xj * w;
    for (int r = 0; r < rows; ++r) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = col.coeff(r);
  }
  for (int j = 0; j < k; ++j) {
    Polynomial col = Polynomial::monomial(1, static_cast<std::size_t>(j)) * d1;
    for (int r = 0; r < rows; ++r) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(m + j)] = col.coeff(r);
  }
  std::vector<Rational> rhs(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) rhs[static_cast<std::size_t>(r)] = num.coeff(r);
  std::vector<Rational> sol = solve_rational(a, rhs);
  Polynomial b(std::vector<Rational>(sol.begin(), sol.begin() + m), Var::x);
  Polynomial c(std::vector<Rational>(sol.begin() + m, sol.end()), Var::x);
  return {RationalFunction(b, d1), RationalFunction(c, d2)};
}

// --------------------------------------------------------------------------
// Factorization of squarefree polynomials over Q into degree <= 2 pieces.

struct QFactorization {
  Rational unit;                       // leading coefficient
  std::vector<Polynomial> linear;      // monic x - r
  std::vector<Polynomial> quadratic;   // monic, irreducible over Q
  std::vector<Polynomial> unsupported; // monic remainder of degree >= 3 (empty on success)
};

namespace detail {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;

inline Float50 to_float50(const Rational& q) {
  return Float50(q.get_num().get_str()) / Float50(q.get_den().get_str());
}

inline Rational from_float50(const Float50& v) {
  // Exact binary value of the float, as a rational.
  int e = 0;
  Float50 m = boost::multiprecision::frexp(v, &e);
  m = boost::multiprecision::ldexp(m, 170);
  Rational r(Integer(m.convert_to<boost::multiprecision::cpp_int>().str()));
  const long shift = e - 170;
  if (shift >= 0)
    r *= Rational(Integer(1) << static_cast<mp_bitcnt_t>(shift));
  else
    r /= Rational(Integer(1) << static_cast<mp_bitcnt_t>(-shift));
  return r;
}

/// All complex roots of a monic polynomial (Durand-Kerner, then a fixed
/// number of Newton polishing steps).
inline std::vector<Complex50> complex_roots(const Polynomial& monic_p) {
  const int d = monic_p.degree();
  std::vector<Complex50> coeffs;
  for (int i = 0; i <= d; ++i) coeffs.emplace_back(to_float50(monic_p.coeff(i)));
  auto eval = [&](const Complex50& z) {
    Complex50 acc = 0;
    for (int i = d; i >= 0; --i) acc = acc * z + coeffs[static_cast<std::size_t>(i)];
    return acc;
  };
  std::vector<Complex50> z;
  Complex50 seed(Float50("0.4"), Float50("0.9"));
  Complex50 cur = 1;
  Float50 radius = to_float50(cauchy_bound(monic_p));
  for (int i = 0; i < d; ++i) {
    z.push_back(cur * radius);
    cur *= seed;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    Float50 change = 0;
    for (int i = 0; i < d; ++i) {
      Complex50 denom = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      Complex50 step = eval(z[static_cast<std::size_t>(i)]) / denom;
      z[static_cast<std::size_t>(i)] -= step;
      change = std::max(change, Float50(abs(step)));
    }
    if (change < Float50("1e-45")) break;
  }
  return z;
}

/// Rational within a relative 1e-30 window of v with the smallest denominator.
inline Rational reconstruct_rational(const Float50& v) {
  Float50 tol = Float50("1e-30") * std::max(Float50(1), Float50(abs(v)));
  return simplest_rational_between(from_float50(v - tol), from_float50(v + tol));
}

}  // namespace detail

/// Splits a squarefree polynomial over Q into monic linear and irreducible
/// quadratic factors; anything left over goes to `unsupported`.
inline QFactorization factor_over_q(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factorization of zero");
  QFactorization out{p.leading(), {}, {}, {}};
  Polynomial g = monic(p);
  // Rational roots: isolate, refine below the spacing of rationals with
  // denominator | lc, and take the simplest rational of the enclosure.
  {
    const Polynomial prim = primitive_part(g);
    const Integer lc = prim.leading().get_num();
    const int digits = static_cast<int>(2 * mpz_sizeinbase(lc.get_mpz_t(), 10)) + 4;
    for (const auto& r : real_roots(g, digits)) {
      Rational cand = r.exact() ? r.lo : simplest_rational_between(r.lo, r.hi);
      if (is_zero(g(cand))) {
        Polynomial lin({Rational(-cand), Rational(1)});
        out.linear.push_back(lin);
        g = exact_div(g, lin);
      }
    }
  }
  // Quadratic factors over Q: pair up numerical roots.
  while (g.degree() > 2) {
    auto z = detail::complex_roots(g);
    bool split = false;
    for (std::size_t i = 0; i < z.size() && !split; ++i)
      for (std::size_t j = i + 1; j < z.size() && !split; ++j) {
        detail::Complex50 s = z[i] + z[j], pr = z[i] * z[j];
        if (abs(s.imag()) > detail::Float50("1e-30") || abs(pr.imag()) > detail::Float50("1e-30")) continue;
        Rational b = -detail::reconstruct_rational(s.real());
        Rational c = detail::reconstruct_rational(pr.real());
        Polynomial q({c, b, Rational(1)});
        auto dm = divmod(g, q);
        if (!dm.remainder.is_zero()) continue;
        out.quadratic.push_back(q);
        g = monic(dm.quotient);
        split = true;
      }
    if (!split) break;
  }
  if (g.degree() == 2)
    out.quadratic.push_back(g);
  else if (g.degree() >= 3)
    out.unsupported.push_back(g);
  return out;
}

// --------------------------------------------------------------------------

namespace detail {

inline Rational integrate_polynomial(const Polynomial& q, const Rational& lo, const Rational& hi) {
  std::vector<Rational> anti{Rational(0)};
  for (int i = 0; i <= q.degree(); ++i) anti.push_back(q.coeff(i) / (i + 1));
  Polynomial a(std::move(anti), Var::x);
  return a(hi) - a(lo);
}

}  // namespace detail

/// Exact value of the integral of f over [lo, hi].
inline ExactValue integrate_rational(const RationalFunction& f, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidInput, "integration interval needs lo < hi");
  const Polynomial& num = f.num();
  const Polynomial& den = f.den();
  if (count_roots_closed(den, lo, hi) > 0)
    throw Error(ErrorKind::PoleOnPath, "integrand has a pole in [" + lo.get_str() + ", " + hi.get_str() + "]");
  auto [quot, rem] = divmod(num.with_var(Var::x), den.with_var(Var::x));
  ExactValue out(detail::integrate_polynomial(quot, lo, hi));
  if (rem.is_zero()) return out;

  HermiteReduction hr = hermite_reduce(rem, den.with_var(Var::x));
  out += ExactValue(hr.rational_part(hi) - hr.rational_part(lo));
  const Polynomial& c = hr.reduced.num();
  const Polynomial& d2 = hr.reduced.den();
  if (c.is_zero()) return out;

  QFactorization fac = factor_over_q(d2);
  if (!fac.unsupported.empty())
    throw Error(ErrorKind::UnsupportedDenominator,
                "irreducible factor of degree >= 3 over Q: " + fac.unsupported.front().to_string());
  std::vector<Polynomial> factors = fac.linear;
  factors.insert(factors.end(), fac.quadratic.begin(), fac.quadratic.end());
  const Polynomial scaled_c = c * Rational(1 / fac.unit);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Polynomial& fi = factors[i];
    Polynomial rest = Polynomial::constant(1);
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) rest *= factors[j];
    ExtendedGcd eg = poly_ext_gcd(rest, fi);
    Polynomial ni = divmod(scaled_c * eg.s, fi).remainder;
    if (ni.is_zero()) continue;
    if (fi.degree() == 1) {
      const Rational rho = -fi.coeff(0);
      out += ExactValue::log_of((hi - rho) / (lo - rho)) * ni.coeff(0);
    } else {
      const Rational beta = fi.coeff(1);
      const Rational dcoef = ni.coeff(1), bcoef = ni.coeff(0);
      if (!is_zero(dcoef)) out += ExactValue::log_of(fi(hi) / fi(lo)) * Rational(dcoef / 2);
      const Rational tcoef = bcoef - dcoef * beta / 2;
      if (!is_zero(tcoef)) out += ExactValue::of_atom(Atom::quad_integral(fi, lo, hi), tcoef);
    }
  }
  return out;
}

/// R^n S as a rational function.
inline RationalFunction kernel_integrand(const HyperexponentialKernel& k, unsigned n) {
  return RationalFunction(k.R.num().pow(n) * k.S.num(), k.R.den().pow(n) * k.S.den());
}

/// I(n) for n = 0..count-1.
inline std::vector<ExactValue> initial_values(const HyperexponentialKernel& k, int count) {
  k.validate();
  std::vector<ExactValue> out;
  for (int n = 0; n < count; ++n) out.push_back(integrate_rational(kernel_integrand(k, static_cast<unsigned>(n)), k.lo, k.hi));
  return out;
}

}  // namespace irr
