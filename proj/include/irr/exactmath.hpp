#pragma once

// Exact arithmetic over Q: dense polynomials (generic in the coefficient
// ring, so Q[x], Q[n] and Q[n][x] share one implementation), rational
// functions in canonical form, gcd / squarefree decomposition and lcm(1..n).

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "irr/errors.hpp"

namespace irr {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Var : char { x = 'x', n = 'n', N = 'N' };

inline char var_char(Var v) { return static_cast<char>(v); }

inline bool is_zero(const Integer& z) { return sgn(z) == 0; }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational rational_abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

template <class C>
class Poly;
template <class C>
bool is_zero(const Poly<C>& p);

namespace detail {

template <class C>
struct ring_traits;

template <>
struct ring_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
};

template <class C>
struct ring_traits<Poly<C>> {
  static Poly<C> zero() { return Poly<C>(); }
  static Poly<C> one() { return Poly<C>::constant(ring_traits<C>::one()); }
};

}  // namespace detail

/// Dense univariate polynomial, coefficient index = degree.
///
/// The zero polynomial has an empty coefficient list and degree -1. Constants
/// are compatible with any variable tag; combining two non-constant
/// polynomials in different variables throws VariableMismatch.
template <class C>
class Poly {
 public:
  using coeff_type = C;

  Poly() = default;
  explicit Poly(Var v) : var_(v) {}
  Poly(std::vector<C> coeffs, Var v = Var::x) : c_(std::move(coeffs)), var_(v) { trim(); }
  Poly(std::initializer_list<C> coeffs, Var v = Var::x) : c_(coeffs), var_(v) { trim(); }

  static Poly constant(const C& c, Var v = Var::x) { return Poly(std::vector<C>{c}, v); }
  static Poly monomial(const C& c, std::size_t deg, Var v = Var::x) {
    std::vector<C> cs(deg + 1, detail::ring_traits<C>::zero());
    cs[deg] = c;
    return Poly(std::move(cs), v);
  }
  static Poly variable(Var v) { return monomial(detail::ring_traits<C>::one(), 1, v); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Var var() const { return var_; }
  const std::vector<C>& coeffs() const { return c_; }

  C coeff(int i) const {
    if (i < 0 || i > degree()) return detail::ring_traits<C>::zero();
    return c_[static_cast<std::size_t>(i)];
  }
  const C& leading() const { return c_.back(); }

  Poly with_var(Var v) const {
    Poly r = *this;
    r.var_ = v;
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(var_);
    std::vector<C> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return Poly(std::move(d), var_);
  }

  /// Horner evaluation; the accumulator has the coefficient type.
  template <class T>
  C operator()(const T& x) const {
    C acc = detail::ring_traits<C>::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = C(acc * x) + *it;
    return acc;
  }

  /// Evaluation into an arbitrary numeric type via a coefficient conversion.
  template <class T, class Conv>
  T eval_with(const T& x, Conv conv) const {
    T acc = conv(detail::ring_traits<C>::zero());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + conv(*it);
    return acc;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    var_ = merge_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), detail::ring_traits<C>::zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    var_ = merge_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), detail::ring_traits<C>::zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Var v = a.merge_var(b);
    if (a.is_zero() || b.is_zero()) return Poly(v);
    std::vector<C> r(a.c_.size() + b.c_.size() - 1, detail::ring_traits<C>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (irr::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), v);
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Multiplication by a Rational scalar (works for every coefficient ring here).
  friend Poly operator*(Poly a, const Rational& s) {
    if (irr::is_zero(s)) return Poly(a.var_);
    for (auto& c : a.c_) c = C(c * s);
    a.trim();
    return a;
  }
  friend Poly operator*(const Rational& s, Poly a) { return std::move(a) * s; }

  /// Multiplication by a coefficient-ring scalar.
  Poly scaled(const C& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c = C(c * s);
    r.trim();
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result = Poly::constant(detail::ring_traits<C>::one(), var_);
    Poly base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  /// Shift by x^k.
  Poly shifted_up(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<C> r(k, detail::ring_traits<C>::zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(std::move(r), var_);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim() {
    while (!c_.empty() && irr::is_zero(c_.back())) c_.pop_back();
  }
  Var merge_var(const Poly& o) const {
    if (is_constant()) return o.is_constant() ? var_ : o.var_;
    if (o.is_constant()) return var_;
    if (var_ != o.var_) throw Error(ErrorKind::VariableMismatch, "polynomials in different variables");
    return var_;
  }

  std::vector<C> c_;
  Var var_ = Var::x;
};

template <class C>
bool is_zero(const Poly<C>& p) {
  return p.is_zero();
}

using Polynomial = Poly<Rational>;
using BiPolynomial = Poly<Polynomial>;  // Q[n][x]: coefficients in x are polynomials in n

inline std::string to_string(const Rational& q) { return q.get_str(); }

template <class C>
std::string Poly<C>::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const C& c = c_[static_cast<std::size_t>(i)];
    if (irr::is_zero(c)) continue;
    std::string cs;
    if constexpr (std::is_same_v<C, Rational>) {
      cs = c.get_str();
    } else {
      cs = "(" + c.to_string() + ")";
    }
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << cs;
    } else {
      if (!(cs == "1")) os << cs << "*";
      os << var_char(var_);
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

/// Convenience constructor for Q[var] from integer coefficients.
inline Polynomial poly_from_ints(std::initializer_list<long> cs, Var v = Var::x) {
  std::vector<Rational> r;
  r.reserve(cs.size());
  for (long c : cs) r.emplace_back(c);
  return Polynomial(std::move(r), v);
}

// --------------------------------------------------------------------------
// Field operations on Q[var].

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

inline PolyDivision divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  Var v = a.is_constant() ? b.var() : a.var();
  if (a.degree() < b.degree()) return {Polynomial(v), a};
  std::vector<Rational> rem(a.coeffs());
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational& lb = b.leading();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[static_cast<std::size_t>(i)] / lb;
    q[static_cast<std::size_t>(i - db)] = f;
    if (is_zero(f)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q), v), Polynomial(std::move(rem), v)};
}

/// Exact division; throws InternalCheckFailed if b does not divide a.
inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorKind::InternalCheckFailed, "inexact polynomial division");
  return q;
}

inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading());
}

/// Rational content c with p = c * primitive(p), primitive(p) having coprime
/// integer coefficients and positive leading coefficient.
inline Rational content(const Polynomial& p) {
  if (p.is_zero()) return Rational(0);
  Integer g = 0, l = 1;
  for (const auto& c : p.coeffs()) {
    if (is_zero(c)) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r = make_rational(g, l);
  if (sgn(p.leading()) < 0) r = -r;
  return r;
}

inline Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / content(p));
}

namespace detail {

// Pseudo-remainder of integer-coefficient polynomials.
inline Polynomial pseudo_rem(Polynomial a, const Polynomial& b) {
  const int db = b.degree();
  const Rational lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    Rational la = a.leading();
    a = a * lb - Polynomial::monomial(la, static_cast<std::size_t>(a.degree() - db), b.var()) * b;
  }
  return a;
}

}  // namespace detail

/// Monic gcd (primitive PRS over Z to keep coefficient growth down).
inline Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
  if (!p.is_constant() && !q.is_constant() && p.var() != q.var())
    throw Error(ErrorKind::VariableMismatch, "poly_gcd of polynomials in different variables");
  Var v = p.is_constant() ? q.var() : p.var();
  if (p.is_zero()) return monic(q).with_var(v);
  if (q.is_zero()) return monic(p).with_var(v);
  Polynomial a = primitive_part(p), b = primitive_part(q);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Polynomial r = detail::pseudo_rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return monic(a).with_var(v);
}

inline Polynomial poly_lcm(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial(p.var());
  return monic(exact_div(p * q, poly_gcd(p, q)));
}

struct ExtendedGcd {
  Polynomial g, s, t;  // s*a + t*b = g, g monic
};

inline ExtendedGcd poly_ext_gcd(const Polynomial& a, const Polynomial& b) {
  Var v = a.is_constant() ? b.var() : a.var();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(1, v), s1(v);
  Polynomial t0(v), t1 = Polynomial::constant(1, v);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

struct SquarefreeFactor {
  Polynomial factor;  // monic, squarefree
  int multiplicity;
};

struct SquarefreeFactorization {
  Rational unit;
  std::vector<SquarefreeFactor> factors;  // pairwise coprime, ascending multiplicity
};

/// Yun's algorithm over Q.
inline SquarefreeFactorization squarefree_factorization(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "squarefree factorization of zero");
  SquarefreeFactorization out{p.leading(), {}};
  if (p.degree() == 0) return out;
  Polynomial f = monic(p);
  Polynomial fp = f.derivative();
  Polynomial a = poly_gcd(f, fp);
  Polynomial b = exact_div(f, a);
  Polynomial c = exact_div(fp, a);
  Polynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Polynomial g = poly_gcd(b, d);
    if (g.degree() > 0) out.factors.push_back({g, i});
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "squarefree part of zero");
  if (p.degree() <= 0) return Polynomial::constant(1, p.var());
  return monic(exact_div(p, poly_gcd(p, p.derivative())));
}

/// Multiplicity of x = r as a root of p (p nonzero).
inline int root_multiplicity(Polynomial p, const Rational& r) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root multiplicity in zero polynomial");
  Polynomial lin({Rational(-r), Rational(1)}, p.var());
  int m = 0;
  while (p.degree() > 0 && is_zero(p(r))) {
    p = exact_div(p, lin);
    ++m;
  }
  return m;
}

/// Removes from p every factor it shares with q (including multiplicity).
inline Polynomial remove_common_factors(Polynomial p, const Polynomial& q) {
  for (;;) {
    Polynomial g = poly_gcd(p, q);
    if (g.degree() <= 0) return p;
    p = exact_div(p, g);
  }
}

// --------------------------------------------------------------------------
// Rational functions over Q.

/// Canonical form: gcd(num, den) = 1 and den has coprime integer coefficients
/// with positive leading coefficient. Structural equality is then equality.
class RationalFunction {
 public:
  RationalFunction() : num_(Var::x), den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1, num_.var())) {  // NOLINT
    canonicalize();
  }
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "rational function with zero denominator");
    canonicalize();
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  Var var() const { return den_.is_constant() ? num_.var() : den_.var(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  Rational operator()(const Rational& x) const {
    Rational d = den_(x);
    if (irr::is_zero(d)) throw Error(ErrorKind::PoleOnPath, "evaluation at a pole");
    return num_(x) / d;
  }

  RationalFunction derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
  }

  RationalFunction pow(unsigned e) const { return {num_.pow(e), den_.pow(e)}; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFunction operator-() const { return {-num_, den_}; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void canonicalize() {
    Var v = var();
    if (num_.is_zero()) {
      num_ = Polynomial(v);
      den_ = Polynomial::constant(1, v);
      return;
    }
    if (den_.degree() > 0) {
      Polynomial g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    Rational c = content(den_);
    Rational inv = 1 / c;
    num_ = (num_ * inv).with_var(v);
    den_ = (den_ * inv).with_var(v);
  }

  Polynomial num_;
  Polynomial den_;
};

// --------------------------------------------------------------------------
// Integers.

/// Primes up to `limit` (inclusive) by the sieve of Eratosthenes.
inline std::vector<unsigned long> primes_upto(unsigned long limit) {
  std::vector<unsigned long> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (unsigned long p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (unsigned long m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return out;
}

/// lcm(1, 2, ..., n) = prod over primes p <= n of p^floor(log_p n).
inline Integer lcm_upto(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "lcm_upto requires n >= 1");
  Integer r = 1;
  for (unsigned long p : primes_upto(static_cast<unsigned long>(n))) {
    unsigned long pk = p;
    while (pk <= static_cast<unsigned long>(n) / p) pk *= p;
    r *= pk;
  }
  return r;
}

/// Table L[k] = lcm(1..k) for k = 0..n with L[0] = 1.
inline std::vector<Integer> lcm_table(long n) {
  std::vector<Integer> out(static_cast<std::size_t>(std::max(0L, n)) + 1);
  out[0] = 1;
  for (long k = 1; k <= n; ++k) {
    Integer& cur = out[static_cast<std::size_t>(k)];
    mpz_lcm_ui(cur.get_mpz_t(), out[static_cast<std::size_t>(k - 1)].get_mpz_t(), static_cast<unsigned long>(k));
  }
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer int_pow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rational rational_pow(const Rational& b, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), e);
  return make_rational(n, d);
}

/// Parses "p", "-p" or "p/q" into a canonical Rational.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidInput, "not a rational number: '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace irr
