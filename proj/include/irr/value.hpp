#pragma once

// Exact values over Q-linear combinations of transcendental atoms:
//   rational + sum coord * atom,
// atoms being logs of primes, integrals of 1/P over an interval for a
// quadratic P, and dilogarithms of rationals.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/hiprec.hpp"
#include "irr/linalg.hpp"

namespace irr {

enum class AtomKind { Log, QuadIntegral, Dilog };

/// One transcendental constant. Log(p) has p > 1 prime, or a composite that
/// trial division could not split and that is not a perfect power.
/// QuadIntegral is the integral of 1/P over [lo, hi] for monic quadratic P
/// without roots in the interval. Dilog(r) is Li2(r).
struct Atom {
  AtomKind kind = AtomKind::Log;
  Integer log_arg = 2;
  Polynomial quad;
  Rational lo, hi;
  Rational dilog_arg;

  static Atom log(const Integer& p) {
    Atom a;
    a.kind = AtomKind::Log;
    a.log_arg = p;
    return a;
  }
  static Atom quad_integral(const Polynomial& monic_quadratic, const Rational& lo, const Rational& hi) {
    if (monic_quadratic.degree() != 2 || monic_quadratic.leading() != 1)
      throw Error(ErrorKind::InvalidInput, "quadratic atom needs a monic quadratic");
    Atom a;
    a.kind = AtomKind::QuadIntegral;
    a.quad = monic_quadratic.with_var(Var::x);
    a.lo = lo;
    a.hi = hi;
    return a;
  }
  static Atom dilog(const Rational& r) {
    Atom a;
    a.kind = AtomKind::Dilog;
    a.log_arg = 0;
    a.dilog_arg = r;
    return a;
  }

  std::string to_string() const {
    switch (kind) {
      case AtomKind::Log: return "log(" + log_arg.get_str() + ")";
      case AtomKind::QuadIntegral:
        return "T[" + quad.to_string() + "; " + lo.get_str() + ", " + hi.get_str() + "]";
      case AtomKind::Dilog: return "Li2(" + dilog_arg.get_str() + ")";
    }
    return "?";
  }

  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    switch (a.kind) {
      case AtomKind::Log: return a.log_arg < b.log_arg;
      case AtomKind::Dilog: return a.dilog_arg < b.dilog_arg;
      case AtomKind::QuadIntegral:
        for (int i = 0; i < 2; ++i)
          if (a.quad.coeff(i) != b.quad.coeff(i)) return a.quad.coeff(i) < b.quad.coeff(i);
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    }
    return false;
  }
  friend bool operator==(const Atom& a, const Atom& b) { return !(a < b) && !(b < a); }
};

// --------------------------------------------------------------------------
// Integer factorization for log atoms.

namespace detail {

inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = primes_upto(100000);
  return primes;
}

}  // namespace detail

/// Factors z > 0 into (base, exponent) pairs: primes up to 1e5 by trial
/// division, then a probable-prime test; a leftover composite is reduced to
/// its perfect-power root and kept as one base.
inline std::vector<std::pair<Integer, unsigned long>> factor_for_logs(Integer z) {
  if (sgn(z) <= 0) throw Error(ErrorKind::InvalidInput, "factor_for_logs needs a positive integer");
  std::vector<std::pair<Integer, unsigned long>> out;
  for (unsigned long p : detail::small_primes()) {
    if (z == 1) break;
    if (Integer(p) * p > z) break;
    if (!mpz_divisible_ui_p(z.get_mpz_t(), p)) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
      mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), p);
      ++e;
    }
    out.emplace_back(Integer(p), e);
  }
  if (z > 1) {
    if (mpz_probab_prime_p(z.get_mpz_t(), 30) != 0) {
      out.emplace_back(z, 1);
    } else {
      unsigned long best = 1;
      Integer base = z;
      const auto bits = mpz_sizeinbase(z.get_mpz_t(), 2);
      for (unsigned long k = 2; k <= bits; ++k) {
        Integer r;
        if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), k) != 0) {
          best = k;
          base = r;
        }
      }
      out.emplace_back(base, best);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --------------------------------------------------------------------------

class AtomRegistry;

class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(Rational r) : rational_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ExactValue(long r) : rational_(r) {}                 // NOLINT(google-explicit-constructor)

  static ExactValue of_atom(const Atom& a, const Rational& coord = 1) {
    ExactValue v;
    v.add_coord(a, coord);
    return v;
  }

  /// log(q) for rational q > 0 expanded on prime logs.
  static ExactValue log_of(const Rational& q) {
    if (sgn(q) <= 0) throw Error(ErrorKind::InvalidInput, "log of a non-positive rational");
    ExactValue v;
    for (auto& [p, e] : factor_for_logs(q.get_num())) v.add_coord(Atom::log(p), Rational(static_cast<long>(e)));
    for (auto& [p, e] : factor_for_logs(q.get_den())) v.add_coord(Atom::log(p), Rational(-static_cast<long>(e)));
    return v;
  }

  const Rational& rational_part() const { return rational_; }
  const std::map<Atom, Rational>& coords() const { return coords_; }
  Rational coord(const Atom& a) const {
    auto it = coords_.find(a);
    return it == coords_.end() ? Rational(0) : it->second;
  }
  bool is_rational() const { return coords_.empty(); }
  bool is_zero() const { return coords_.empty() && sgn(rational_) == 0; }

  void add_coord(const Atom& a, const Rational& c) {
    if (irr::is_zero(c)) return;
    auto [it, inserted] = coords_.emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (irr::is_zero(it->second)) coords_.erase(it);
    }
  }

  ExactValue& operator+=(const ExactValue& o) {
    rational_ += o.rational_;
    for (const auto& [a, c] : o.coords_) add_coord(a, c);
    return *this;
  }
  ExactValue& operator-=(const ExactValue& o) {
    rational_ -= o.rational_;
    for (const auto& [a, c] : o.coords_) add_coord(a, -c);
    return *this;
  }
  ExactValue& operator*=(const Rational& s) {
    if (irr::is_zero(s)) return *this = ExactValue();
    rational_ *= s;
    for (auto& [a, c] : coords_) c *= s;
    return *this;
  }
  friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
  friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
  friend ExactValue operator*(ExactValue a, const Rational& s) { return a *= s; }
  friend ExactValue operator*(const Rational& s, ExactValue a) { return a *= s; }
  friend ExactValue operator/(ExactValue a, const Rational& s) { return a *= Rational(1 / s); }
  ExactValue operator-() const { return *this * Rational(-1); }

  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.rational_ == b.rational_ && a.coords_ == b.coords_;
  }

  /// Numeric contraction against the registry's atom values.
  BigFloat evaluate(AtomRegistry& reg, long prec) const;

  std::string to_string() const {
    std::string s = rational_.get_str();
    for (const auto& [a, c] : coords_) s += (sgn(c) < 0 ? " - " : " + ") + rational_abs(c).get_str() + "*" + a.to_string();
    return s;
  }

 private:
  Rational rational_ = 0;
  std::map<Atom, Rational> coords_;
};

/// Numeric values of atoms, cached at the highest precision requested so far.
/// One registry per pipeline; guarded so concurrent readers are safe.
class AtomRegistry {
 public:
  BigFloat value(const Atom& a, long prec) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(a);
      if (it != cache_.end() && it->second.precision() >= prec) return it->second.with_precision(prec);
    }
    BigFloat v = compute(a, prec);
    std::lock_guard<std::mutex> lock(mu_);
    cache_[a] = v;
    return v;
  }

  static BigFloat compute(const Atom& a, long prec) {
    switch (a.kind) {
      case AtomKind::Log: return log_integer(a.log_arg, prec);
      case AtomKind::Dilog: return dilog_rational(a.dilog_arg, prec);
      case AtomKind::QuadIntegral: return quad_integral_value(a.quad, a.lo, a.hi, prec);
    }
    throw Error(ErrorKind::InternalCheckFailed, "unknown atom kind");
  }

  /// Integral of 1/(x^2 + bx + c) over [lo, hi].
  static BigFloat quad_integral_value(const Polynomial& q, const Rational& lo, const Rational& hi, long prec) {
    const long w = prec + 64;
    const Rational b = q.coeff(1), c = q.coeff(0);
    const Rational disc = 4 * c - b * b;
    if (sgn(disc) > 0) {
      BigFloat s = sqrt_rational(disc, w);
      auto angle = [&](const Rational& x) { return atan(BigFloat::from_rational(2 * x + b, w) / s, w); };
      BigFloat two = BigFloat::from_integer(2, w);
      return ((angle(hi) - angle(lo)) * two / s).with_precision(prec);
    }
    if (sgn(disc) == 0) throw Error(ErrorKind::InvalidInput, "quadratic atom with a double root");
    BigFloat s = sqrt_rational(-disc, w);
    auto logratio = [&](const Rational& x) {
      BigFloat t = BigFloat::from_rational(2 * x + b, w);
      return log(((t - s) / (t + s)).abs(), w);
    };
    return ((logratio(hi) - logratio(lo)) / s).with_precision(prec);
  }

 private:
  std::mutex mu_;
  std::map<Atom, BigFloat> cache_;
};

inline BigFloat ExactValue::evaluate(AtomRegistry& reg, long prec) const {
  const long w = prec + 32;
  BigFloat acc = BigFloat::from_rational(rational_, w);
  for (const auto& [a, c] : coords_) acc += BigFloat::from_rational(c, w) * reg.value(a, w);
  return acc.with_precision(prec);
}

/// An ExactValue rewritten with logs on a caller-supplied basis of rationals.
struct LogBasisForm {
  Rational rational;
  std::vector<Rational> log_coords;  // one per basis element
  std::map<Atom, Rational> others;   // non-log atoms, unchanged
};

/// Expresses the log part of v as sum y_j log(basis_j). Returns nullopt when
/// the log part is not in the span of the basis.
inline std::optional<LogBasisForm> in_log_basis(const ExactValue& v, const std::vector<Rational>& basis) {
  std::vector<ExactValue> logs;
  for (const auto& b : basis) logs.push_back(ExactValue::log_of(b));
  std::vector<Atom> primes;
  auto note = [&](const Atom& a) {
    if (a.kind == AtomKind::Log && std::find(primes.begin(), primes.end(), a) == primes.end()) primes.push_back(a);
  };
  for (const auto& l : logs)
    for (const auto& [a, c] : l.coords()) note(a);
  for (const auto& [a, c] : v.coords()) note(a);
  LogBasisForm out{v.rational_part(), std::vector<Rational>(basis.size()), {}};
  for (const auto& [a, c] : v.coords())
    if (a.kind != AtomKind::Log) out.others.emplace(a, c);
  if (basis.empty()) {
    for (const auto& [a, c] : v.coords())
      if (a.kind == AtomKind::Log) return std::nullopt;
    return out;
  }
  RationalMatrix m(primes.size(), std::vector<Rational>(basis.size() + 1));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = logs[j].coord(primes[i]);
    m[i][basis.size()] = v.coord(primes[i]);
  }
  EchelonInfo info = rref(m);
  for (auto c : info.pivot_cols)
    if (c == basis.size()) return std::nullopt;  // inconsistent
  for (std::size_t r = 0; r < info.pivot_cols.size(); ++r) out.log_coords[info.pivot_cols[r]] = m[r][basis.size()];
  return out;
}

}  // namespace irr
