#pragma once

// Arbitrary-precision binary floating point and the handful of constants the
// pipelines need: log, arctan and Li2 of rationals, square roots, pi, zeta(3)
// and 1/e. Series are summed in fixed point on GMP integers with a working
// width of (precision + guard) bits.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"

namespace irr {

/// Guard margin in bits: a value computed at precision p agrees with the same
/// value at precision 2p through the first p - kGuardBits bits.
inline constexpr long kGuardBits = 16;

/// Bits needed for a requested number of decimal digits (3.33 bits/digit + guard).
inline long bits_for_digits(long digits) {
  return static_cast<long>(std::ceil(static_cast<double>(digits) * 3.33)) + kGuardBits;
}

inline long bit_length(const Integer& z) {
  if (sgn(z) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

/// sign * mantissa * 2^exponent, mantissa rounded to at most `precision` bits.
class BigFloat {
 public:
  BigFloat() = default;
  BigFloat(Integer mantissa, long exponent, long precision)
      : m_(std::move(mantissa)), e_(exponent), prec_(std::max(2L, precision)) {
    normalize();
  }

  static BigFloat from_integer(const Integer& z, long precision) { return BigFloat(z, 0, precision); }

  static BigFloat from_rational(const Rational& q, long precision) {
    if (sgn(q) == 0) return BigFloat(Integer(0), 0, precision);
    const long shift = precision + 2 + bit_length(q.get_den()) - bit_length(q.get_num());
    Integer num = q.get_num();
    Integer den = q.get_den();
    if (shift >= 0)
      num <<= static_cast<mp_bitcnt_t>(shift);
    else
      den <<= static_cast<mp_bitcnt_t>(-shift);
    Integer quo;
    mpz_tdiv_q(quo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return BigFloat(quo, -shift, precision);
  }

  const Integer& mantissa() const { return m_; }
  long exponent() const { return e_; }
  long precision() const { return prec_; }
  int sign() const { return sgn(m_); }
  bool is_zero() const { return sgn(m_) == 0; }

  /// floor(log2 |x|) for nonzero x.
  long ilog2() const { return e_ + bit_length(m_) - 1; }

  BigFloat with_precision(long p) const { return BigFloat(m_, e_, p); }

  Rational to_rational() const {
    if (e_ >= 0) return Rational(Integer(m_ << static_cast<mp_bitcnt_t>(e_)));
    Integer den = Integer(1) << static_cast<mp_bitcnt_t>(-e_);
    return make_rational(m_, den);
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, m_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(exp + e_));
  }

  BigFloat operator-() const {
    BigFloat r = *this;
    r.m_ = -r.m_;
    return r;
  }
  BigFloat abs() const { return sign() < 0 ? -*this : *this; }

  /// Multiply by 2^k exactly.
  BigFloat ldexp(long k) const {
    BigFloat r = *this;
    if (!r.is_zero()) r.e_ += k;
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, std::max(a.prec_, b.prec_)); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return add(a, -b, std::max(a.prec_, b.prec_)); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    return BigFloat(a.m_ * b.m_, a.e_ + b.e_, std::max(a.prec_, b.prec_));
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "BigFloat division by zero");
    const long p = std::max(a.prec_, b.prec_);
    if (a.is_zero()) return BigFloat(Integer(0), 0, p);
    const long shift = p + 2 + bit_length(b.m_) - bit_length(a.m_);
    Integer num = a.m_;
    if (shift > 0) num <<= static_cast<mp_bitcnt_t>(shift);
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.m_.get_mpz_t());
    return BigFloat(q, a.e_ - b.e_ - std::max(0L, shift), p);
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  /// Exact comparison of the represented dyadic values.
  friend std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    const int c = cmp(a.to_rational(), b.to_rational());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return (a <=> b) == 0; }

  /// Decimal rendering with `digits` significant digits, rounded to nearest.
  /// Plain notation for moderate exponents, otherwise d.ddd...e[+-]E.
  std::string to_decimal(int digits) const;

 private:
  static BigFloat add(const BigFloat& a, const BigFloat& b, long p) {
    if (a.is_zero()) return b.with_precision(p);
    if (b.is_zero()) return a.with_precision(p);
    // Operand far below the other's last bit only perturbs rounding.
    if (b.ilog2() < a.ilog2() - p - 4) return a.with_precision(p);
    if (a.ilog2() < b.ilog2() - p - 4) return b.with_precision(p);
    const long e = std::min(a.e_, b.e_);
    Integer ma = a.m_ << static_cast<mp_bitcnt_t>(a.e_ - e);
    Integer mb = b.m_ << static_cast<mp_bitcnt_t>(b.e_ - e);
    return BigFloat(Integer(ma + mb), e, p);
  }

  void normalize() {
    if (sgn(m_) == 0) {
      e_ = 0;
      return;
    }
    const long bits = bit_length(m_);
    if (bits > prec_) {
      const long drop = bits - prec_;
      const bool neg = sgn(m_) < 0;
      Integer mag = neg ? Integer(-m_) : m_;
      mag += Integer(1) << static_cast<mp_bitcnt_t>(drop - 1);
      mag >>= static_cast<mp_bitcnt_t>(drop);
      m_ = neg ? Integer(-mag) : mag;
      e_ += drop;
    }
    // Strip trailing zero bits so equal values share a representation.
    const auto tz = static_cast<long>(mpz_scan1(m_.get_mpz_t(), 0));
    if (tz > 0) {
      m_ >>= static_cast<mp_bitcnt_t>(tz);
      e_ += tz;
    }
  }

  Integer m_ = 0;
  long e_ = 0;
  long prec_ = 64;
};

inline std::string BigFloat::to_decimal(int digits) const {
  digits = std::max(digits, 1);
  if (is_zero()) return "0";
  Rational v = rational_abs(to_rational());
  // Decimal exponent E with 10^E <= |v| < 10^(E+1).
  long E = static_cast<long>(std::floor(static_cast<double>(ilog2()) * 0.30102999566398120));
  auto pow10 = [](long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return r;
  };
  auto scaled = [&](long E0) {
    const long shift = digits - 1 - E0;
    Rational s = shift >= 0 ? Rational(v * Rational(pow10(shift))) : Rational(v / Rational(pow10(-shift)));
    Integer q;
    Integer twice_num = s.get_num() * 2 + s.get_den();
    Integer twice_den = s.get_den() * 2;
    mpz_fdiv_q(q.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
    return q;
  };
  Integer lo = pow10(digits - 1), hi = pow10(digits);
  Integer n = scaled(E);
  for (int guard = 0; guard < 4; ++guard) {
    if (n >= hi) {
      ++E;
      n = scaled(E);
    } else if (n < lo) {
      --E;
      n = scaled(E);
    } else {
      break;
    }
  }
  if (n >= hi) {  // rounding carried into a new digit
    ++E;
    n = scaled(E);
  }
  std::string ds = n.get_str();
  std::string out = sign() < 0 ? "-" : "";
  if (E >= -7 && E < digits) {
    if (E >= 0) {
      out += ds.substr(0, static_cast<std::size_t>(E + 1));
      if (static_cast<long>(ds.size()) > E + 1) out += "." + ds.substr(static_cast<std::size_t>(E + 1));
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-E - 1), '0') + ds;
    }
  } else {
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += (E < 0 ? "e-" : "e+") + std::to_string(E < 0 ? -E : E);
  }
  return out;
}

namespace detail {

inline Integer fixed_one(long w) { return Integer(1) << static_cast<mp_bitcnt_t>(w); }

inline Integer shr(const Integer& z, long k) {
  Integer r;
  mpz_tdiv_q_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

/// 2^w * atanh(1/m) for an integer m >= 2.
inline Integer atanh_inv_fixed(unsigned long m, long w) {
  Integer power = fixed_one(w) / m;
  const Integer m2 = Integer(m) * m;
  Integer sum = 0;
  for (unsigned long k = 1; sgn(power) != 0; k += 2) {
    sum += power / k;
    power /= m2;
  }
  return sum;
}

/// 2^w * atan(1/m) for an integer m >= 2.
inline Integer atan_inv_fixed(unsigned long m, long w) {
  Integer power = fixed_one(w) / m;
  const Integer m2 = Integer(m) * m;
  Integer sum = 0;
  bool neg = false;
  for (unsigned long k = 1; sgn(power) != 0; k += 2) {
    if (neg)
      sum -= power / k;
    else
      sum += power / k;
    neg = !neg;
    power /= m2;
  }
  return sum;
}

/// 2^w * atanh(z) with z = Z / 2^w, |z| <= 1/4.
inline Integer atanh_fixed(const Integer& Z, long w) {
  const bool neg = sgn(Z) < 0;
  const Integer a = neg ? Integer(-Z) : Z;
  const Integer z2 = shr(a * a, w);
  Integer term = a, sum = 0;
  for (unsigned long k = 1; sgn(term) != 0; k += 2) {
    sum += term / k;
    term = shr(term * z2, w);
  }
  return neg ? Integer(-sum) : sum;
}

/// 2^w * atan(z) with z = Z / 2^w, |z| small.
inline Integer atan_fixed(const Integer& Z, long w) {
  const bool neg = sgn(Z) < 0;
  const Integer a = neg ? Integer(-Z) : Z;
  const Integer z2 = shr(a * a, w);
  Integer term = a, sum = 0;
  bool minus = false;
  for (unsigned long k = 1; sgn(term) != 0; k += 2) {
    if (minus)
      sum -= term / k;
    else
      sum += term / k;
    minus = !minus;
    term = shr(term * z2, w);
  }
  return neg ? Integer(-sum) : sum;
}

/// ln 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749).
inline Integer ln2_fixed(long w) {
  const long ww = w + 8;
  Integer s = 18 * atanh_inv_fixed(26, ww) - 2 * atanh_inv_fixed(4801, ww) + 8 * atanh_inv_fixed(8749, ww);
  return shr(s, 8);
}

/// pi = 16 atan(1/5) - 4 atan(1/239).
inline Integer pi_fixed(long w) {
  const long ww = w + 8;
  Integer s = 16 * atan_inv_fixed(5, ww) - 4 * atan_inv_fixed(239, ww);
  return shr(s, 8);
}

inline Integer to_fixed(const Rational& q, long w) {
  Integer num = q.get_num() << static_cast<mp_bitcnt_t>(w);
  Integer r;
  mpz_tdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer to_fixed(const BigFloat& x, long w) {
  const long shift = x.exponent() + w;
  if (shift >= 0) return x.mantissa() << static_cast<mp_bitcnt_t>(shift);
  return shr(x.mantissa(), -shift);
}

inline BigFloat from_fixed(const Integer& F, long w, long prec) { return BigFloat(F, -w, prec); }

inline long working_bits(long prec) { return prec + kGuardBits + 24; }

/// 2^w * log(y) for positive dyadic y = m 2^e.
inline Integer log_fixed(const BigFloat& y, long w) {
  const Integer& m = y.mantissa();
  const long b = bit_length(m);
  // y = (m / 2^t) * 2^k with m / 2^t in [1/sqrt 2, sqrt 2).
  long t = b;
  Integer m2 = m * m;
  Integer half_range = Integer(1) << static_cast<mp_bitcnt_t>(2 * b - 1);
  if (m2 < half_range) t = b - 1;
  const long k = y.exponent() + t;
  const Integer pow_t = Integer(1) << static_cast<mp_bitcnt_t>(t);
  const Integer num = m - pow_t;
  const Integer den = m + pow_t;
  // Tiny |z| would lose relative accuracy; widen the window accordingly.
  long extra = 0;
  if (sgn(num) != 0) extra = std::max(0L, bit_length(den) - bit_length(num));
  const long ww = w + extra;
  Integer Z;
  Integer scaled = num << static_cast<mp_bitcnt_t>(ww);
  mpz_tdiv_q(Z.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  Integer r = 2 * atanh_fixed(Z, ww);
  if (k != 0) r += k * ln2_fixed(ww);
  return shr(r, extra);
}

}  // namespace detail

inline BigFloat pi(long prec) {
  const long w = detail::working_bits(prec);
  return detail::from_fixed(detail::pi_fixed(w), w, prec);
}

inline BigFloat ln2(long prec) {
  const long w = detail::working_bits(prec);
  return detail::from_fixed(detail::ln2_fixed(w), w, prec);
}

/// Natural log of a positive BigFloat, correct to about `prec` bits.
inline BigFloat log(const BigFloat& y, long prec) {
  if (y.sign() <= 0) throw Error(ErrorKind::InvalidInput, "log of a non-positive number");
  if (y.mantissa() == 1 && y.exponent() == 0) return BigFloat(Integer(0), 0, prec);
  const long w = detail::working_bits(prec);
  return detail::from_fixed(detail::log_fixed(y, w), w, prec);
}

/// log of a positive integer of any size.
inline BigFloat log_integer(const Integer& z, long prec) {
  if (sgn(z) <= 0) throw Error(ErrorKind::InvalidInput, "log of a non-positive integer");
  return log(BigFloat::from_integer(z, std::max(bit_length(z), detail::working_bits(prec))), prec);
}

inline BigFloat log_rational(const Rational& q, long prec) {
  if (sgn(q) <= 0) throw Error(ErrorKind::InvalidInput, "log_rational requires q > 0");
  if (q == 1) return BigFloat(Integer(0), 0, prec);
  const long w = detail::working_bits(prec);
  // log(num) - log(den) keeps full relative accuracy for huge num/den.
  if (bit_length(q.get_num()) > w || bit_length(q.get_den()) > w)
    return log_integer(q.get_num(), prec + 8) - log_integer(q.get_den(), prec + 8);
  return log(BigFloat::from_rational(q, w), prec);
}

inline BigFloat sqrt(const BigFloat& x, long prec) {
  if (x.sign() < 0) throw Error(ErrorKind::InvalidInput, "sqrt of a negative number");
  if (x.is_zero()) return BigFloat(Integer(0), 0, prec);
  Integer m = x.mantissa();
  long e = x.exponent();
  if (e % 2 != 0) {
    m <<= 1;
    e -= 1;
  }
  long s = std::max(0L, (2 * (prec + 4) - bit_length(m) + 1) / 2);
  m <<= static_cast<mp_bitcnt_t>(2 * s);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return BigFloat(r, (e - 2 * s) / 2, prec);
}

inline BigFloat sqrt_rational(const Rational& q, long prec) {
  if (sgn(q) < 0) throw Error(ErrorKind::InvalidInput, "sqrt_rational requires q >= 0");
  if (sgn(q) == 0) return BigFloat(Integer(0), 0, prec);
  const long w = detail::working_bits(prec);
  // sqrt(u/v) = sqrt(u v) / v, via an integer square root at 2w bits.
  Integer uv = q.get_num() * q.get_den();
  uv <<= static_cast<mp_bitcnt_t>(2 * w);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), uv.get_mpz_t());
  BigFloat root(r, -w, w + bit_length(r));
  return (root / BigFloat::from_integer(q.get_den(), w)).with_precision(prec);
}

/// arctan via repeated halving atan(q) = 2 atan(q / (1 + sqrt(1 + q^2)))
/// until |q| < 2^-12, then the Taylor series.
inline BigFloat atan(const BigFloat& q, long prec) {
  if (q.is_zero()) return BigFloat(Integer(0), 0, prec);
  const bool neg = q.sign() < 0;
  const BigFloat a = q.abs();
  // Halvings needed: about log2(max(1,|q|)) + 12, each costs at most a bit.
  const long halvings_bound = std::max(0L, a.ilog2()) + 16;
  const long w = detail::working_bits(prec) + halvings_bound;
  const Integer one = detail::fixed_one(w);
  Integer Z = detail::to_fixed(a, w);
  if (sgn(Z) == 0) return q.with_precision(prec);  // atan(q) = q to this precision
  const Integer threshold = Integer(1) << static_cast<mp_bitcnt_t>(w - 12);
  long k = 0;
  while (Z > threshold) {
    Integer sq = Z * Z + (one << static_cast<mp_bitcnt_t>(w));
    Integer root;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    Integer num = Z << static_cast<mp_bitcnt_t>(w);
    Integer den = one + root;
    mpz_tdiv_q(Z.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    ++k;
  }
  Integer r = detail::atan_fixed(Z, w) << static_cast<mp_bitcnt_t>(k);
  BigFloat out = detail::from_fixed(r, w, prec);
  return neg ? -out : out;
}

inline BigFloat arctan_rational(const Rational& q, long prec) {
  if (sgn(q) == 0) return BigFloat(Integer(0), 0, prec);
  return atan(BigFloat::from_rational(q, detail::working_bits(prec) + 32), prec);
}

namespace detail {

/// 2^w * Li2(q) for rational |q| <= 1/2 by the defining series.
inline Integer dilog_series_fixed(const Rational& q, long w) {
  const bool neg = sgn(q) < 0;
  const Integer u = neg ? Integer(-q.get_num()) : Integer(q.get_num());
  const Integer& v = q.get_den();
  Integer power = fixed_one(w);
  Integer sum = 0;
  for (unsigned long k = 1;; ++k) {
    power *= u;
    mpz_tdiv_q(power.get_mpz_t(), power.get_mpz_t(), v.get_mpz_t());
    if (sgn(power) == 0) break;
    Integer term = power / (Integer(k) * k);
    if (neg && (k % 2 == 1))
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

inline Integer dilog_fixed(const Rational& q, long w) {
  if (sgn(q) == 0) return Integer(0);
  const Integer pi2_6 = shr(pi_fixed(w + 4) * pi_fixed(w + 4), w + 8) / 6;
  if (q == 1) return pi2_6;
  const Rational half(1, 2);
  if (q <= half && q >= -half) return dilog_series_fixed(q, w);
  auto logf = [&](const Rational& r) { return log_fixed(BigFloat::from_rational(r, w + 8), w); };
  if (q > half) {
    // Li2(q) = pi^2/6 - log(q) log(1-q) - Li2(1-q)
    const Rational one_minus = 1 - q;
    return pi2_6 - shr(logf(q) * logf(one_minus), w) - dilog_series_fixed(one_minus, w);
  }
  if (q >= -1) {
    // Landen: Li2(q) = -Li2(q/(q-1)) - log(1-q)^2 / 2
    const Rational t = q / (q - 1);
    const Integer l = logf(Rational(1 - q));
    return -dilog_series_fixed(t, w) - shr(l * l, w + 1);
  }
  // Inversion: Li2(q) = -pi^2/6 - log(-q)^2 / 2 - Li2(1/q)
  const Integer l = logf(Rational(-q));
  return -pi2_6 - shr(l * l, w + 1) - dilog_fixed(Rational(1 / q), w);
}

}  // namespace detail

/// Li2(q) = sum_{k>=1} q^k / k^2 on the real branch q <= 1.
inline BigFloat dilog_rational(const Rational& q, long prec) {
  if (q > 1) throw Error(ErrorKind::InvalidInput, "dilog_rational requires q <= 1");
  if (sgn(q) == 0) return BigFloat(Integer(0), 0, prec);
  const long w = detail::working_bits(prec) + 8;
  return detail::from_fixed(detail::dilog_fixed(q, w), w, prec);
}

/// zeta(3) = (5/2) sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k,k)).
inline BigFloat zeta3(long prec) {
  const long w = detail::working_bits(prec);
  const Integer one = detail::fixed_one(w);
  Integer central = 2;  // binom(2k, k) at k = 1
  Integer sum = 0;
  for (unsigned long k = 1;; ++k) {
    Integer den = central * k * k * k;
    Integer term = one / den;
    if (sgn(term) == 0) break;
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
    central = central * (2 * k + 1) * (2 * k + 2) / ((k + 1) * (k + 1));
  }
  return detail::from_fixed(sum * 5 / 2, w, prec);
}

/// exp(-1) = sum_k (-1)^k / k!.
inline BigFloat exp_minus_one(long prec) {
  const long w = detail::working_bits(prec);
  Integer term = detail::fixed_one(w);
  Integer sum = term;
  for (unsigned long k = 1; sgn(term) != 0; ++k) {
    term /= k;
    if (k % 2 == 1)
      sum -= term;
    else
      sum += term;
  }
  return detail::from_fixed(sum, w, prec);
}

}  // namespace irr
