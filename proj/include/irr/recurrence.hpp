#pragma once

// Linear recurrences sum_i p_i(n) u(n+i) = 0 with p_i in Q[n]: exact forward
// evaluation, the constant-coefficient (Poincare) approximation and growth
// rates from its roots.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/hiprec.hpp"
#include "irr/roots.hpp"
#include "irr/value.hpp"

namespace irr {

class LinearRecurrence {
 public:
  LinearRecurrence() = default;

  /// Normalizes: coefficients share no common factor over Q[n], have coprime
  /// integer coefficients overall and p_L has positive leading coefficient.
  explicit LinearRecurrence(std::vector<Polynomial> coeffs) : p_(std::move(coeffs)) {
    if (p_.size() < 2) throw Error(ErrorKind::InvalidInput, "recurrence needs order >= 1");
    for (auto& c : p_) c = c.with_var(Var::n);
    if (p_.back().is_zero() || p_.front().is_zero())
      throw Error(ErrorKind::InvalidInput, "leading and trailing recurrence coefficients must be nonzero");
    Polynomial g(Var::n);
    for (const auto& c : p_) g = poly_gcd(g, c);
    for (auto& c : p_) c = exact_div(c, g);
    Integer num = 0, den = 1;
    for (const auto& c : p_)
      for (const auto& q : c.coeffs()) {
        if (is_zero(q)) continue;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
      }
    Rational scale = make_rational(den, num);
    if (sgn(p_.back().leading()) < 0) scale = -scale;
    for (auto& c : p_) c = c * scale;
  }

  int order() const { return static_cast<int>(p_.size()) - 1; }
  const std::vector<Polynomial>& coeffs() const { return p_; }
  const Polynomial& coeff(int i) const { return p_.at(static_cast<std::size_t>(i)); }

  /// Maximum degree in n over all coefficients.
  int degree() const {
    int d = 0;
    for (const auto& c : p_) d = std::max(d, c.degree());
    return d;
  }

  friend bool operator==(const LinearRecurrence& a, const LinearRecurrence& b) { return a.p_ == b.p_; }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i <= order(); ++i) {
      if (i) s += " + ";
      s += "(" + p_[static_cast<std::size_t>(i)].to_string() + ")*u(n" + (i ? "+" + std::to_string(i) : "") + ")";
    }
    return s + " = 0";
  }

 private:
  std::vector<Polynomial> p_;
};

/// sum_i p_i(n) u(n+i) for a window of values starting at u(n).
template <class V>
V recurrence_residual(const LinearRecurrence& rec, const std::vector<V>& window, long n) {
  V acc{};
  const Rational nn(n);
  for (int i = 0; i <= rec.order(); ++i) acc += window.at(static_cast<std::size_t>(i)) * rec.coeff(i)(nn);
  return acc;
}

/// Forward solution u(0..n_max) from the initial values u(0..m-1), m >= L.
/// The recurrence is applied at n = m-L, ..., n_max-L.
template <class V>
std::vector<V> evaluate_exact(const LinearRecurrence& rec, std::vector<V> values, long n_max) {
  const long L = rec.order();
  const long m = static_cast<long>(values.size());
  if (m < L) throw Error(ErrorKind::InvalidInput, "need at least order-many initial values");
  for (long n = m - L; n <= n_max - L; ++n)
    if (is_zero(rec.coeff(static_cast<int>(L))(Rational(n))))
      throw Error(ErrorKind::SingularLeadingCoefficient, "leading coefficient vanishes at n = " + std::to_string(n), n);
  if (n_max + 1 < m) values.resize(static_cast<std::size_t>(std::max(0L, n_max + 1)));
  values.reserve(static_cast<std::size_t>(n_max + 1));
  for (long n = m - L; n <= n_max - L; ++n) {
    const Rational nn(n);
    V acc{};
    for (long i = 0; i < L; ++i) acc += values[static_cast<std::size_t>(n + i)] * rec.coeff(static_cast<int>(i))(nn);
    const Rational lead = rec.coeff(static_cast<int>(L))(nn);
    values.push_back(acc * Rational(-1 / lead));
  }
  return values;
}

/// Coordinate sequences of a list of ExactValues: rational parts and one
/// sequence per atom occurring anywhere in the list.
struct CoordinateSequences {
  std::vector<Rational> rational;
  std::map<Atom, std::vector<Rational>> atoms;
};

inline CoordinateSequences coordinate_sequences(const std::vector<ExactValue>& vals) {
  CoordinateSequences out;
  for (const auto& v : vals)
    for (const auto& [a, c] : v.coords()) out.atoms.emplace(a, std::vector<Rational>());
  for (const auto& v : vals) {
    out.rational.push_back(v.rational_part());
    for (auto& [a, seq] : out.atoms) seq.push_back(v.coord(a));
  }
  return out;
}

/// ExactValue propagation, one coordinate at a time.
inline std::vector<ExactValue> evaluate_exact(const LinearRecurrence& rec, const std::vector<ExactValue>& initial,
                                              long n_max) {
  CoordinateSequences cs = coordinate_sequences(initial);
  std::vector<Rational> rat = evaluate_exact(rec, cs.rational, n_max);
  std::vector<ExactValue> out(rat.begin(), rat.end());
  for (auto& [a, seq] : cs.atoms) {
    std::vector<Rational> s = evaluate_exact(rec, seq, n_max);
    for (std::size_t i = 0; i < s.size(); ++i) out[i].add_coord(a, s[i]);
  }
  return out;
}

/// chi(N) = sum_i [n^d] p_i * N^i with d the maximal degree, made primitive.
inline Polynomial characteristic_poly(const LinearRecurrence& rec) {
  const int d = rec.degree();
  std::vector<Rational> cs;
  for (const auto& p : rec.coeffs()) cs.push_back(p.coeff(d));
  return primitive_part(Polynomial(std::move(cs), Var::N));
}

// --------------------------------------------------------------------------

enum class SubdominantRule { SmallestModulus, SecondLargestModulus, RootIndex };

struct SubdominantChoice {
  SubdominantRule rule = SubdominantRule::SmallestModulus;
  std::size_t index = 0;  // into the ascending root list, for RootIndex
};

struct GrowthAnalysis {
  Polynomial char_poly;
  std::vector<RootEnclosure> real_roots;  // ascending
  std::vector<BigFloat> log_moduli;       // log|root| per root (zero roots skipped as 0 entries)
  std::size_t dominant_index = 0;
  std::size_t subdominant_index = 0;
  BigFloat dominant_log;
  BigFloat subdominant_log;
};

inline GrowthAnalysis analyze_char_poly(const Polynomial& chi, int digits, SubdominantChoice choice = {}) {
  if (chi.degree() < 1) throw Error(ErrorKind::InvalidInput, "characteristic polynomial is constant");
  GrowthAnalysis g;
  g.char_poly = chi;
  if (squarefree_part(chi).degree() != chi.degree())
    throw Error(ErrorKind::ModulusTie, "characteristic polynomial has a repeated root");
  // r and -r both roots <=> common root of chi(N) and chi(-N).
  {
    std::vector<Rational> flipped;
    for (int i = 0; i <= chi.degree(); ++i) flipped.push_back(i % 2 ? Rational(-chi.coeff(i)) : chi.coeff(i));
    Polynomial common = poly_gcd(chi, Polynomial(flipped, chi.var()));
    Polynomial nvar = Polynomial::variable(chi.var());
    while (common.degree() > 0 && is_zero(common.coeff(0))) common = exact_div(common, nvar);
    if (common.degree() > 0) throw Error(ErrorKind::ModulusTie, "two roots share a modulus");
  }
  g.real_roots = isolate_real_roots(chi, digits);
  const long prec = bits_for_digits(digits);
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < g.real_roots.size(); ++i) {
    const auto& r = g.real_roots[i];
    if (r.exact() && sgn(r.lo) == 0) {
      g.log_moduli.emplace_back(Integer(0), 0, prec);
      continue;
    }
    g.log_moduli.push_back(log(r.value.abs(), prec));
    nonzero.push_back(i);
  }
  if (nonzero.empty()) throw Error(ErrorKind::InvalidInput, "characteristic polynomial has only the root 0");
  auto by_modulus = [&](std::size_t a, std::size_t b) { return g.log_moduli[a] < g.log_moduli[b]; };
  std::sort(nonzero.begin(), nonzero.end(), by_modulus);
  g.dominant_index = nonzero.back();
  switch (choice.rule) {
    case SubdominantRule::SmallestModulus: g.subdominant_index = nonzero.front(); break;
    case SubdominantRule::SecondLargestModulus:
      g.subdominant_index = nonzero.size() >= 2 ? nonzero[nonzero.size() - 2] : nonzero.back();
      break;
    case SubdominantRule::RootIndex:
      if (choice.index >= g.real_roots.size() || (g.real_roots[choice.index].exact() && sgn(g.real_roots[choice.index].lo) == 0))
        throw Error(ErrorKind::InvalidInput, "subdominant root index out of range");
      g.subdominant_index = choice.index;
      break;
  }
  g.dominant_log = g.log_moduli[g.dominant_index];
  g.subdominant_log = g.log_moduli[g.subdominant_index];
  return g;
}

inline GrowthAnalysis growth_rates(const LinearRecurrence& rec, int digits, SubdominantChoice choice = {}) {
  return analyze_char_poly(characteristic_poly(rec), digits, choice);
}

}  // namespace irr
