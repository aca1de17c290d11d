#pragma once

// Exact linear algebra: Gaussian elimination over Q, fraction-free
// Gauss-Jordan over Q[n] (nullspaces over the fraction field Q(n)), and LLL
// lattice reduction for integer relation finding.

#include <algorithm>
#include <optional>
#include <vector>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"

namespace irr {

using RationalMatrix = std::vector<std::vector<Rational>>;
using PolyMatrix = std::vector<std::vector<Polynomial>>;  // entries in Q[n]

struct EchelonInfo {
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> pivot_rows;  // original row index of each pivot
};

/// Reduced row echelon form over Q in place.
inline EchelonInfo rref(RationalMatrix& a) {
  EchelonInfo info;
  if (a.empty()) return info;
  std::vector<std::size_t> order(a.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < a.size(); ++j) {
    std::size_t p = r;
    while (p < a.size() && is_zero(a[p][j])) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    std::swap(order[p], order[r]);
    const Rational inv = 1 / a[r][j];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || is_zero(a[i][j])) continue;
      const Rational f = a[i][j];
      for (std::size_t k = 0; k < cols; ++k)
        if (!is_zero(a[r][k])) a[i][k] -= f * a[r][k];
    }
    info.pivot_cols.push_back(j);
    info.pivot_rows.push_back(order[r]);
    ++r;
  }
  return info;
}

/// Unique solution of a x = b over Q; throws InternalCheckFailed when the
/// system is singular or inconsistent.
inline std::vector<Rational> solve_rational(RationalMatrix a, const std::vector<Rational>& b) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  EchelonInfo info = rref(a);
  if (info.pivot_cols.size() != cols || (!info.pivot_cols.empty() && info.pivot_cols.back() == cols))
    throw Error(ErrorKind::InternalCheckFailed, "linear system is singular or inconsistent");
  for (std::size_t i = cols; i < a.size(); ++i)
    if (!is_zero(a[i][cols])) throw Error(ErrorKind::InternalCheckFailed, "linear system is inconsistent");
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < cols; ++i) x[info.pivot_cols[i]] = a[i][cols];
  return x;
}

namespace detail {

/// Fraction-free Gauss-Jordan on a Q[n] matrix. On return every pivot row has
/// the same pivot value `det` and zeros in the other pivot columns.
struct FractionFreeResult {
  std::vector<std::size_t> pivot_cols;
  Polynomial det;
};

inline FractionFreeResult fraction_free_gauss_jordan(PolyMatrix& a) {
  FractionFreeResult res{{}, Polynomial::constant(1, Var::n)};
  if (a.empty()) return res;
  const std::size_t cols = a[0].size();
  Polynomial prev = Polynomial::constant(1, Var::n);
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < a.size(); ++j) {
    // Lowest-degree pivot keeps entry growth down.
    std::size_t p = a.size();
    for (std::size_t i = r; i < a.size(); ++i)
      if (!a[i][j].is_zero() && (p == a.size() || a[i][j].degree() < a[p][j].degree())) p = i;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Polynomial piv = a[r][j];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      const Polynomial f = a[i][j];
      for (std::size_t k = 0; k < cols; ++k) {
        Polynomial v = a[i][k] * piv;
        if (!f.is_zero() && !a[r][k].is_zero()) v -= f * a[r][k];
        a[i][k] = prev.degree() == 0 ? v * Rational(1 / prev.leading()) : exact_div(v, prev);
      }
    }
    prev = piv;
    res.pivot_cols.push_back(j);
    ++r;
  }
  res.det = prev;
  return res;
}

inline std::vector<Polynomial> primitive_vector(std::vector<Polynomial> v) {
  Polynomial g(Var::n);
  for (const auto& e : v) g = poly_gcd(g, e);
  if (g.is_zero()) return v;
  for (auto& e : v) e = exact_div(e, g);
  // Integer-primitive content across all entries.
  Integer num = 0, den = 1;
  for (const auto& e : v)
    for (const auto& c : e.coeffs()) {
      if (is_zero(c)) continue;
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
  const Rational scale = make_rational(den, num);
  for (auto& e : v) e = e * scale;
  return v;
}

inline Rational eval_at(const Polynomial& p, const Rational& t) { return p(t); }

inline bool annihilates(const PolyMatrix& a, const std::vector<Polynomial>& v) {
  for (const auto& row : a) {
    Polynomial acc(Var::n);
    for (std::size_t k = 0; k < row.size(); ++k)
      if (!row[k].is_zero() && !v[k].is_zero()) acc += row[k] * v[k];
    if (!acc.is_zero()) return false;
  }
  return true;
}

inline std::vector<std::vector<Polynomial>> nullspace_full(PolyMatrix a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  FractionFreeResult ff = fraction_free_gauss_jordan(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ff.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Polynomial>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Polynomial> v(cols, Polynomial(Var::n));
    v[f] = ff.det;
    for (std::size_t i = 0; i < ff.pivot_cols.size(); ++i) v[ff.pivot_cols[i]] = -a[i][f];
    basis.push_back(primitive_vector(std::move(v)));
  }
  return basis;
}

}  // namespace detail

/// Basis of the nullspace over Q(n) of a matrix with Q[n] entries, each basis
/// vector polynomial with coprime entries and integer-primitive content.
///
/// Rows are first filtered by rank at a random-looking specialization of n;
/// the resulting vectors are verified against all rows and the full system is
/// used if the specialization was unlucky.
inline std::vector<std::vector<Polynomial>> nullspace_over_qn(const PolyMatrix& a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  const Rational probe(1000003, 7);
  RationalMatrix spec(a.size(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < cols; ++k) spec[i][k] = a[i][k](probe);
  EchelonInfo info = rref(spec);
  PolyMatrix reduced;
  std::vector<std::size_t> rows = info.pivot_rows;
  std::sort(rows.begin(), rows.end());
  for (auto i : rows) reduced.push_back(a[i]);
  if (reduced.empty()) reduced.push_back(std::vector<Polynomial>(cols, Polynomial(Var::n)));
  auto basis = detail::nullspace_full(reduced);
  bool ok = basis.size() == cols - info.pivot_cols.size();
  for (const auto& v : basis) ok = ok && detail::annihilates(a, v);
  if (ok) return basis;
  return detail::nullspace_full(a);
}

// --------------------------------------------------------------------------
// LLL reduction (exact rational Gram-Schmidt, delta = 3/4).

using IntegerMatrix = std::vector<std::vector<Integer>>;

inline IntegerMatrix lll_reduce(IntegerMatrix b) {
  const std::size_t n = b.size();
  if (n == 0) return b;
  const std::size_t dim = b[0].size();
  auto dot = [dim](const auto& u, const auto& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += Rational(u[i]) * Rational(v[i]);
    return s;
  };
  std::vector<std::vector<Rational>> bstar(n, std::vector<Rational>(dim));
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> norm(n);
  auto gram_schmidt = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) bstar[i][d] = b[i][d];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = is_zero(norm[j]) ? Rational(0) : Rational(dot(b[i], bstar[j]) / norm[j]);
        for (std::size_t d = 0; d < dim; ++d) bstar[i][d] -= mu[i][j] * bstar[j][d];
      }
      norm[i] = dot(bstar[i], bstar[i]);
    }
  };
  gram_schmidt();
  const Rational delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Rational m = mu[k][jj];
      Integer q;
      // round to nearest
      Integer twice = m.get_num() * 2 + m.get_den();
      Integer den2 = m.get_den() * 2;
      mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) b[k][d] -= q * b[jj][d];
      for (std::size_t l = 0; l <= jj; ++l) mu[k][l] -= Rational(q) * (l == jj ? Rational(1) : mu[jj][l]);
    }
    if (norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace irr
