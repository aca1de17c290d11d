#pragma once

// Numeric integration of R^n S over the kernel interval with tanh-sinh
// quadrature in a Boost multiprecision type. Used for integrands whose exact
// decomposition is unsupported and as an independent oracle.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/telescope.hpp"

namespace irr {

using Float100 = boost::multiprecision::cpp_bin_float_100;

template <class Real>
Real to_real(const Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

template <class Real>
Real eval_poly(const Polynomial& p, const Real& x) {
  Real acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + to_real<Real>(p.coeff(i));
  return acc;
}

template <class Real>
Real eval_rf(const RationalFunction& f, const Real& x) {
  return eval_poly(f.num(), x) / eval_poly(f.den(), x);
}

/// Integral of f over [lo, hi]; `tol` is the requested relative error.
template <class Real>
Real integrate_numeric(const RationalFunction& f, const Rational& lo, const Rational& hi, const Real& tol) {
  boost::math::quadrature::tanh_sinh<Real> ts;
  auto g = [&](const Real& x) { return eval_rf(f, x); };
  return ts.integrate(g, to_real<Real>(lo), to_real<Real>(hi), tol);
}

/// I(n) = int R^n S over the kernel interval.
template <class Real>
Real kernel_integral_numeric(const HyperexponentialKernel& k, unsigned n, const Real& tol) {
  boost::math::quadrature::tanh_sinh<Real> ts;
  auto g = [&](const Real& x) {
    Real r = eval_rf(k.R, x);
    return boost::multiprecision::pow(r, n) * eval_rf(k.S, x);
  };
  return ts.integrate(g, to_real<Real>(k.lo), to_real<Real>(k.hi), tol);
}

}  // namespace irr
