#pragma once

// Kernels shared by several test suites.

#include "irr/exactmath.hpp"
#include "irr/telescope.hpp"

namespace irr::testing {

inline Polynomial px(std::initializer_list<long> cs) { return poly_from_ints(cs); }
inline Polynomial pn(std::initializer_list<long> cs) { return poly_from_ints(cs, Var::n); }

/// R = x(1-x)/(1+x), S = 1/(1+x) on [0, 1].
inline HyperexponentialKernel warmup_kernel() {
  return {RationalFunction(px({0, 1, -1}), px({1, 1})), RationalFunction(px({1}), px({1, 1})), 0, 1};
}

/// R = x(1-x), S = 1 on [0, 1]: Beta integrals.
inline HyperexponentialKernel beta_kernel() {
  return {RationalFunction(px({0, 1, -1})), RationalFunction(px({1})), 0, 1};
}

/// (n+1) u(n) - (6n+9) u(n+1) + (n+2) u(n+2) = 0.
inline LinearRecurrence warmup_recurrence() { return LinearRecurrence({pn({1, 1}), pn({-9, -6}), pn({2, 1})}); }

}  // namespace irr::testing
