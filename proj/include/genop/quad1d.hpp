#pragma once

#include <functional>
#include <vector>

#include "genop/complex.hpp"
#include "genop/errors.hpp"

namespace genop::quad {

using Fn = std::function<Complex(double)>;

// Integrand form used by the singular rules: receives the node x together
// with stable signed offsets dl = x - a >= 0 and dr = x - b <= 0 from the
// interval endpoints. Near an endpoint the offset comes straight from the
// rule's own node parameter, so algebraic singular factors built from it
// never suffer cancellation.
using FnEnd = std::function<Complex(double x, double dl, double dr)>;

// Tanh-sinh (double-exponential) rule on [a, b]. Integrable endpoint
// singularities are admissible. Level doubling stops at `tol` scaled by
// 1 + |value|; exceeding the level cap raises NonConvergenceError, non-finite
// interior values raise QuadratureDomainError.
Complex tanh_sinh(const Fn& f, double a, double b, double tol = 1e-10);
Complex tanh_sinh_ends(const FnEnd& f, double a, double b, double tol = 1e-10);

// Integrate f over [a, b] splitting at the given interior points; each piece
// runs through tanh_sinh, so integrable singularities are admissible at the
// splits and at the interval ends.
Complex split_points(const Fn& f, double a, double b, std::vector<double> splits,
                     double tol = 1e-10);

// Adaptive Gauss-Kronrod for smooth integrands on [a, b].
Complex gauss_kronrod(const Fn& f, double a, double b, double tol = 1e-10);

// Integrand with up to two algebraic singular points p1, p2 (and optional
// extra non-singular split points). F receives the node x and the signed
// offsets d1 = x - p1, d2 = x - p2, stable near the singular points. Pass a
// far-away p2 (e.g. 1e300) when there is only one root.
using Fn2 = std::function<Complex(double x, double d1, double d2)>;
Complex with_roots(const Fn2& F, double a, double b, double p1, double p2,
                   double tol = 1e-10, std::vector<double> extra_splits = {});

}  // namespace genop::quad
