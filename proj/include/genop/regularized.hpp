#pragma once

#include <functional>
#include <variant>

#include "genop/complex.hpp"
#include "genop/errors.hpp"

namespace genop {

enum class Side { plus, minus };

inline Side flip(Side s) { return s == Side::plus ? Side::minus : Side::plus; }

//! Complex exponent mu together with the support side of t_+^mu / t_-^mu.
struct PowerParameter {
  Complex mu;
  Side side = Side::plus;
};

// The regularized power itself in its function-valued regime: |a|^mu when
// sign(a) matches the side, 0 otherwise (in particular 0 at a = 0).
Complex t_power(double a, Complex mu, Side side);

struct CompactSupport {
  double bound;  // phi vanishes for |t| >= bound
};
struct ExponentialDecay {
  double rate;  // |phi(t)| <~ e^{-rate |t|} for |t| >= 1
};
struct AlgebraicDecay {
  double power;  // |phi(t)| <~ |t|^{-power} for |t| >= 1
};
using Decay = std::variant<CompactSupport, ExponentialDecay, AlgebraicDecay>;

//! Pairing target for the regularized powers: analytic on |t| < analytic_radius
//! (the handle accepts complex arguments there; only real arguments are used
//! beyond that disk), with the stated decay at infinity.
struct TestFunction1D {
  std::function<Complex(Complex)> eval;
  double analytic_radius = 1.0;
  Decay decay = ExponentialDecay{1.0};
};

struct PairingConfig {
  double tol = 1e-11;     // quadrature target per piece
  int taylor_nodes = 64;  // contour nodes for the Taylor coefficients at 0
};

// Meromorphic continuation of <t_pm^mu, phi> by Taylor subtraction on [0,1]
// (depth K = max(0, ceil(-Re mu))), closed-form head terms
//   sum_k phi^(k)(0) / (k! (mu+k+1)),
// and a decay-driven tail on [1, inf). Side minus mirrors t -> -t.
Complex pair_power(const PowerParameter& p, const TestFunction1D& phi,
                   const PairingConfig& cfg = {});

// res_{mu = -ell-1} <t_pm^mu, phi> = (+-1)^ell phi^(ell)(0) / ell!,
// read off the Taylor-subtraction representation.
Complex residue_at_pole(Side side, int ell, const TestFunction1D& phi,
                        const PairingConfig& cfg = {});

// Closed form of <t_pm^lambda, 1/(t+w)>:
//   side +:  -pi w^lambda / sin(pi lambda)   (w off (-inf, 0])
//   side -:  +pi (-w)^lambda / sin(pi lambda) (w off [0, inf))
// with principal-branch powers.
Complex beta_pairing(Side side, Complex lambda, Complex w);

//! Principal-branch jump data across the real axis at x: the difference
//! w^lambda|_{x+i eps} - w^lambda|_{x-i eps} and its eps -> 0 limit
//! 2 i sin(pi lambda) (x)_-^lambda.
struct BoundaryValuePair {
  Complex difference;
  Complex reference;
};
BoundaryValuePair boundary_value_check(Complex lambda, double x, double eps);

// K_pm^mu(zeta1, zeta2; zeta) = ((zeta1-zeta)(zeta2-zeta)/(zeta1-zeta2))_pm^mu
// in the function-valued regime Re mu > -1.
Complex kernel_K(const PowerParameter& p, double zeta1, double zeta2, double zeta);

// Scale-relative residual of the factorization identity
//   <t_pm^mu, 1/Q(zeta1,zeta2; zeta, .)> = -2 pi i / (zeta1-zeta2) K_mp^mu,
// with the left side evaluated as the boundary-value jump of the closed-form
// pairing (Richardson-extrapolated in eps).
double kernel_factorization_residual(Side side, Complex mu, double zeta1, double zeta2,
                                     double zeta, double eps = 1e-5);

}  // namespace genop
