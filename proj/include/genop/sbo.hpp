#pragma once

#include <functional>
#include <vector>

#include "genop/regularized.hpp"

namespace genop {

// ---------------------------------------------------------------------------
// SL(2,R) and the principal-series multiplier action
// ---------------------------------------------------------------------------

//! Real unimodular 2x2 matrix (a b; c d), ad - bc = 1.
struct GroupElement {
  double a, b, c, d;

  GroupElement(double a_, double b_, double c_, double d_);
  static GroupElement identity() { return {1.0, 0.0, 0.0, 1.0}; }
  GroupElement inverse() const { return {d, -b, -c, a}; }

  // Fractional-linear action on the Bruhat line; throws ChartError at the
  // pole cx + d = 0.
  double moebius(double x) const;
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);

// exp of the traceless matrix (ah ae; af -ah); exact 2x2 exponential.
GroupElement exp_sl2(double ae, double af, double ah);

enum class Parity { plus, minus };  // the character sign epsilon

//! Line-bundle parameter (lambda, epsilon) of a principal-series realization.
struct LineBundleParam {
  Complex lambda;
  Parity eps = Parity::plus;
};

// (pi_lambda^eps(g) f)(x) = |cx+d|^{-lambda} sgn(cx+d)^{(1-eps)/2} f((ax+b)/(cx+d)),
// with (a b; c d) read from g^{-1}.
Complex multiplier_action(const LineBundleParam& p, const GroupElement& g,
                          const std::function<Complex(double)>& f, double x);

// ---------------------------------------------------------------------------
// Test sections
// ---------------------------------------------------------------------------

//! Smooth compactly supported section on the Bruhat line.
struct TestSection1D {
  std::function<Complex(double)> eval;
  double lo = -1.0, hi = 1.0;  // support
};

//! Smooth compactly supported section on the Bruhat plane, support box
//! [lo1,hi1] x [lo2,hi2].
struct TestSection2D {
  std::function<Complex(double, double)> eval;
  double lo1 = -1.0, hi1 = 1.0, lo2 = -1.0, hi2 = 1.0;
};

// C-infinity bump scaled to (lo, hi), peak 1 at the midpoint.
TestSection1D bump_section(double lo, double hi);
// Product bump with an affine modulation 1 + mx*x + my*y.
TestSection2D bump_section2(double lo1, double hi1, double lo2, double hi2,
                            double mx = 0.0, double my = 0.0);

// The transported section pi(g) f (support box mapped through g).
TestSection1D translate_section(const LineBundleParam& p, const GroupElement& g,
                                const TestSection1D& f);
// pi(g) tensor pi(g) on a two-variable section.
TestSection2D translate_section2(const LineBundleParam& p, const GroupElement& g,
                                 const TestSection2D& f);

// ---------------------------------------------------------------------------
// Symmetry-breaking and holographic operators
// ---------------------------------------------------------------------------

struct SboResolution {
  double tol_outer = 1e-7;
  double tol_inner = 1e-8;
  SboResolution refined() const { return {tol_outer * 1e-2, tol_inner * 1e-2}; }
};

// (T_mu^pm f)(zeta) = -(2 pi i)^{-1} \int_{R^2} f K_mp^mu (zeta1-zeta2)^{-1},
// for -1 < Re mu < 0 and compactly supported f. Integrated in rotated
// coordinates u = (zeta1+zeta2)/2, s = zeta1-zeta2 so the integrable diagonal
// singularity sits at an endpoint of the s-quadrature.
Complex sbo_apply(Side side, Complex mu, const TestSection2D& f, double zeta,
                  const SboResolution& res = {});

// max_{zeta in probes} | T_mu^pm[(pi_1^- x pi_1^-)(g) f](zeta)
//                        - [pi_{-2mu}^+(g) (T_mu^pm f)](zeta) |
double sbo_covariance_residual(Side side, Complex mu, const TestSection2D& f,
                               const GroupElement& g, const std::vector<double>& probes,
                               const SboResolution& res = {});

// (H_mu^pm h)(zeta1, zeta2) = (zeta1-zeta2)^{-1} \int h(zeta) K_mp^mu dzeta.
Complex holographic_apply(Side side, Complex mu, const TestSection1D& h, double zeta1,
                          double zeta2, double tol = 1e-10);

//! Both sides of the duality pairing <H_mu h, f> = const * <h, T_mu f> and
//! their ratio (the expected constant is -2 pi i).
struct DualityResult {
  Complex bulk_pairing;      // <H_mu h, f> over the Bruhat plane
  Complex boundary_pairing;  // <h, T_mu f> over the Bruhat line
  Complex ratio;
};
DualityResult duality_pairing(Side side, Complex mu, const TestSection1D& h,
                              const TestSection2D& f, const SboResolution& res = {});

}  // namespace genop
