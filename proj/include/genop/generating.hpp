#pragma once

#include <memory>
#include <span>
#include <vector>

#include "genop/rankin_cohen.hpp"

namespace genop {

//! Parameters of the generating integral: evaluation point z, series variable
//! t, and the common radius of the two circle contours about z. Admissible
//! when |t| < r/2, which keeps Q = (zeta1-z)(zeta2-z) + t(zeta1-zeta2) away
//! from zero on the contour torus.
struct GeneratingParams {
  Complex z;
  Complex t;
  double radius;
};

Complex q_eval(Complex zeta1, Complex zeta2, Complex z, Complex t);

// (Tf)(z,t) = (2 pi i)^{-2} \oint\oint f(zeta1,zeta2)/Q dzeta1 dzeta2 over the
// tensor-product trapezoidal rule, run under node doubling.
Complex generating_apply(const HoloFn2& f, const GeneratingParams& p,
                         const QuadratureConfig& cfg = {});

// Batched evaluation at several t sharing one converged contour sampling.
std::vector<Complex> generating_apply_many(const HoloFn2& f, Complex z, double radius,
                                           std::span<const Complex> ts,
                                           const QuadratureConfig& cfg = {});

// sum_{ell<=L} t^ell / ell! (R_ell f)(z) via rc_bracket_all.
Complex series_truncation(const HoloFn2& f, Complex z, Complex t, int L,
                          const BracketOptions& opts = {});

// (d/dt)^ell |_{t=0} of t -> (Tf)(z,t), computed by a Cauchy derivative on the
// t-circle |t| = radius/4; recovers (R_ell f)(z).
Complex recover_bracket(const HoloFn2& f, int ell, Complex z, double radius,
                        const QuadratureConfig& cfg = {}, int t_nodes = 64);
std::vector<Complex> recover_bracket_all(const HoloFn2& f, int max_ell, Complex z,
                                         double radius, const QuadratureConfig& cfg = {},
                                         int t_nodes = 64);

//! Bracket recovery with the node-doubling history exposed: one bracket
//! vector per contour resolution, coarsest first, the last entry converged.
struct BracketLevels {
  std::vector<std::pair<int, std::vector<Complex>>> levels;
};
BracketLevels recover_bracket_levels(const HoloFn2& f, int max_ell, Complex z,
                                     double radius, const QuadratureConfig& cfg = {},
                                     int t_nodes = 64);

// Trapezoidal Fourier coefficients b_m of t -> (Tf)(z,t) on |t| = radius/4,
// m = 0..count-1; b_m = (R_m f)(z)/m! * (radius/4)^m up to aliasing. Used for
// the t-analyticity diagnostics.
std::vector<Complex> t_fourier_modes(const HoloFn2& f, Complex z, double radius,
                                     int count, const QuadratureConfig& cfg = {},
                                     int t_nodes = 64);

//! t -> (Tf)(z, t) at fixed (f, z, radius) as a reusable function object: the
//! contour sampling converges once at construction, after which evaluation at
//! any admissible t is a single weighted sum over the stored grid.
class GeneratingFunction {
 public:
  GeneratingFunction(const HoloFn2& f, Complex z, double radius,
                     const QuadratureConfig& cfg = {});
  Complex operator()(Complex t) const;
  double radius() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace genop
