#pragma once

#include <array>
#include <functional>
#include <vector>

#include "genop/rankin_cohen.hpp"
#include "genop/regularized.hpp"
#include "genop/sbo.hpp"

namespace genop {

//! A point of dS^2 = {x^2 + y^2 - z^2 = 1}, carried simultaneously in the
//! ambient, hyperbolic (x,y,z) = (cosh t cos th, cosh t sin th, sinh t) and
//! Bruhat (zeta1, zeta2) charts. The Bruhat chart exists when y != z and
//! x != -1; then zeta1 - zeta2 = -2/(y - z).
struct DeSitterPoint {
  double x, y, z;
  double t, theta;
  bool chart_valid = false;
  double zeta1 = 0.0, zeta2 = 0.0;

  static DeSitterPoint from_ambient(double x, double y, double z);
  static DeSitterPoint from_hyperbolic(double t, double theta);
  static DeSitterPoint from_bruhat(double zeta1, double zeta2);
};

// gH -> Ad(g) E_{1,1}: (x, y, z) = (ad + bc, -ab + cd, -ab - cd).
DeSitterPoint ds_from_group(const GroupElement& g);

// The ambient matrix realization (x, y+z; y-z, -x) of a point.
std::array<std::array<double, 2>, 2> ambient_matrix(const DeSitterPoint& p);

// Adjoint action A -> g A g^{-1} on the ambient matrix realization.
DeSitterPoint ds_act(const GroupElement& g, const DeSitterPoint& p);

enum class Chart { ambient_xy, hyperbolic, bruhat };

// Density of the invariant measure in the requested chart: 1/|z| for the
// (x,y) projection (z != 0), cosh t for the hyperbolic chart and
// 2/(zeta1-zeta2)^2 for the Bruhat chart.
double measure_density(const DeSitterPoint& p, Chart chart);

using DeSitterFn = std::function<Complex(const DeSitterPoint&)>;

// Pullback of a two-variable Bruhat section to dS^2:
// F(x,y,z) = (zeta1 - zeta2)^lambda f(zeta1, zeta2).
DeSitterFn pullback(Complex lambda, const std::function<Complex(double, double)>& f);

// Lorentzian Laplacian in the hyperbolic chart by fourth-order central
// differences with one Richardson refinement; the overall sign is a module
// constant calibrated once on the lowest nontrivial eigenfunction.
Complex laplacian_ds(const DeSitterFn& F, const DeSitterPoint& p, double h = 1e-3);
int laplacian_sign();

struct DiscreteSeriesLabel {
  int ell = 0;
  Side sign = Side::plus;
};

// f_ell^pm = (i/(x +- i y))^{ell+1}, the explicit eigenfunction with
// Laplacian eigenvalue -ell(ell+1).
DeSitterFn eigenfunction(const DiscreteSeriesLabel& d);

// Its analytic extension to the Bruhat plane,
//   sign +: (z1-z2)^ell ((z1+i)(z2+i))^{-ell-1}
//   sign -: (-1)^{ell+1} (z1-z2)^ell ((z1-i)(z2-i))^{-ell-1},
// normalized so that pullback(1, .) recovers f_ell^pm exactly.
HoloFn2 extended_eigenfunction(const DiscreteSeriesLabel& d);

// Poisson transform (P_lambda^pm h)(p) = \int K_mp^{lambda/2-1}(p; zeta) h dzeta
// for Re lambda > 0; the kernel quadratic's real roots are the Bruhat
// coordinates of p.
Complex poisson_apply(Side side, Complex lambda, const TestSection1D& h,
                      const DeSitterPoint& p, double tol = 1e-11);

//! Compactly supported function on dS^2 whose support is the image of a
//! Bruhat box staying clear of the diagonal.
struct DeSitterSection {
  DeSitterFn eval;
  double lo1, hi1, lo2, hi2;  // Bruhat support box, [lo1,hi1] x [lo2,hi2]
};

// Fourier transform (F_lambda^pm h)(zeta) = \int_{dS^2} K_mp^{-lambda/2} h dmu
// for Re lambda < 2, integrated in the Bruhat chart against the invariant
// measure density 2/(zeta1-zeta2)^2.
Complex fourier_apply(Side side, Complex lambda, const DeSitterSection& h, double zeta,
                      double tol = 1e-9);

//! Bracket values of the extended eigenfunctions on a probe grid, compared
//! against the closed form (2l)!/l! (zeta + i)^{-2l-2} (mirrored for sign -).
struct EmbeddingReport {
  std::vector<double> probes;
  std::vector<Complex> bracket;
  std::vector<Complex> closed_form;
  double max_rel_err = 0.0;
  double min_abs = 0.0;
};
EmbeddingReport embedding_check(const DiscreteSeriesLabel& d,
                                const std::vector<double>& probes,
                                const BracketOptions& opts = {});

}  // namespace genop
