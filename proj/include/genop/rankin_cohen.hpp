#pragma once

#include <vector>

#include "genop/contour.hpp"

namespace genop {

struct BracketOptions {
  int max_order = 12;      // largest admissible bracket order
  double radius = 0.0;     // 0 -> default radius rule per variable
  QuadratureConfig quad{};
};

// Resolved bidisk radius for brackets of f at z (explicit radius wins).
double bracket_radius(const HoloFn2& f, Complex z, const BracketOptions& opts);

// (R_ell f)(z) = sum_{j=0}^{ell} (-1)^j C(ell,j)^2
//                d^ell f / dzeta1^{ell-j} dzeta2^j |_{zeta1=zeta2=z},
// every mixed partial taken as a double Cauchy integral.
Complex rc_bracket(const HoloFn2& f, int ell, Complex z, const BracketOptions& opts = {});

// All brackets R_0 f, ..., R_max_ell f at z from one converged sampling.
std::vector<Complex> rc_bracket_all(const HoloFn2& f, int max_ell, Complex z,
                                    const BracketOptions& opts = {});

// Independent route: d^{2 ell} / dzeta1^ell dzeta2^ell of (zeta1 - zeta2)^ell f
// on the diagonal equals (-1)^ell ell! (R_ell f)(z).
Complex rc_via_lemma(const HoloFn2& f, int ell, Complex z, const BracketOptions& opts = {});

}  // namespace genop
