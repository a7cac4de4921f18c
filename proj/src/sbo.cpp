#include "genop/sbo.hpp"

#include <algorithm>
#include <cmath>

#include "genop/quad1d.hpp"

namespace genop {

namespace {

void check_sbo_regime(Complex mu, const char* what) {
  if (!(mu.real() > -1.0 && mu.real() < 0.0))
    throw DomainError(std::string(what) + ": requires -1 < Re mu < 0");
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

GroupElement::GroupElement(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (std::abs(a * d - b * c - 1.0) > 1e-12)
    throw ParameterError("group element must have determinant 1");
}

double GroupElement::moebius(double x) const {
  double den = c * x + d;
  if (std::abs(den) < 1e-14 * (1.0 + std::abs(x)))
    throw ChartError("point leaves the Bruhat cell under the group action");
  return (a * x + b) / den;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
          g.c * h.b + g.d * h.d};
}

GroupElement exp_sl2(double ae, double af, double ah) {
  // xi = (ah ae; af -ah), xi^2 = (ah^2 + ae af) I
  double disc = ah * ah + ae * af;
  double ch, sh;  // exp(xi) = ch I + sh xi
  if (disc > 0) {
    double s = std::sqrt(disc);
    ch = std::cosh(s);
    sh = std::sinh(s) / s;
  } else if (disc < 0) {
    double s = std::sqrt(-disc);
    ch = std::cos(s);
    sh = std::sin(s) / s;
  } else {
    ch = 1.0;
    sh = 1.0;
  }
  return {ch + sh * ah, sh * ae, sh * af, ch - sh * ah};
}

Complex multiplier_action(const LineBundleParam& p, const GroupElement& g,
                          const std::function<Complex(double)>& f, double x) {
  GroupElement gi = g.inverse();
  double den = gi.c * x + gi.d;
  if (std::abs(den) < 1e-14 * (1.0 + std::abs(x)))
    throw ChartError("multiplier action undefined at cx + d = 0");
  Complex mult = std::exp(-p.lambda * std::log(std::abs(den)));
  if (p.eps == Parity::minus) mult *= sgn(den);
  return mult * f((gi.a * x + gi.b) / den);
}

TestSection1D bump_section(double lo, double hi) {
  if (!(lo < hi)) throw ParameterError("bump support must be a proper interval");
  auto eval = [lo, hi](double x) -> Complex {
    double u = (2.0 * x - lo - hi) / (hi - lo);
    if (!(std::abs(u) < 1.0)) return Complex(0.0);
    return Complex(std::exp(1.0 - 1.0 / (1.0 - u * u)));
  };
  return {eval, lo, hi};
}

TestSection2D bump_section2(double lo1, double hi1, double lo2, double hi2, double mx,
                            double my) {
  if (!(lo1 < hi1 && lo2 < hi2))
    throw ParameterError("bump support must be a proper box");
  auto eval = [=](double x, double y) -> Complex {
    double u = (2.0 * x - lo1 - hi1) / (hi1 - lo1);
    double v = (2.0 * y - lo2 - hi2) / (hi2 - lo2);
    if (!(std::abs(u) < 1.0 && std::abs(v) < 1.0)) return Complex(0.0);
    double b = std::exp(2.0 - 1.0 / (1.0 - u * u) - 1.0 / (1.0 - v * v));
    return Complex(b * (1.0 + mx * x + my * y));
  };
  return {eval, lo1, hi1, lo2, hi2};
}

namespace {

// Image [lo, hi] under the Moebius action of g; requires cx+d to keep its
// sign on the interval.
std::pair<double, double> map_interval(const GroupElement& g, double lo, double hi) {
  double dlo = g.c * lo + g.d;
  double dhi = g.c * hi + g.d;
  if (dlo == 0.0 || dhi == 0.0 || sgn(dlo) != sgn(dhi))
    throw ChartError("support crosses the Bruhat chart boundary under the action");
  double e1 = g.moebius(lo);
  double e2 = g.moebius(hi);
  return {std::min(e1, e2), std::max(e1, e2)};
}

}  // namespace

TestSection1D translate_section(const LineBundleParam& p, const GroupElement& g,
                                const TestSection1D& f) {
  auto base = f.eval;
  auto eval = [p, g, base](double x) { return multiplier_action(p, g, base, x); };
  auto [lo, hi] = map_interval(g, f.lo, f.hi);
  return {eval, lo, hi};
}

TestSection2D translate_section2(const LineBundleParam& p, const GroupElement& g,
                                 const TestSection2D& f) {
  auto base = f.eval;
  GroupElement gi = g.inverse();
  Complex lambda = p.lambda;
  Parity eps = p.eps;
  auto eval = [gi, lambda, eps, base](double x, double y) -> Complex {
    double denx = gi.c * x + gi.d;
    double deny = gi.c * y + gi.d;
    if (std::abs(denx) < 1e-14 * (1.0 + std::abs(x)) ||
        std::abs(deny) < 1e-14 * (1.0 + std::abs(y)))
      throw ChartError("section evaluation left the Bruhat cell");
    Complex mult = std::exp(-lambda * (std::log(std::abs(denx)) + std::log(std::abs(deny))));
    if (eps == Parity::minus) mult *= sgn(denx) * sgn(deny);
    return mult * base((gi.a * x + gi.b) / denx, (gi.a * y + gi.b) / deny);
  };
  auto [lo1, hi1] = map_interval(g, f.lo1, f.hi1);
  auto [lo2, hi2] = map_interval(g, f.lo2, f.hi2);
  return {eval, lo1, hi1, lo2, hi2};
}

Complex sbo_apply(Side side, Complex mu, const TestSection2D& f, double zeta,
                  const SboResolution& res) {
  check_sbo_regime(mu, "sbo_apply");
  const Side kside = flip(side);
  const double slo = f.lo1 - f.hi2;
  const double shi = f.hi1 - f.lo2;
  if (!(slo < shi)) return Complex(0.0);

  // Inner integral at fixed separation s, in the shifted variable
  // v = (zeta1+zeta2)/2 - zeta, whose kernel roots sit exactly at -+s/2; this
  // keeps the root offsets cancellation-free even as the roots coalesce on
  // the diagonal.
  auto inner = [&](double s) -> Complex {
    double vlo = std::max(f.lo1 - 0.5 * s, f.lo2 + 0.5 * s) - zeta;
    double vhi = std::min(f.hi1 - 0.5 * s, f.hi2 + 0.5 * s) - zeta;
    if (!(vlo < vhi)) return Complex(0.0);
    auto F = [&](double v, double d1, double d2) -> Complex {
      // d1 = zeta1 - zeta, d2 = zeta2 - zeta
      Complex kv = t_power(d1 * d2 / s, mu, kside);
      if (kv == Complex(0.0)) return kv;
      double u = zeta + v;
      return f.eval(u + 0.5 * s, u - 0.5 * s) * kv;
    };
    return quad::with_roots(F, vlo, vhi, -0.5 * s, 0.5 * s, res.tol_inner);
  };

  // Kink locations of the outer integrand: u-range corners and the s-values
  // where a kernel root enters or leaves the u-range.
  std::vector<double> kinks{f.lo1 - f.lo2, f.hi1 - f.hi2, zeta - f.lo2,
                            zeta - f.hi2,  f.lo1 - zeta,  f.hi1 - zeta};
  auto G = [&](double s, double d0, double) -> Complex {
    if (d0 == 0.0) return Complex(0.0);
    return inner(d0) / d0;
  };
  Complex raw = quad::with_roots(G, slo, shi, 0.0, 1e300, res.tol_outer, kinks);
  return raw * (-1.0 / (2.0 * kPi * kI));
}

double sbo_covariance_residual(Side side, Complex mu, const TestSection2D& f,
                               const GroupElement& g, const std::vector<double>& probes,
                               const SboResolution& res) {
  check_sbo_regime(mu, "sbo_covariance_residual");
  const LineBundleParam in{Complex(1.0), Parity::minus};
  const LineBundleParam out{-2.0 * mu, Parity::plus};
  TestSection2D moved = translate_section2(in, g, f);
  auto tf = [&](double x) { return sbo_apply(side, mu, f, x, res); };
  double worst = 0.0;
  for (double zeta : probes) {
    Complex lhs = sbo_apply(side, mu, moved, zeta, res);
    Complex rhs = multiplier_action(out, g, tf, zeta);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

Complex holographic_apply(Side side, Complex mu, const TestSection1D& h, double zeta1,
                          double zeta2, double tol) {
  if (zeta1 == zeta2) throw DomainError("holographic operator requires zeta1 != zeta2");
  check_sbo_regime(mu, "holographic_apply");
  const Side kside = flip(side);
  const double diff = zeta1 - zeta2;
  auto F = [&](double, double d1, double d2) -> Complex {
    // d1 = zeta - zeta1, d2 = zeta - zeta2; the two sign flips cancel.
    return t_power(d1 * d2 / diff, mu, kside);
  };
  auto integrand = [&](double zeta, double d1, double d2) -> Complex {
    Complex kv = F(zeta, d1, d2);
    if (kv == Complex(0.0)) return kv;
    return h.eval(zeta) * kv;
  };
  Complex raw = quad::with_roots(integrand, h.lo, h.hi, zeta1, zeta2, tol);
  return raw / diff;
}

DualityResult duality_pairing(Side side, Complex mu, const TestSection1D& h,
                              const TestSection2D& f, const SboResolution& res) {
  check_sbo_regime(mu, "duality_pairing");
  const Side kside = flip(side);

  // <H_mu h, f>: rotated coordinates; H carries the 1/s diagonal factor, so
  // the s-integration runs through the same endpoint-anchored rule. The
  // kernel line integral runs in the shifted variable w = zeta - u so its
  // roots sit exactly at +-s/2.
  auto kernel_line = [&](double u, double s) -> Complex {
    auto integrand = [&](double w, double e1, double e2) -> Complex {
      // e1 = zeta - z1, e2 = zeta - z2
      Complex kv = t_power(e1 * e2 / s, mu, kside);
      if (kv == Complex(0.0)) return kv;
      return h.eval(u + w) * kv;
    };
    return quad::with_roots(integrand, h.lo - u, h.hi - u, 0.5 * s, -0.5 * s,
                            0.1 * res.tol_inner);
  };
  auto inner_u = [&](double s) -> Complex {
    double ulo = std::max(f.lo1 - 0.5 * s, f.lo2 + 0.5 * s);
    double uhi = std::min(f.hi1 - 0.5 * s, f.hi2 + 0.5 * s);
    if (!(ulo < uhi)) return Complex(0.0);
    auto F = [&](double u) -> Complex {
      Complex fv = f.eval(u + 0.5 * s, u - 0.5 * s);
      if (fv == Complex(0.0)) return fv;
      return fv * kernel_line(u, s);
    };
    return quad::tanh_sinh(F, ulo, uhi, res.tol_inner);
  };
  std::vector<double> kinks{f.lo1 - f.lo2, f.hi1 - f.hi2};
  auto G = [&](double s, double d0, double) -> Complex {
    if (d0 == 0.0) return Complex(0.0);
    return inner_u(d0) / d0;
  };
  Complex bulk = quad::with_roots(G, f.lo1 - f.hi2, f.hi1 - f.lo2, 0.0, 1e300,
                                  res.tol_outer, kinks);

  // <h, T_mu f>: smooth integrand over the support of h.
  auto boundary_integrand = [&](double zeta) {
    Complex hv = h.eval(zeta);
    if (hv == Complex(0.0)) return hv;
    return hv * sbo_apply(side, mu, f, zeta, res);
  };
  Complex boundary = quad::gauss_kronrod(boundary_integrand, h.lo, h.hi, 3e-7);

  DualityResult out;
  out.bulk_pairing = bulk;
  out.boundary_pairing = boundary;
  out.ratio = bulk / boundary;
  return out;
}

}  // namespace genop
