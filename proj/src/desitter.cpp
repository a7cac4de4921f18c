#include "genop/desitter.hpp"

#include <algorithm>
#include <cmath>

#include "genop/quad1d.hpp"

namespace genop {

namespace {

Complex int_pow(Complex base, int n) {
  if (n < 0) return 1.0 / int_pow(base, -n);
  Complex acc = 1.0;
  for (int k = 0; k < n; ++k) acc *= base;
  return acc;
}

void fill_charts(DeSitterPoint& p) {
  p.t = std::asinh(p.z);
  p.theta = std::atan2(p.y, p.x);
  if (p.theta < 0) p.theta += 2.0 * kPi;
  p.chart_valid = (p.y != p.z) && (p.x != -1.0);
  if (p.chart_valid) {
    p.zeta1 = -(p.y + p.z) / (p.x + 1.0);
    p.zeta2 = (p.x + 1.0) / (p.y - p.z);
  }
}

}  // namespace

DeSitterPoint DeSitterPoint::from_ambient(double x, double y, double z) {
  double res = std::abs(x * x + y * y - z * z - 1.0);
  if (res > 1e-10 * (1.0 + x * x + y * y + z * z))
    throw DomainError("point does not lie on the quadric x^2 + y^2 - z^2 = 1");
  DeSitterPoint p;
  p.x = x;
  p.y = y;
  p.z = z;
  fill_charts(p);
  return p;
}

DeSitterPoint DeSitterPoint::from_hyperbolic(double t, double theta) {
  DeSitterPoint p;
  double ch = std::cosh(t);
  p.x = ch * std::cos(theta);
  p.y = ch * std::sin(theta);
  p.z = std::sinh(t);
  fill_charts(p);
  return p;
}

DeSitterPoint DeSitterPoint::from_bruhat(double zeta1, double zeta2) {
  if (zeta1 == zeta2) throw ChartError("Bruhat chart requires zeta1 != zeta2");
  double diff = zeta1 - zeta2;
  DeSitterPoint p;
  p.x = -(zeta1 + zeta2) / diff;
  p.y = (zeta1 * zeta2 - 1.0) / diff;
  p.z = (zeta1 * zeta2 + 1.0) / diff;
  fill_charts(p);
  return p;
}

DeSitterPoint ds_from_group(const GroupElement& g) {
  DeSitterPoint p;
  p.x = g.a * g.d + g.b * g.c;
  p.y = -g.a * g.b + g.c * g.d;
  p.z = -g.a * g.b - g.c * g.d;
  fill_charts(p);
  return p;
}

std::array<std::array<double, 2>, 2> ambient_matrix(const DeSitterPoint& p) {
  return {{{p.x, p.y + p.z}, {p.y - p.z, -p.x}}};
}

DeSitterPoint ds_act(const GroupElement& g, const DeSitterPoint& p) {
  auto m = ambient_matrix(p);
  GroupElement gi = g.inverse();
  // g * A
  double t00 = g.a * m[0][0] + g.b * m[1][0];
  double t01 = g.a * m[0][1] + g.b * m[1][1];
  double t10 = g.c * m[0][0] + g.d * m[1][0];
  double t11 = g.c * m[0][1] + g.d * m[1][1];
  // (g A) * g^{-1}
  double a00 = t00 * gi.a + t01 * gi.c;
  double a01 = t00 * gi.b + t01 * gi.d;
  double a10 = t10 * gi.a + t11 * gi.c;
  (void)t11;
  DeSitterPoint q;
  q.x = a00;
  q.y = 0.5 * (a01 + a10);
  q.z = 0.5 * (a01 - a10);
  fill_charts(q);
  return q;
}

double measure_density(const DeSitterPoint& p, Chart chart) {
  switch (chart) {
    case Chart::ambient_xy:
      if (p.z == 0.0) throw ChartError("(x,y) chart density undefined at z = 0");
      return 1.0 / std::abs(p.z);
    case Chart::hyperbolic:
      return std::cosh(p.t);
    case Chart::bruhat: {
      if (!p.chart_valid) throw ChartError("point is outside the Bruhat chart");
      double diff = p.zeta1 - p.zeta2;
      return 2.0 / (diff * diff);
    }
  }
  throw ParameterError("unknown chart");
}

DeSitterFn pullback(Complex lambda, const std::function<Complex(double, double)>& f) {
  bool integer = std::abs(lambda.imag()) < 1e-13 &&
                 std::abs(lambda.real() - std::round(lambda.real())) < 1e-13;
  int n = integer ? static_cast<int>(std::lround(lambda.real())) : 0;
  return [lambda, integer, n, f](const DeSitterPoint& p) -> Complex {
    if (!p.chart_valid) throw ChartError("pullback evaluated outside the Bruhat chart");
    double diff = p.zeta1 - p.zeta2;
    Complex factor = integer ? int_pow(Complex(diff), n)
                             : std::exp(lambda * std::log(Complex(diff)));
    return factor * f(p.zeta1, p.zeta2);
  };
}

namespace {

Complex laplacian_raw(const DeSitterFn& F, const DeSitterPoint& p, double h) {
  auto at = [&](double dt, double dth) {
    return F(DeSitterPoint::from_hyperbolic(p.t + dt, p.theta + dth));
  };
  Complex f0 = F(p);
  auto second = [&](bool in_t, double step) {
    Complex fp2 = in_t ? at(2 * step, 0) : at(0, 2 * step);
    Complex fp1 = in_t ? at(step, 0) : at(0, step);
    Complex fm1 = in_t ? at(-step, 0) : at(0, -step);
    Complex fm2 = in_t ? at(-2 * step, 0) : at(0, -2 * step);
    return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * step * step);
  };
  auto first_t = [&](double step) {
    return (-at(2 * step, 0) + 8.0 * at(step, 0) - 8.0 * at(-step, 0) +
            at(-2 * step, 0)) /
           (12.0 * step);
  };
  double ch = std::cosh(p.t);
  auto lap = [&](double step) {
    return -second(true, step) - std::tanh(p.t) * first_t(step) +
           second(false, step) / (ch * ch);
  };
  Complex l1 = lap(h);
  Complex l2 = lap(0.5 * h);
  return (16.0 * l2 - l1) / 15.0;
}

}  // namespace

int laplacian_sign() {
  static const int sign = [] {
    DeSitterPoint p = DeSitterPoint::from_hyperbolic(0.31, 0.77);
    DeSitterFn f1 = eigenfunction({1, Side::plus});
    Complex ratio = laplacian_raw(f1, p, 1e-3) / f1(p);
    // lambda = 2l+2 at l = 1: eigenvalue -l(l+1) = -2.
    return std::abs(ratio - Complex(-2.0)) <= std::abs(ratio + Complex(-2.0)) ? 1 : -1;
  }();
  return sign;
}

Complex laplacian_ds(const DeSitterFn& F, const DeSitterPoint& p, double h) {
  if (!(h > 0) || h > 0.1) throw ParameterError("laplacian step must lie in (0, 0.1]");
  return static_cast<double>(laplacian_sign()) * laplacian_raw(F, p, h);
}

DeSitterFn eigenfunction(const DiscreteSeriesLabel& d) {
  if (d.ell < 0) throw ParameterError("discrete series label requires ell >= 0");
  int ell = d.ell;
  double s = d.sign == Side::plus ? 1.0 : -1.0;
  return [ell, s](const DeSitterPoint& p) {
    return int_pow(kI / Complex(p.x, s * p.y), ell + 1);
  };
}

HoloFn2 extended_eigenfunction(const DiscreteSeriesLabel& d) {
  if (d.ell < 0) throw ParameterError("discrete series label requires ell >= 0");
  int ell = d.ell;
  Complex pole = d.sign == Side::plus ? -kI : kI;
  // Sign normalization keeps pullback(1, .) equal to f_ell^pm on the nose.
  double scale = d.sign == Side::plus ? 1.0 : ((ell % 2 == 0) ? -1.0 : 1.0);
  HoloFn2 f;
  f.eval = [ell, pole, scale](Complex z1, Complex z2) {
    Complex num = int_pow(z1 - z2, ell);
    return scale * num * int_pow((z1 - pole) * (z2 - pole), -(ell + 1));
  };
  f.domain1 = PlaneMinusPoles{{pole}};
  f.domain2 = PlaneMinusPoles{{pole}};
  return f;
}

Complex poisson_apply(Side side, Complex lambda, const TestSection1D& h,
                      const DeSitterPoint& p, double tol) {
  if (!(lambda.real() > 0))
    throw DomainError("poisson transform requires Re lambda > 0");
  if (p.x == -1.0) throw ChartError("poisson kernel undefined at x = -1");
  const Complex mu = 0.5 * lambda - 1.0;
  const Side kside = flip(side);
  const double opx = 1.0 + p.x;
  const double ymz = p.y - p.z;
  if (ymz != 0.0) {
    // Kernel argument -(y-z)/2 (zeta - r1)(zeta - r2) with the Bruhat
    // coordinates of p as roots.
    double r1 = -(p.y + p.z) / opx;
    double r2 = opx / ymz;
    double lead = -0.5 * ymz;
    auto F = [&](double, double d1, double d2) {
      return t_power(lead * d1 * d2, mu, kside);
    };
    auto integrand = [&](double zeta, double d1, double d2) -> Complex {
      Complex kv = F(zeta, d1, d2);
      if (kv == Complex(0.0)) return kv;
      return h.eval(zeta) * kv;
    };
    return quad::with_roots(integrand, h.lo, h.hi, r1, r2, tol);
  }
  // y = z: the quadratic degenerates to the linear factor ((1+x)zeta+(y+z))/2.
  double r1 = -(p.y + p.z) / opx;
  double lead = 0.5 * opx;
  auto integrand = [&](double zeta, double d1, double) -> Complex {
    Complex kv = t_power(lead * d1, mu, kside);
    if (kv == Complex(0.0)) return kv;
    return h.eval(zeta) * kv;
  };
  return quad::with_roots(integrand, h.lo, h.hi, r1, 1e300, tol);
}

Complex fourier_apply(Side side, Complex lambda, const DeSitterSection& h, double zeta,
                      double tol) {
  if (!(lambda.real() < 2.0))
    throw DomainError("fourier transform requires Re lambda < 2");
  if (!(h.lo1 < h.hi1 && h.lo2 < h.hi2))
    throw ParameterError("fourier section support must be a proper box");
  if (h.lo1 <= h.hi2 && h.lo2 <= h.hi1)
    throw ParameterError("fourier section support must stay clear of the diagonal");
  const Complex nu = -0.5 * lambda;
  const Side kside = flip(side);
  auto outer = [&](double z1, double e1) -> Complex {
    auto integrand = [&](double z2, double e2, double) -> Complex {
      double diff = z1 - z2;
      Complex kv = t_power(e1 * e2 / diff, nu, kside);
      if (kv == Complex(0.0)) return kv;
      DeSitterPoint p = DeSitterPoint::from_bruhat(z1, z2);
      return h.eval(p) * kv * (2.0 / (diff * diff));
    };
    return quad::with_roots(integrand, h.lo2, h.hi2, zeta, 1e300, 0.2 * tol);
  };
  auto integrand1 = [&](double z1, double e1, double) { return outer(z1, e1); };
  return quad::with_roots(integrand1, h.lo1, h.hi1, zeta, 1e300, tol);
}

EmbeddingReport embedding_check(const DiscreteSeriesLabel& d,
                                const std::vector<double>& probes,
                                const BracketOptions& opts) {
  HoloFn2 f = extended_eigenfunction(d);
  double coeff = factorial(2 * d.ell) / factorial(d.ell);
  double scale = d.sign == Side::plus ? 1.0 : ((d.ell % 2 == 0) ? -1.0 : 1.0);
  Complex pole = d.sign == Side::plus ? -kI : kI;
  EmbeddingReport rep;
  rep.probes = probes;
  rep.min_abs = infinity();
  for (double zeta : probes) {
    Complex value = rc_bracket(f, d.ell, Complex(zeta), opts);
    Complex closed = scale * coeff * int_pow(Complex(zeta) - pole, -(2 * d.ell + 2));
    rep.bracket.push_back(value);
    rep.closed_form.push_back(closed);
    rep.max_rel_err =
        std::max(rep.max_rel_err, std::abs(value - closed) / std::abs(closed));
    rep.min_abs = std::min(rep.min_abs, std::abs(value));
  }
  return rep;
}

}  // namespace genop
