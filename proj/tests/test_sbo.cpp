#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "genop/sbo.hpp"

using genop::Complex;
using genop::GroupElement;
using genop::kI;
using genop::kPi;
using genop::LineBundleParam;
using genop::Parity;
using genop::Side;
using genop::TestSection1D;
using genop::TestSection2D;

namespace {

// Independent dense-grid oracle for the 2D operator: rotated coordinates,
// geometrically graded midpoint toward the diagonal, uniform midpoint in u.
Complex oracle_sbo(Side side, Complex mu, const TestSection2D& f, double zeta, int nu,
                   int levels, int per_level) {
  Side ks = flip(side);
  Complex acc = 0;
  double S = std::max(std::abs(f.lo1 - f.hi2), std::abs(f.hi1 - f.lo2));
  for (int sgn : {-1, 1}) {
    for (int lev = 0; lev < levels; ++lev) {
      double shi = S * std::pow(0.5, lev);
      double slo = (lev == levels - 1) ? 0.0 : S * std::pow(0.5, lev + 1);
      double ds = (shi - slo) / per_level;
      for (int i = 0; i < per_level; ++i) {
        double s = sgn * (slo + (i + 0.5) * ds);
        double ulo = std::max(f.lo1 - 0.5 * s, f.lo2 + 0.5 * s);
        double uhi = std::min(f.hi1 - 0.5 * s, f.hi2 + 0.5 * s);
        if (!(ulo < uhi)) continue;
        double du = (uhi - ulo) / nu;
        Complex inner = 0;
        for (int j = 0; j < nu; ++j) {
          double u = ulo + (j + 0.5) * du;
          double z1 = u + 0.5 * s, z2 = u - 0.5 * s;
          Complex kv = genop::t_power((z1 - zeta) * (z2 - zeta) / s, mu, ks);
          if (kv != Complex(0.0)) inner += f.eval(z1, z2) * kv;
        }
        acc += inner * du * ds / s;
      }
    }
  }
  return acc * (-1.0 / (2.0 * kPi * kI));
}

double u01(std::mt19937_64& eng) { return (eng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("group elements: validation and arithmetic") {
  CHECK_THROWS_AS(GroupElement(1.0, 0.0, 0.0, 2.0), genop::ParameterError);
  GroupElement g(2.0, 1.0, 3.0, 2.0);  // det = 1
  GroupElement gi = g.inverse();
  GroupElement e = g * gi;
  CHECK(std::abs(e.a - 1.0) < 1e-14);
  CHECK(std::abs(e.b) < 1e-14);
  CHECK(std::abs(e.c) < 1e-14);
  CHECK(std::abs(e.d - 1.0) < 1e-14);
  GroupElement x = genop::exp_sl2(0.3, -0.2, 0.15);
  CHECK(std::abs(x.a * x.d - x.b * x.c - 1.0) < 1e-14);
}

TEST_CASE("multiplier action: identity and translations") {
  auto f = [](double x) { return Complex(std::sin(x), std::cos(x)); };
  LineBundleParam p{Complex(1.3, -0.4), Parity::minus};
  for (double x : {-1.2, 0.0, 2.7})
    CHECK(std::abs(multiplier_action(p, GroupElement::identity(), f, x) - f(x)) <
          1e-15);
  // g^{-1} = (1 b; 0 1) acts by x -> x + b with unit multiplier
  double b = 0.8;
  GroupElement g(1.0, -b, 0.0, 1.0);  // so g^{-1} = (1 b; 0 1)
  for (double x : {-0.4, 1.1})
    CHECK(std::abs(multiplier_action(p, g, f, x) - f(x + b)) < 1e-14);
}

TEST_CASE("multiplier action: group law") {
  std::mt19937_64 eng(5);
  auto f = [](double x) { return Complex(std::exp(-x * x / 6.0), 0.1 * x); };
  for (const LineBundleParam& p :
       {LineBundleParam{Complex(1.0), Parity::minus},
        LineBundleParam{Complex(0.3, 0.7), Parity::plus}}) {
    for (int i = 0; i < 10; ++i) {
      GroupElement g1 = genop::exp_sl2(0.4 * u01(eng) - 0.2, 0.4 * u01(eng) - 0.2,
                                       0.4 * u01(eng) - 0.2);
      GroupElement g2 = genop::exp_sl2(0.4 * u01(eng) - 0.2, 0.4 * u01(eng) - 0.2,
                                       0.4 * u01(eng) - 0.2);
      double x = 4.0 * u01(eng) - 2.0;
      Complex lhs = multiplier_action(p, g1 * g2, f, x);
      auto inner = [&](double y) { return multiplier_action(p, g2, f, y); };
      Complex rhs = multiplier_action(p, g1, inner, x);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("multiplier action: chart failure at cx + d = 0") {
  auto f = [](double) { return Complex(1.0); };
  GroupElement g(1.0, 0.0, 1.0, 1.0);  // g^{-1} = (1 0; -1 1), pole at x = 1
  CHECK_THROWS_AS(multiplier_action({Complex(1.0), Parity::plus}, g, f, 1.0),
                  genop::ChartError);
}

TEST_CASE("bump sections vanish outside their support") {
  TestSection1D h = genop::bump_section(-0.5, 1.5);
  CHECK(h.eval(-0.5) == Complex(0.0));
  CHECK(h.eval(1.5) == Complex(0.0));
  CHECK(h.eval(2.0) == Complex(0.0));
  CHECK(std::abs(h.eval(0.5) - 1.0) < 1e-15);  // peak at the midpoint
  TestSection2D f = genop::bump_section2(-1.0, 1.0, -1.0, 1.0, 0.5, 0.0);
  CHECK(f.eval(1.0, 0.0) == Complex(0.0));
  CHECK(std::abs(f.eval(0.0, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("translated sections: support mapping and chart guard") {
  TestSection1D h = genop::bump_section(-0.5, 0.5);
  GroupElement g(1.0, -0.3, 0.0, 1.0);  // moves support by the Moebius map of g
  TestSection1D gh = translate_section({Complex(1.0), Parity::minus}, g, h);
  CHECK(gh.lo == doctest::Approx(-0.8));
  CHECK(gh.hi == doctest::Approx(0.2));
  // support values transport: gh(x) = h(x + 0.3) for this translation
  CHECK(std::abs(gh.eval(-0.3) - h.eval(0.0)) < 1e-14);

  GroupElement w(0.0, -1.0, 1.0, 0.0);  // support crosses the pole of the chart
  CHECK_THROWS_AS(translate_section({Complex(1.0), Parity::minus}, w, h),
                  genop::ChartError);
}

TEST_CASE("sbo_apply: zero section, regime guard") {
  TestSection2D zero{[](double, double) { return Complex(0.0); }, -1, 1, -1, 1};
  CHECK(std::abs(sbo_apply(Side::plus, Complex(-0.5), zero, 0.2)) < 1e-14);
  TestSection2D f = genop::bump_section2(-1.0, 1.0, -1.0, 1.0);
  CHECK_THROWS_AS(sbo_apply(Side::plus, Complex(0.5), f, 0.0), genop::DomainError);
  CHECK_THROWS_AS(sbo_apply(Side::plus, Complex(-1.5), f, 0.0), genop::DomainError);
}

TEST_CASE("sbo_apply: golden values against the frozen refined run") {
  TestSection2D f = genop::bump_section2(-1.2, 0.9, -0.7, 1.1, 0.25, -0.2);
  struct Golden {
    double zeta;
    Side side;
    Complex value;
  };
  const Golden golden[] = {
      {-1.0, Side::plus, Complex(-0.000000000000000e+00, -3.113216156890818e-01)},
      {-1.0, Side::minus, Complex(0.000000000000000e+00, 1.641648931160196e-01)},
      {+0.0, Side::plus, Complex(-0.000000000000000e+00, -7.371590981993007e-01)},
      {+0.0, Side::minus, Complex(0.000000000000000e+00, 3.551738781223174e-01)},
      {+1.0, Side::plus, Complex(-0.000000000000000e+00, -3.338783536490076e-01)},
      {+1.0, Side::minus, Complex(0.000000000000000e+00, 2.065788841253898e-01)},
  };
  for (const Golden& g : golden) {
    Complex got = sbo_apply(g.side, Complex(-0.5), f, g.zeta);
    CHECK(std::abs(got - g.value) <= 2e-5 * (1.0 + std::abs(g.value)));
  }
  // Independent dense-grid oracle at its own (coarser) accuracy.
  for (const Golden& g : golden) {
    Complex orc = oracle_sbo(g.side, Complex(-0.5), f, g.zeta, 800, 34, 40);
    CHECK(std::abs(orc - g.value) <= 2e-3 * (1.0 + std::abs(g.value)));
  }
}

TEST_CASE("sbo_apply: swap antisymmetry") {
  std::mt19937_64 eng(17);
  for (int i = 0; i < 5; ++i) {
    double lo1 = -1.5 + u01(eng), hi1 = lo1 + 0.8 + u01(eng);
    double lo2 = -1.5 + u01(eng), hi2 = lo2 + 0.8 + u01(eng);
    TestSection2D f = genop::bump_section2(lo1, hi1, lo2, hi2, 0.3 * u01(eng), 0.0);
    TestSection2D fswap{[&](double x, double y) { return f.eval(y, x); },
                        f.lo2, f.hi2, f.lo1, f.hi1};
    double zeta = 2.0 * u01(eng) - 1.0;
    Complex mu(-0.35 - 0.5 * u01(eng), 0.0);
    Complex a = sbo_apply(Side::plus, mu, fswap, zeta);
    Complex b = sbo_apply(Side::minus, mu, f, zeta);
    CHECK(std::abs(a + b) <= 1e-6 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("sbo covariance residual is small near the identity") {
  TestSection2D f = genop::bump_section2(-1.2, 0.9, -0.7, 1.1, 0.25, -0.2);
  GroupElement g = genop::exp_sl2(0.08, -0.05, 0.06);
  std::vector<double> probes{-0.8, 0.1, 0.9};
  for (Side side : {Side::plus, Side::minus}) {
    double res = sbo_covariance_residual(side, Complex(-0.5), f, g, probes);
    CHECK(res <= 1e-5);
  }
  CHECK(sbo_covariance_residual(Side::plus, Complex(-0.5), f,
                                GroupElement::identity(), probes) <= 1e-12);
}

TEST_CASE("holographic operator: degenerate cases and golden value") {
  TestSection1D zero{[](double) { return Complex(0.0); }, -1.0, 1.0};
  CHECK(std::abs(holographic_apply(Side::plus, Complex(-0.5), zero, -0.4, 0.6)) <
        1e-14);
  CHECK_THROWS_AS(holographic_apply(Side::plus, Complex(-0.5), zero, 0.5, 0.5),
                  genop::DomainError);

  TestSection1D h = genop::bump_section(-1.0, 1.0);
  // The kernel argument is positive on (-1,1), so the plus side vanishes.
  Complex vplus = holographic_apply(Side::plus, Complex(-0.5), h, -1.0, 1.0);
  CHECK(std::abs(vplus) < 1e-14);
  Complex vminus = holographic_apply(Side::minus, Complex(-0.5), h, -1.0, 1.0);
  CHECK(std::abs(vminus - Complex(-9.498518875696862e-01)) < 1e-9);
}

TEST_CASE("duality pairing reproduces -2 pi i across section pairs") {
  struct P {
    TestSection1D h;
    TestSection2D f;
    Side side;
  };
  const P pairs[] = {
      {genop::bump_section(-1.0, 0.5),
       genop::bump_section2(-0.9, 0.6, -0.5, 0.8, 0.2, 0.0), Side::plus},
      {genop::bump_section(-0.4, 1.1),
       genop::bump_section2(-1.1, 0.4, -0.6, 0.9, 0.0, 0.3), Side::minus},
  };
  Complex expect = -2.0 * kPi * kI;
  for (const P& p : pairs) {
    genop::DualityResult d = duality_pairing(p.side, Complex(-0.5), p.h, p.f);
    CHECK(std::abs(d.ratio - expect) <= 1e-5 * std::abs(expect));
  }
}
