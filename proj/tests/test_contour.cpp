#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "genop/contour.hpp"
#include "oracles.hpp"

using genop::CircleContour;
using genop::Complex;
using genop::HoloFn1;
using genop::HoloFn2;
using genop::kI;
using genop::kPi;

namespace {

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace

TEST_CASE("contour integral: Cauchy formula and holomorphic integrands") {
  Complex a(0.3, -0.2);
  HoloFn1 pole{[a](Complex z) { return 1.0 / (z - a); },
               genop::PlaneMinusPoles{{a}}};
  CircleContour enclosing{Complex(0.0), 1.0, 256};
  CHECK(std::abs(contour_integral(pole, enclosing) - 2.0 * kPi * kI) < 1e-12);

  HoloFn1 mono{[](Complex z) { return z * z * z; }};
  CHECK(std::abs(contour_integral(mono, enclosing)) < 1e-12);

  CircleContour small{Complex(4.0), 1.0, 256};  // pole strictly outside
  CHECK(std::abs(contour_integral(pole, small)) < 1e-12);
}

TEST_CASE("contour integral: radius independence") {
  Complex a(0.1, 0.4);
  HoloFn1 pole{[a](Complex z) { return std::exp(z) / (z - a); },
               genop::PlaneMinusPoles{{a}}};
  Complex v1 = contour_integral(pole, {Complex(0.0), 0.8, 512});
  Complex v2 = contour_integral(pole, {Complex(0.0), 1.7, 512});
  CHECK(std::abs(v1 - v2) < 1e-11 * (1 + std::abs(v1)));
}

TEST_CASE("cauchy_derivative: closed-form cases") {
  HoloFn1 expfn{[](Complex z) { return std::exp(z); }};
  for (int ell : {0, 1, 3, 7})
    CHECK(rel_err(cauchy_derivative(expfn, Complex(0.0), ell), Complex(1.0)) < 1e-12);

  HoloFn1 sq{[](Complex z) { return z * z; }};
  CHECK(rel_err(cauchy_derivative(sq, Complex(0.7, 0.1), 2), Complex(2.0)) < 1e-12);

  // f = 1/(1-z): f^(3)(0) = 3! = 6
  HoloFn1 geom{[](Complex z) { return 1.0 / (1.0 - z); },
               genop::PlaneMinusPoles{{Complex(1.0)}}};
  CHECK(rel_err(cauchy_derivative(geom, Complex(0.0), 3), Complex(6.0)) < 1e-11);
}

TEST_CASE("cauchy_derivative agrees with the symbolic oracle on rationals") {
  using oracles::Poly;
  using oracles::Rational;
  // Degree-<=10 polynomials and rationals with poles away from the disk.
  Poly p{{Complex(1.0), Complex(-2.0, 0.5), Complex(0.0), Complex(3.0),
          Complex(0.0), Complex(0.25), Complex(0.0), Complex(0.0), Complex(-1.5),
          Complex(0.0), Complex(0.125)}};
  Poly q{{Complex(2.0), Complex(0.0), Complex(1.0)}};  // 2 + z^2, zeros at +-i sqrt2
  Rational r{p, q};

  HoloFn1 fp{[&](Complex z) { return p.eval(z); }};
  HoloFn1 fr{[&](Complex z) { return r.eval(z); },
             genop::PlaneMinusPoles{{std::sqrt(2.0) * kI, -std::sqrt(2.0) * kI}}};
  for (Complex z0 : {Complex(0.0), Complex(0.4, 0.2), Complex(-0.3, -0.1)}) {
    for (int ell : {0, 1, 2, 4, 6}) {
      Complex want_p = p.derivative(ell).eval(z0);
      CHECK(std::abs(cauchy_derivative(fp, z0, ell) - want_p) <=
            1e-10 * (1 + std::abs(want_p)));
      Complex want_r = r.derivative_at(z0, ell);
      CHECK(std::abs(cauchy_derivative(fr, z0, ell) - want_r) <=
            1e-10 * (1 + std::abs(want_r)));
    }
  }
}

TEST_CASE("mixed_partial: closed-form cases and the symbolic oracle") {
  HoloFn2 f1{[](Complex z1, Complex z2) { return z1 * z2; }};
  CHECK(rel_err(mixed_partial(f1, Complex(0.2), 1, 1), Complex(1.0)) < 1e-11);

  HoloFn2 f2{[](Complex z1, Complex z2) { return z1 * z1 * z2; }};
  CHECK(rel_err(mixed_partial(f2, Complex(-0.4, 0.1), 2, 1), Complex(2.0)) < 1e-11);

  HoloFn2 c{[](Complex, Complex) { return Complex(5.0, -1.0); }};
  CHECK(std::abs(mixed_partial(c, Complex(0.0), 3, 2)) < 1e-11);

  oracles::Poly2 p{{{Complex(1.0), Complex(0.5)},
                    {Complex(-2.0), Complex(1.5), Complex(0.25)},
                    {Complex(0.0), Complex(3.0)}}};
  HoloFn2 fp{[&](Complex z1, Complex z2) { return p.eval(z1, z2); }};
  for (int pp : {0, 1, 2})
    for (int qq : {0, 1, 2}) {
      Complex want = p.mixed_at(Complex(0.3), Complex(0.3), pp, qq);
      CHECK(std::abs(mixed_partial(fp, Complex(0.3), pp, qq) - want) <=
            1e-10 * (1 + std::abs(want)));
    }
}

TEST_CASE("mixed_partial_table matches single extractions") {
  HoloFn2 f{[](Complex z1, Complex z2) { return std::exp(z1 - 0.5 * z2) * (z1 + z2); }};
  genop::PartialTable t = mixed_partial_table(f, Complex(0.1, 0.2), 4, 0.8);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      Complex single = mixed_partial(f, Complex(0.1, 0.2), p, q, 0.8);
      CHECK(std::abs(t.at(p, q) - single) <= 1e-9 * (1 + std::abs(single)));
    }
}

TEST_CASE("node-doubling stability under the configured tolerance") {
  // Property: once converged, doubling the nodes moves the value below tol.
  oracles::Poly p{{Complex(0.3), Complex(1.0, -0.4), Complex(0.0), Complex(2.0)}};
  HoloFn1 f{[&](Complex z) { return p.eval(z) / (z - Complex(2.5)); },
            genop::PlaneMinusPoles{{Complex(2.5)}}};
  genop::QuadratureConfig cfg;
  genop::Converged c = contour_integral_converged(f, Complex(0.0), 1.0, cfg);
  CHECK(!c.trace.empty());
  CHECK(c.trace.back().second <= cfg.tolerance);
}

TEST_CASE("default radius rule") {
  genop::Domain entire = genop::Entire{};
  CHECK(genop::default_radius(entire, Complex(3.0)) == doctest::Approx(1.0));
  genop::Domain poles = genop::PlaneMinusPoles{{kI, -kI}};
  CHECK(genop::default_radius(poles, Complex(0.0)) == doctest::Approx(0.5));
}

TEST_CASE("error paths") {
  HoloFn1 geom{[](Complex z) { return 1.0 / (1.0 - z); },
               genop::PlaneMinusPoles{{Complex(1.0)}}};
  // radius reaching the declared singularity
  CHECK_THROWS_AS(cauchy_derivative(geom, Complex(0.0), 1, 1.0), genop::DomainError);
  // non-finite node value
  HoloFn1 bad{[](Complex) { return Complex(std::nan(""), 0.0); }};
  CHECK_THROWS_AS(contour_integral(bad, CircleContour{Complex(0.0), 1.0, 64}),
                  genop::QuadratureDomainError);
  // invalid node counts
  HoloFn1 one{[](Complex) { return Complex(1.0); }};
  CHECK_THROWS_AS(contour_integral(one, CircleContour{Complex(0.0), 1.0, 100}),
                  genop::ParameterError);
  CHECK_THROWS_AS(contour_integral(one, CircleContour{Complex(0.0), 1.0, 4}),
                  genop::ParameterError);
}

TEST_CASE("binomial coefficients are exact integers") {
  CHECK(genop::binomial(12, 6) == 924);
  CHECK(genop::binomial(8, 3) == 56);
  CHECK(genop::binomial(5, 0) == 1);
  CHECK(genop::binomial(5, 5) == 1);
  CHECK(genop::binomial(3, 4) == 0);
  long long total = 0;
  for (int k = 0; k <= 20; ++k) total += genop::binomial(20, k);
  CHECK(total == (1ll << 20));
}
