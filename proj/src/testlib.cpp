#include "genop/testlib.hpp"

#include <cmath>

#include "genop/desitter.hpp"

namespace genop {

namespace {

std::vector<TestFn2> build_library() {
  std::vector<TestFn2> lib;
  auto add = [&](std::string name, HoloFn2 fn) {
    lib.push_back({std::move(name), std::move(fn)});
  };

  add("one", {[](Complex, Complex) { return Complex(1.0); }});
  add("z1", {[](Complex z1, Complex) { return z1; }});
  add("z2", {[](Complex, Complex z2) { return z2; }});
  add("z1*z2", {[](Complex z1, Complex z2) { return z1 * z2; }});
  add("z1^2*z2", {[](Complex z1, Complex z2) { return z1 * z1 * z2; }});
  add("z1^2*z2^2", {[](Complex z1, Complex z2) { return z1 * z1 * z2 * z2; }});
  add("z1^4", {[](Complex z1, Complex) { return z1 * z1 * z1 * z1; }});

  // Diagonal-vanishing products (zeta1 - zeta2)^k g.
  add("diag2*exp", {[](Complex z1, Complex z2) {
    Complex d = z1 - z2;
    return d * d * std::exp(z1 + z2);
  }});
  add("diag3*rat", {[](Complex z1, Complex z2) {
                      Complex d = z1 - z2;
                      return d * d * d / ((z1 - 2.0) * (z2 + 2.0));
                    },
                    PlaneMinusPoles{{Complex(2.0)}},
                    PlaneMinusPoles{{Complex(-2.0)}}});

  for (int ell : {0, 1, 2})
    add("ext_plus_" + std::to_string(ell),
        extended_eigenfunction({ell, Side::plus}));
  add("ext_minus_1", extended_eigenfunction({1, Side::minus}));

  // Rational functions with poles at +-i and +-2.
  add("rat_poles_2", {[](Complex z1, Complex z2) {
                        return 1.0 / ((z1 - 2.0) * (z2 + 2.0));
                      },
                      PlaneMinusPoles{{Complex(2.0)}},
                      PlaneMinusPoles{{Complex(-2.0)}}});
  add("rat_poles_i2", {[](Complex z1, Complex z2) {
                         return 1.0 / ((z1 * z1 + 1.0) * (z2 - 2.0));
                       },
                       PlaneMinusPoles{{kI, -kI}},
                       PlaneMinusPoles{{Complex(2.0)}}});
  add("rat_mixed", {[](Complex z1, Complex z2) {
                      return (z2 + 0.5) / ((z1 + 2.0) * (z2 * z2 + 1.0));
                    },
                    PlaneMinusPoles{{Complex(-2.0)}},
                    PlaneMinusPoles{{kI, -kI}}});
  return lib;
}

}  // namespace

const std::vector<TestFn2>& standard_library() {
  static const std::vector<TestFn2> lib = build_library();
  return lib;
}

const std::vector<Complex>& base_points() {
  static const std::vector<Complex> pts = {
      Complex(0.0, 0.0), Complex(0.4, 0.0), Complex(-0.3, 0.0),
      Complex(0.2, 0.1), Complex(-0.25, -0.15)};
  return pts;
}

}  // namespace genop
