#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "genop/quad1d.hpp"
#include "genop/regularized.hpp"

using genop::Complex;
using genop::kI;
using genop::kPi;
using genop::PowerParameter;
using genop::Side;
using genop::TestFunction1D;

namespace {

TestFunction1D exp_neg() {
  return {[](Complex t) { return std::exp(-t); }, 4.0, genop::ExponentialDecay{1.0}};
}

double scaled(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace

TEST_CASE("pair_power reproduces the Gamma integral for Re mu > -1") {
  for (double mu : {-0.5, 0.0, 0.75, 2.0}) {
    Complex got = pair_power({Complex(mu), Side::plus}, exp_neg());
    CHECK(scaled(got, Complex(std::tgamma(mu + 1.0))) < 1e-10);
  }
}

TEST_CASE("pair_power continues the Gamma integral below Re mu = -1") {
  // Gamma(mu+1) by reflection at mu = -1.5: Gamma(-0.5) = -2 sqrt(pi)
  Complex got = pair_power({Complex(-1.5), Side::plus}, exp_neg());
  CHECK(scaled(got, Complex(-2.0 * std::sqrt(kPi))) < 1e-10);
  // Gamma(-1.5) = 4 sqrt(pi) / 3 at mu = -2.5
  got = pair_power({Complex(-2.5), Side::plus}, exp_neg());
  CHECK(scaled(got, Complex(4.0 * std::sqrt(kPi) / 3.0)) < 1e-9);
}

TEST_CASE("pair_power at mu = -1/2 against the Beta value pi") {
  TestFunction1D phi{[](Complex t) { return 1.0 / (1.0 + t); }, 0.9,
                     genop::AlgebraicDecay{1.0}};
  Complex got = pair_power({Complex(-0.5), Side::plus}, phi);
  CHECK(scaled(got, Complex(kPi)) < 1e-9);
}

TEST_CASE("minus side vanishes on functions supported in t > 0") {
  // Bump supported in (1, 5): identically zero near 0, so the complex
  // evaluation close to the origin is the zero function.
  TestFunction1D phi{[](Complex t) -> Complex {
                       if (std::abs(t) < 1.0) return Complex(0.0);
                       double x = t.real();
                       if (std::abs(x - 3.0) >= 2.0) return Complex(0.0);
                       double u = (x - 3.0) / 2.0;
                       return Complex(std::exp(1.0 - 1.0 / (1.0 - u * u)));
                     },
                     1.0, genop::CompactSupport{5.0}};
  for (double mu : {-0.5, 0.3})
    CHECK(std::abs(pair_power({Complex(mu), Side::minus}, phi)) < 1e-12);
}

TEST_CASE("pole detection carries the pole index") {
  try {
    pair_power({Complex(-2.0), Side::plus}, exp_neg());
    CHECK(false);
  } catch (const genop::PoleError& e) {
    CHECK(e.ell == 1);
  }
}

TEST_CASE("residues at the poles: classical values") {
  // res_{mu=-1} Gamma(mu+1) = 1
  CHECK(scaled(residue_at_pole(Side::plus, 0, exp_neg()), Complex(1.0)) < 1e-11);
  // phi = t e^{-t}: phi'(0) = 1, residue at mu = -2 equals 1
  TestFunction1D phi{[](Complex t) { return t * std::exp(-t); }, 4.0,
                     genop::ExponentialDecay{1.0}};
  CHECK(scaled(residue_at_pole(Side::plus, 1, phi), Complex(1.0)) < 1e-11);
  // constant phi has phi'(0) = 0
  TestFunction1D one{[](Complex) { return Complex(1.0); }, 8.0,
                     genop::CompactSupport{0.0}};
  CHECK(std::abs(residue_at_pole(Side::plus, 1, one)) < 1e-12);
  // minus side picks up (-1)^l
  CHECK(scaled(residue_at_pole(Side::minus, 1, phi), Complex(-1.0)) < 1e-11);
}

TEST_CASE("integration-by-parts ladder for compactly supported functions") {
  TestFunction1D phi{[](Complex t) { return std::exp(-t * t); }, 4.0,
                     genop::ExponentialDecay{1.0}};
  TestFunction1D dphi{[](Complex t) { return -2.0 * t * std::exp(-t * t); }, 4.0,
                      genop::ExponentialDecay{1.0}};
  for (Complex mu : {Complex(-0.5), Complex(0.3), Complex(-1.7), Complex(0.2, 0.4)}) {
    Complex lhs = pair_power({mu + 1.0, Side::plus}, dphi);
    Complex rhs = -(mu + 1.0) * pair_power({mu, Side::plus}, phi);
    CHECK(scaled(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("beta pairing closed forms") {
  // side +, lambda = -1/2, w = 1: B(1/2, 1/2) = pi
  CHECK(scaled(beta_pairing(Side::plus, Complex(-0.5), Complex(1.0)), Complex(kPi)) <
        1e-14);
  // side -, lambda = -1/2, w = -1: pi (-w)^lambda / sin(pi lambda) = -pi
  CHECK(scaled(beta_pairing(Side::minus, Complex(-0.5), Complex(-1.0)), Complex(-kPi)) <
        1e-14);
}

TEST_CASE("beta pairing agrees with direct quadrature on the strip") {
  for (double lam : {-0.85, -0.5, -0.15})
    for (Complex w : {Complex(1.0), Complex(0.6, 0.0), Complex(2.0, 0.8)}) {
      auto head = [&](double t) -> Complex {
        return std::exp(lam * std::log(t)) / (t + w);
      };
      Complex direct = genop::quad::tanh_sinh(head, 0.0, 1.0, 1e-11);
      double margin = -lam;
      double top = std::log(1.0 / (1e-13 * margin)) / margin;
      auto tail = [&](double v) -> Complex {
        double t = std::exp(v);
        return std::exp((lam + 1.0) * v) / (t + w);
      };
      direct += genop::quad::tanh_sinh(tail, 0.0, std::min(top, 200.0), 1e-11);
      Complex closed = beta_pairing(Side::plus, Complex(lam), w);
      CHECK(std::abs(direct - closed) <= 1e-6 * std::abs(closed));
    }
}

TEST_CASE("beta pairing domain and pole errors") {
  CHECK_THROWS_AS(beta_pairing(Side::plus, Complex(-0.5), Complex(-1.0)),
                  genop::DomainError);
  CHECK_THROWS_AS(beta_pairing(Side::minus, Complex(-0.5), Complex(2.0)),
                  genop::DomainError);
  CHECK_THROWS_AS(beta_pairing(Side::plus, Complex(2.0), Complex(1.0)),
                  genop::PoleError);
}

TEST_CASE("boundary values across the cut") {
  // x > 0: no cut, the difference vanishes as eps -> 0
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    auto bv = genop::boundary_value_check(Complex(-0.5), 1.0, eps);
    CHECK(std::abs(bv.reference) == 0.0);
    CHECK(std::abs(bv.difference) < 2.0 * eps);
  }
  // x = -1, lambda = -1/2: limit -2i
  {
    auto bv = genop::boundary_value_check(Complex(-0.5), -1.0, 1e-6);
    CHECK(std::abs(bv.reference - (-2.0 * kI)) < 1e-12);
    CHECK(std::abs(bv.difference - bv.reference) < 1e-5);
  }
  // x = -2, lambda = 0.3: limit 2i sin(0.3 pi) 2^{0.3}
  {
    auto bv = genop::boundary_value_check(Complex(0.3), -2.0, 1e-6);
    Complex want = 2.0 * kI * std::sin(0.3 * kPi) * std::pow(2.0, 0.3);
    CHECK(std::abs(bv.reference - want) < 1e-12);
    CHECK(std::abs(bv.difference - bv.reference) < 1e-5);
  }
  // convergence rate O(eps)
  for (double x : {-1.0, -2.0}) {
    double prev = -1.0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      auto bv = genop::boundary_value_check(Complex(0.3), x, eps);
      double err = std::abs(bv.difference - bv.reference);
      if (prev > 0) CHECK(err < 0.2 * prev);
      prev = err;
    }
  }
}

TEST_CASE("kernel values and swap identity") {
  PowerParameter zero{Complex(0.0), Side::plus};
  // mu = 0 on the matching side gives exactly 1
  CHECK(genop::kernel_K(zero, 1.0, -1.0, 3.0) == Complex(1.0));
  // positive argument on the minus side gives 0
  PowerParameter m{Complex(-0.5), Side::minus};
  CHECK(genop::kernel_K(m, 1.0, -1.0, 3.0) == Complex(0.0));

  std::mt19937_64 eng(11);
  auto u = [&] { return -2.0 + 4.0 * ((eng() >> 11) * 0x1.0p-53); };
  for (int i = 0; i < 20; ++i) {
    double z1 = u(), z2 = u(), zc = u();
    if (std::abs(z1 - z2) < 1e-2) continue;
    Complex mu(-0.4, 0.2);
    Complex a = genop::kernel_K({mu, Side::plus}, z2, z1, zc);
    Complex b = genop::kernel_K({mu, Side::minus}, z1, z2, zc);
    CHECK(a == b);
  }
  CHECK_THROWS_AS(genop::kernel_K(zero, 1.0, 1.0, 0.0), genop::DomainError);
}

TEST_CASE("kernel factorization residual is small on admissible tuples") {
  std::mt19937_64 eng(23);
  auto u = [&] { return -2.0 + 4.0 * ((eng() >> 11) * 0x1.0p-53); };
  int produced = 0;
  double worst = 0.0;
  while (produced < 50) {
    double z1 = u(), z2 = u(), zc = u();
    if (std::abs(z1 - z2) < 0.15 || std::abs(zc - z1) < 0.1 || std::abs(zc - z2) < 0.1)
      continue;
    Complex mu(-0.9 + 0.8 * ((eng() >> 11) * 0x1.0p-53), 0.0);
    Side side = (produced % 2 == 0) ? Side::plus : Side::minus;
    worst = std::max(worst, kernel_factorization_residual(side, mu, z1, z2, zc));
    ++produced;
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("factorization: both sides vanish when the kernel side forces zero") {
  // w > 0 with the plus pairing: jump across (0, inf) vanishes and K_- = 0.
  double z1 = 1.0, z2 = -1.0, zc = 3.0;  // w = (1-3)(-1-3)/2 = 4 > 0
  double r = kernel_factorization_residual(Side::plus, Complex(-0.5), z1, z2, zc);
  CHECK(r < 1e-10);
  Complex kv = genop::kernel_K({Complex(-0.5), Side::minus}, z1, z2, zc);
  CHECK(kv == Complex(0.0));
}

TEST_CASE("decay contract violations are reported") {
  // claims exponential decay but is constant
  TestFunction1D liar{[](Complex) { return Complex(1.0); }, 4.0,
                      genop::ExponentialDecay{1.0}};
  CHECK_THROWS_AS(pair_power({Complex(-0.5), Side::plus}, liar),
                  genop::DecayContractError);
  // algebraic decay too slow for the requested exponent
  TestFunction1D slow{[](Complex t) { return 1.0 / (1.0 + t); }, 0.9,
                      genop::AlgebraicDecay{1.0}};
  CHECK_THROWS_AS(pair_power({Complex(0.5), Side::plus}, slow),
                  genop::DecayContractError);
}
