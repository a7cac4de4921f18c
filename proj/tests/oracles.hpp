#pragma once

// Test-side oracles: symbolic polynomial/rational calculus and dense-grid
// integrators, independent of the library's computational paths.

#include <cmath>
#include <vector>

#include "genop/complex.hpp"

namespace oracles {

using genop::Complex;

// Polynomial sum_k c[k] z^k with exact symbolic differentiation.
struct Poly {
  std::vector<Complex> c;

  Complex eval(Complex z) const {
    Complex acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
  }
  Poly derivative() const {
    Poly d;
    for (std::size_t k = 1; k < c.size(); ++k)
      d.c.push_back(static_cast<double>(k) * c[k]);
    return d;
  }
  Poly derivative(int n) const {
    Poly d = *this;
    for (int i = 0; i < n; ++i) d = d.derivative();
    return d;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    if (a.c.empty() || b.c.empty()) return p;
    p.c.assign(a.c.size() + b.c.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) p.c[i + j] += a.c[i] * b.c[j];
    return p;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly p = a;
    if (p.c.size() < b.c.size()) p.c.resize(b.c.size(), Complex(0.0));
    for (std::size_t j = 0; j < b.c.size(); ++j) p.c[j] -= b.c[j];
    return p;
  }
};

// Rational p/q; derivatives by the quotient rule.
struct Rational {
  Poly num, den;

  Complex eval(Complex z) const { return num.eval(z) / den.eval(z); }
  Rational derivative() const {
    return {num.derivative() * den - num * den.derivative(), den * den};
  }
  Complex derivative_at(Complex z, int order) const {
    Rational r = *this;
    for (int i = 0; i < order; ++i) r = r.derivative();
    return r.eval(z);
  }
};

// Two-variable polynomial sum c[i][j] z1^i z2^j.
struct Poly2 {
  std::vector<std::vector<Complex>> c;  // c[i][j]

  Complex eval(Complex z1, Complex z2) const {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Complex zi = 1.0;
      for (std::size_t k = 0; k < i; ++k) zi *= z1;
      for (std::size_t j = 0; j < c[i].size(); ++j) {
        Complex zj = 1.0;
        for (std::size_t k = 0; k < j; ++k) zj *= z2;
        acc += c[i][j] * zi * zj;
      }
    }
    return acc;
  }
  Poly2 d1() const {
    Poly2 p;
    if (c.size() <= 1) return p;
    p.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) {
      p.c[i - 1].resize(c[i].size());
      for (std::size_t j = 0; j < c[i].size(); ++j)
        p.c[i - 1][j] = static_cast<double>(i) * c[i][j];
    }
    return p;
  }
  Poly2 d2() const {
    Poly2 p;
    p.c.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].size() <= 1) continue;
      p.c[i].resize(c[i].size() - 1);
      for (std::size_t j = 1; j < c[i].size(); ++j)
        p.c[i][j - 1] = static_cast<double>(j) * c[i][j];
    }
    return p;
  }
  Complex mixed_at(Complex z1, Complex z2, int p, int q) const {
    Poly2 r = *this;
    for (int i = 0; i < p; ++i) r = r.d1();
    for (int j = 0; j < q; ++j) r = r.d2();
    return r.eval(z1, z2);
  }
};

// Exact Rankin-Cohen bracket of a two-variable polynomial at a point.
inline Complex poly2_bracket(const Poly2& f, int ell, Complex z) {
  auto binom = [](int n, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
    return acc;
  };
  Complex acc = 0.0;
  for (int j = 0; j <= ell; ++j) {
    double b = binom(ell, j);
    double w = (j % 2 == 0 ? 1.0 : -1.0) * b * b;
    acc += w * f.mixed_at(z, z, ell - j, j);
  }
  return acc;
}

}  // namespace oracles
