#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace genop {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// sqrt(-1)
inline const Complex kI{0.0, 1.0};

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double infinity() { return std::numeric_limits<double>::infinity(); }

// |a - b| measured against 1 + |b|; the mixed absolute/relative gauge used
// by every convergence and verification loop in this library.
inline double scaled_distance(const Complex& a, const Complex& b) {
  return std::abs(a - b) / (1.0 + std::abs(b));
}

}  // namespace genop
