#pragma once

#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "genop/complex.hpp"
#include "genop/errors.hpp"

namespace genop {

// ---------------------------------------------------------------------------
// Analyticity domains
// ---------------------------------------------------------------------------

struct Entire {};

struct Disk {
  Complex center;
  double radius;
};

struct PlaneMinusPoles {
  std::vector<Complex> poles;
};

using Domain = std::variant<Entire, Disk, PlaneMinusPoles>;

// Distance from z to the nearest declared singularity (+inf for entire
// functions, non-positive if z already lies outside a disk domain).
double singularity_distance(const Domain& d, Complex z);

// Default derivative radius at z: half the singularity distance, capped at 1.
double default_radius(const Domain& d, Complex z);

// ---------------------------------------------------------------------------
// Function carriers
// ---------------------------------------------------------------------------

//! An evaluable analytic function of one complex variable.
struct HoloFn1 {
  std::function<Complex(Complex)> eval;
  Domain domain = Entire{};
};

//! An evaluable analytic function of two complex variables; the domain is
//! declared per variable.
struct HoloFn2 {
  std::function<Complex(Complex, Complex)> eval;
  Domain domain1 = Entire{};
  Domain domain2 = Entire{};
};

struct CircleContour {
  Complex center;
  double radius = 1.0;
  int nodes = 256;  // >= 8, power of two
};

struct QuadratureConfig {
  int nodes = 256;          // starting node count, power of two in [8, 8192]
  int max_nodes = 4096;     // doubling cap
  double tolerance = 1e-11; // node-doubling agreement, scaled by 1 + |value|
};

//! Result of a node-doubling run: the value at the finest level together with
//! the doubling history (nodes, |change| at that level).
struct Converged {
  Complex value;
  double error_estimate = 0.0;
  std::vector<std::pair<int, double>> trace;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Trapezoidal rule for \oint_C f(zeta) dzeta on the uniformly sampled circle.
// Spectrally accurate for f analytic in an annulus around C.
Complex contour_integral(const HoloFn1& f, const CircleContour& c);

// Same integral, run under the node-doubling protocol.
Converged contour_integral_converged(const HoloFn1& f, Complex center, double radius,
                                     const QuadratureConfig& cfg = {});

// f^(order)(z0) via the Cauchy integral on |zeta - z0| = radius, with node
// doubling. The no-radius overload applies the default radius rule.
Complex cauchy_derivative(const HoloFn1& f, Complex z0, int order, double radius,
                          const QuadratureConfig& cfg = {});
Complex cauchy_derivative(const HoloFn1& f, Complex z0, int order,
                          const QuadratureConfig& cfg = {});

// d^{p+q} f / dzeta1^p dzeta2^q at (z0, z0) via an iterated double Cauchy
// integral on the bidisk of the given radius.
Complex mixed_partial(const HoloFn2& f, Complex z0, int p, int q, double radius,
                      const QuadratureConfig& cfg = {});
Complex mixed_partial(const HoloFn2& f, Complex z0, int p, int q,
                      const QuadratureConfig& cfg = {});

//! All mixed partials d^{p+q} f / dzeta1^p dzeta2^q at (z0, z0) for
//! p, q <= order, extracted from one converged tensor sampling. Entry (p, q)
//! agrees with mixed_partial(f, z0, p, q, radius) up to roundoff.
struct PartialTable {
  int order = 0;
  std::vector<Complex> value;  // (order+1)^2, row-major in p
  std::vector<std::pair<int, double>> trace;

  const Complex& at(int p, int q) const { return value[p * (order + 1) + q]; }
};

PartialTable mixed_partial_table(const HoloFn2& f, Complex z0, int order, double radius,
                                 const QuadratureConfig& cfg = {});

// Exact binomial coefficient (integer arithmetic, n <= 62).
long long binomial(int n, int k);

double factorial(int n);

}  // namespace genop
