#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace genop {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An integrand evaluated to NaN/Inf at a quadrature node.
struct QuadratureDomainError : Error {
  using Error::Error;
};

// A requested radius or argument leaves the declared analyticity region
// (includes branch-cut violations for complex powers).
struct DomainError : Error {
  using Error::Error;
};

// Invalid parameter combination (e.g. |t| >= r/2 for the generating integral).
struct ParameterError : Error {
  using Error::Error;
};

// A meromorphic family was evaluated at one of its poles mu = -ell - 1.
struct PoleError : Error {
  int ell;
  PoleError(const std::string& msg, int ell_) : Error(msg), ell(ell_) {}
};

// Node doubling (or refinement) hit its cap without the value settling.
struct NonConvergenceError : Error {
  std::vector<std::pair<int, double>> trace;  // (nodes, |change|)
  NonConvergenceError(const std::string& msg, std::vector<std::pair<int, double>> t)
      : Error(msg), trace(std::move(t)) {}
};

// A point left the coordinate chart (cx + d = 0, x = -1, y = z, zeta1 = zeta2).
struct ChartError : Error {
  using Error::Error;
};

// The declared decay of a test function does not hold / does not give an
// absolutely convergent tail.
struct DecayContractError : Error {
  using Error::Error;
};

}  // namespace genop
