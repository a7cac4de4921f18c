#pragma once

#include <string>
#include <vector>

#include "genop/contour.hpp"

namespace genop {

//! A named entry of the fixed two-variable test-function library used by the
//! verification suites: constants, coordinate monomials, diagonal-vanishing
//! products, the extended eigenfunctions and rational functions with poles at
//! +-i and +-2.
struct TestFn2 {
  std::string name;
  HoloFn2 fn;
};

const std::vector<TestFn2>& standard_library();

// The five base points z used across the series checks; all lie well clear of
// the library poles at +-i and +-2.
const std::vector<Complex>& base_points();

}  // namespace genop
