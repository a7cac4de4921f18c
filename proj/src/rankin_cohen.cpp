#include "genop/rankin_cohen.hpp"

#include <algorithm>
#include <cmath>

namespace genop {

namespace {

void validate_order(int ell, const BracketOptions& opts) {
  if (ell < 0) throw ParameterError("bracket order must be >= 0");
  if (ell > opts.max_order)
    throw ParameterError("bracket order exceeds the configured maximum");
}

Complex bracket_from_table(const PartialTable& t, int ell) {
  Complex acc = 0.0;
  for (int j = 0; j <= ell; ++j) {
    double c = static_cast<double>(binomial(ell, j));
    double w = (j % 2 == 0 ? 1.0 : -1.0) * c * c;
    acc += w * t.at(ell - j, j);
  }
  return acc;
}

}  // namespace

double bracket_radius(const HoloFn2& f, Complex z, const BracketOptions& opts) {
  if (opts.radius > 0) return opts.radius;
  return std::min(default_radius(f.domain1, z), default_radius(f.domain2, z));
}

Complex rc_bracket(const HoloFn2& f, int ell, Complex z, const BracketOptions& opts) {
  validate_order(ell, opts);
  double r = bracket_radius(f, z, opts);
  PartialTable t = mixed_partial_table(f, z, ell, r, opts.quad);
  return bracket_from_table(t, ell);
}

std::vector<Complex> rc_bracket_all(const HoloFn2& f, int max_ell, Complex z,
                                    const BracketOptions& opts) {
  validate_order(max_ell, opts);
  double r = bracket_radius(f, z, opts);
  PartialTable t = mixed_partial_table(f, z, max_ell, r, opts.quad);
  std::vector<Complex> out(static_cast<std::size_t>(max_ell) + 1);
  for (int ell = 0; ell <= max_ell; ++ell) out[ell] = bracket_from_table(t, ell);
  return out;
}

Complex rc_via_lemma(const HoloFn2& f, int ell, Complex z, const BracketOptions& opts) {
  validate_order(ell, opts);
  double r = bracket_radius(f, z, opts);
  auto base = f.eval;
  HoloFn2 g{[base, ell](Complex z1, Complex z2) {
              Complex d = z1 - z2;
              Complex p = 1.0;
              for (int k = 0; k < ell; ++k) p *= d;
              return p * base(z1, z2);
            },
            f.domain1, f.domain2};
  Complex m = mixed_partial(g, z, ell, ell, r, opts.quad);
  double sign = (ell % 2 == 0) ? 1.0 : -1.0;
  return m / (sign * factorial(ell));
}

}  // namespace genop
