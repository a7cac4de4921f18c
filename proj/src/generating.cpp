#include "genop/generating.hpp"

#include <algorithm>
#include <cmath>

namespace genop {

namespace {

using ComplexL = std::complex<long double>;

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

ComplexL polar_l(long double arg) { return {std::cos(arg), std::sin(arg)}; }

struct KahanL {
  ComplexL sum{0.0L, 0.0L};
  ComplexL comp{0.0L, 0.0L};
  void add(const ComplexL& v) {
    ComplexL y = v - comp;
    ComplexL t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

Complex to_double(const ComplexL& v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Contour sampling of f on the torus |zeta_j - z| = r with quadrature weights
// folded in: a value of the double integral at any admissible t is a single
// weighted sum over the grid. Bracket recovery divides the t-Fourier modes by
// (r/4)^ell, so the extraction path carries extended precision end to end.
struct TorusSampling {
  int n = 0;
  double r = 0.0;
  Complex z;
  std::vector<Complex> offset;   // zeta_k - z (double fast path)
  std::vector<Complex> wf;       // f e^{i(th_j+th_k)} r^2/n^2
  std::vector<ComplexL> offset_l;
  std::vector<ComplexL> wf_l;

  Complex value_at(Complex t) const {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
      Complex oj = offset[j];
      const Complex* row = wf.data() + static_cast<std::size_t>(j) * n;
      for (int k = 0; k < n; ++k) {
        Complex ok = offset[k];
        acc += row[k] / (oj * ok + t * (oj - ok));
      }
    }
    return acc;
  }

  ComplexL value_at_l(ComplexL t) const {
    KahanL acc;
    for (int j = 0; j < n; ++j) {
      ComplexL oj = offset_l[j];
      const ComplexL* row = wf_l.data() + static_cast<std::size_t>(j) * n;
      for (int k = 0; k < n; ++k) {
        ComplexL ok = offset_l[k];
        acc.add(row[k] / (oj * ok + t * (oj - ok)));
      }
    }
    return acc.sum;
  }
};

TorusSampling sample_torus(const HoloFn2& f, Complex z, double r, int n) {
  TorusSampling s;
  s.n = n;
  s.r = r;
  s.z = z;
  s.offset.resize(n);
  s.offset_l.resize(n);
  std::vector<ComplexL> unit(n);
  for (int k = 0; k < n; ++k) {
    long double th = 2.0L * kPiL * static_cast<long double>(k) / n;
    unit[k] = polar_l(th);
    s.offset_l[k] = static_cast<long double>(r) * unit[k];
    s.offset[k] = to_double(s.offset_l[k]);
  }
  s.wf.resize(static_cast<std::size_t>(n) * n);
  s.wf_l.resize(static_cast<std::size_t>(n) * n);
  long double w = static_cast<long double>(r) * r /
                  (static_cast<long double>(n) * static_cast<long double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Complex v = f.eval(z + s.offset[j], z + s.offset[k]);
      if (!is_finite(v))
        throw QuadratureDomainError("non-finite integrand value on the contour torus");
      ComplexL vl = ComplexL(v) * unit[j] * unit[k] * w;
      s.wf_l[static_cast<std::size_t>(j) * n + k] = vl;
      s.wf[static_cast<std::size_t>(j) * n + k] = to_double(vl);
    }
  return s;
}

void validate_params(const HoloFn2& f, Complex z, double r) {
  if (!(r > 0)) throw ParameterError("generating integral: radius must be positive");
  double dist = std::min(singularity_distance(f.domain1, z),
                         singularity_distance(f.domain2, z));
  if (!(r < dist))
    throw DomainError("generating integral: radius reaches a singularity of f");
}

void validate_t(Complex t, double r) {
  if (!(std::abs(t) < 0.5 * r))
    throw ParameterError("generating integral requires |t| < r/2");
}

// Doubling driver over torus samplings; estimate(n) -> vector of values.
template <class Estimate>
std::vector<Complex> converge_torus(const Estimate& estimate, const QuadratureConfig& cfg,
                                    const char* what) {
  std::vector<std::pair<int, double>> trace;
  std::vector<Complex> prev = estimate(cfg.nodes);
  for (int n = 2 * cfg.nodes; n <= cfg.max_nodes; n *= 2) {
    std::vector<Complex> cur = estimate(n);
    double change = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i)
      change = std::max(change, scaled_distance(prev[i], cur[i]));
    trace.emplace_back(n, change);
    if (change <= cfg.tolerance) return cur;
    prev = std::move(cur);
  }
  throw NonConvergenceError(std::string(what) + ": node doubling did not settle",
                            trace);
}

// t-circle modes of one torus sampling, in extended precision:
// mode_m = (1/nt) sum_k g(rho e^{i th_k}) e^{-i m th_k}.
std::vector<ComplexL> circle_modes_l(const TorusSampling& s, long double rho, int count,
                                     int t_nodes) {
  std::vector<ComplexL> g(t_nodes);
  for (int m = 0; m < t_nodes; ++m)
    g[m] = s.value_at_l(rho * polar_l(2.0L * kPiL * m / t_nodes));
  std::vector<KahanL> acc(count);
  for (int m = 0; m < t_nodes; ++m) {
    ComplexL rot = polar_l(-2.0L * kPiL * m / t_nodes);
    ComplexL ph{1.0L, 0.0L};
    for (int q = 0; q < count; ++q) {
      acc[q].add(g[m] * ph);
      ph *= rot;
    }
  }
  std::vector<ComplexL> modes(count);
  for (int q = 0; q < count; ++q) modes[q] = acc[q].sum / static_cast<long double>(t_nodes);
  return modes;
}

}  // namespace

Complex q_eval(Complex zeta1, Complex zeta2, Complex z, Complex t) {
  return (zeta1 - z) * (zeta2 - z) + t * (zeta1 - zeta2);
}

Complex generating_apply(const HoloFn2& f, const GeneratingParams& p,
                         const QuadratureConfig& cfg) {
  std::vector<Complex> one{p.t};
  return generating_apply_many(f, p.z, p.radius, one, cfg)[0];
}

std::vector<Complex> generating_apply_many(const HoloFn2& f, Complex z, double radius,
                                           std::span<const Complex> ts,
                                           const QuadratureConfig& cfg) {
  validate_params(f, z, radius);
  for (const Complex& t : ts) validate_t(t, radius);
  auto estimate = [&](int n) {
    TorusSampling s = sample_torus(f, z, radius, n);
    std::vector<Complex> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) vals[i] = s.value_at(ts[i]);
    return vals;
  };
  return converge_torus(estimate, cfg, "generating_apply");
}

Complex series_truncation(const HoloFn2& f, Complex z, Complex t, int L,
                          const BracketOptions& opts) {
  if (L < 0) throw ParameterError("series truncation order must be >= 0");
  std::vector<Complex> brackets = rc_bracket_all(f, L, z, opts);
  Complex acc = 0.0;
  Complex tp = 1.0;
  for (int ell = 0; ell <= L; ++ell) {
    acc += tp / factorial(ell) * brackets[ell];
    tp *= t;
  }
  return acc;
}

BracketLevels recover_bracket_levels(const HoloFn2& f, int max_ell, Complex z,
                                     double radius, const QuadratureConfig& cfg,
                                     int t_nodes) {
  if (max_ell < 0) throw ParameterError("bracket order must be >= 0");
  if (t_nodes <= 2 * max_ell + 4)
    throw ParameterError("recover_bracket: too few t-circle nodes for the order");
  validate_params(f, z, radius);
  const long double rho = static_cast<long double>(radius) / 4.0L;

  BracketLevels out;
  std::vector<Complex> prev_modes;
  std::vector<std::pair<int, double>> trace;
  for (int n = cfg.nodes; n <= cfg.max_nodes; n *= 2) {
    TorusSampling s = sample_torus(f, z, radius, n);
    std::vector<ComplexL> modes_l = circle_modes_l(s, rho, max_ell + 1, t_nodes);
    std::vector<Complex> brackets(modes_l.size());
    long double rp = 1.0L;
    for (int ell = 0; ell <= max_ell; ++ell) {
      brackets[ell] =
          to_double(modes_l[ell] * static_cast<long double>(factorial(ell)) / rp);
      rp *= rho;
    }
    out.levels.emplace_back(n, std::move(brackets));
    std::vector<Complex> modes(modes_l.size());
    for (std::size_t i = 0; i < modes_l.size(); ++i) modes[i] = to_double(modes_l[i]);
    if (!prev_modes.empty()) {
      // Convergence is judged on the un-amplified modes; the division by
      // rho^ell is exact scaling applied after the fact.
      double change = 0.0;
      for (std::size_t i = 0; i < modes.size(); ++i)
        change = std::max(change, scaled_distance(prev_modes[i], modes[i]));
      trace.emplace_back(n, change);
      if (change <= cfg.tolerance) return out;
    }
    prev_modes = std::move(modes);
  }
  throw NonConvergenceError("recover_bracket: node doubling did not settle", trace);
}

std::vector<Complex> recover_bracket_all(const HoloFn2& f, int max_ell, Complex z,
                                         double radius, const QuadratureConfig& cfg,
                                         int t_nodes) {
  return recover_bracket_levels(f, max_ell, z, radius, cfg, t_nodes).levels.back().second;
}

Complex recover_bracket(const HoloFn2& f, int ell, Complex z, double radius,
                        const QuadratureConfig& cfg, int t_nodes) {
  return recover_bracket_all(f, ell, z, radius, cfg, t_nodes)[ell];
}

std::vector<Complex> t_fourier_modes(const HoloFn2& f, Complex z, double radius,
                                     int count, const QuadratureConfig& cfg,
                                     int t_nodes) {
  if (count < 1) throw ParameterError("t_fourier_modes: count must be >= 1");
  if (t_nodes < 2 * count)
    throw ParameterError("t_fourier_modes: too few t-circle nodes");
  validate_params(f, z, radius);
  const long double rho = static_cast<long double>(radius) / 4.0L;
  auto estimate = [&](int n) {
    TorusSampling s = sample_torus(f, z, radius, n);
    std::vector<ComplexL> modes_l = circle_modes_l(s, rho, count, t_nodes);
    std::vector<Complex> modes(modes_l.size());
    for (std::size_t i = 0; i < modes_l.size(); ++i) modes[i] = to_double(modes_l[i]);
    return modes;
  };
  return converge_torus(estimate, cfg, "t_fourier_modes");
}

struct GeneratingFunction::Impl {
  TorusSampling grid;
};

GeneratingFunction::GeneratingFunction(const HoloFn2& f, Complex z, double radius,
                                       const QuadratureConfig& cfg) {
  validate_params(f, z, radius);
  // Converge the sampling on a fixed probe set of admissible t values.
  const std::vector<Complex> probes = {0.25 * radius, 0.25 * radius * kI,
                                       -0.25 * radius, 0.125 * radius};
  std::vector<std::pair<int, double>> trace;
  auto impl = std::make_shared<Impl>();
  TorusSampling prev = sample_torus(f, z, radius, cfg.nodes);
  for (int n = 2 * cfg.nodes; n <= cfg.max_nodes; n *= 2) {
    TorusSampling cur = sample_torus(f, z, radius, n);
    double change = 0.0;
    for (Complex t : probes)
      change = std::max(change, scaled_distance(prev.value_at(t), cur.value_at(t)));
    trace.emplace_back(n, change);
    if (change <= cfg.tolerance) {
      impl->grid = std::move(cur);
      impl_ = std::move(impl);
      return;
    }
    prev = std::move(cur);
  }
  throw NonConvergenceError("generating sampling did not settle under doubling", trace);
}

Complex GeneratingFunction::operator()(Complex t) const {
  validate_t(t, impl_->grid.r);
  return impl_->grid.value_at(t);
}

double GeneratingFunction::radius() const { return impl_->grid.r; }

}  // namespace genop
