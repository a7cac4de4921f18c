#include "genop/contour.hpp"

#include <algorithm>
#include <cmath>

namespace genop {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

// Compensated accumulator in extended precision. High-order coefficient
// extraction multiplies these sums by l!/r^l, so the summation error has to
// sit well below double roundoff.
struct Accumulator {
  std::complex<long double> sum{0.0L, 0.0L};
  std::complex<long double> comp{0.0L, 0.0L};
  void add(const Complex& v) {
    std::complex<long double> y = std::complex<long double>(v) - comp;
    std::complex<long double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  void add(const std::complex<long double>& v) {
    std::complex<long double> y = v - comp;
    std::complex<long double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  Complex value() const { return Complex(static_cast<double>(sum.real()),
                                         static_cast<double>(sum.imag())); }
};

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_config(const QuadratureConfig& cfg) {
  if (cfg.nodes < 8 || !power_of_two(cfg.nodes))
    throw ParameterError("quadrature nodes must be a power of two >= 8");
  if (cfg.max_nodes < cfg.nodes)
    throw ParameterError("quadrature max_nodes below starting node count");
  if (!(cfg.tolerance > 0)) throw ParameterError("quadrature tolerance must be positive");
}

void validate_radius(double radius, double dist, const char* what) {
  if (!(radius > 0)) throw DomainError(std::string(what) + ": radius must be positive");
  if (!(radius < dist))
    throw DomainError(std::string(what) +
                      ": radius reaches the declared singularity region");
}

// Circle nodes z0 + r e^{i theta_k}, theta_k = 2 pi k / n.
struct Circle {
  std::vector<Complex> unit;  // e^{i theta_k}
  std::vector<Complex> node;
  Circle(Complex z0, double r, int n) : unit(n), node(n) {
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      unit[k] = std::polar(1.0, th);
      node[k] = z0 + r * unit[k];
    }
  }
};

// Generic node-doubling driver. sample(n) returns a vector of estimates; the
// run stops once every component settles to cfg.tolerance.
template <class Sample>
std::pair<std::vector<Complex>, std::vector<std::pair<int, double>>> converge(
    const Sample& sample, const QuadratureConfig& cfg, const char* what) {
  std::vector<std::pair<int, double>> trace;
  std::vector<Complex> prev = sample(cfg.nodes);
  for (int n = 2 * cfg.nodes; n <= cfg.max_nodes; n *= 2) {
    std::vector<Complex> cur = sample(n);
    double change = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i)
      change = std::max(change, scaled_distance(prev[i], cur[i]));
    trace.emplace_back(n, change);
    if (change <= cfg.tolerance) return {std::move(cur), std::move(trace)};
    prev = std::move(cur);
  }
  throw NonConvergenceError(std::string(what) + ": node doubling did not settle", trace);
}

}  // namespace

double singularity_distance(const Domain& d, Complex z) {
  return std::visit(
      Overload{[](const Entire&) { return infinity(); },
               [&](const Disk& k) { return k.radius - std::abs(z - k.center); },
               [&](const PlaneMinusPoles& p) {
                 double m = infinity();
                 for (const Complex& q : p.poles) m = std::min(m, std::abs(z - q));
                 return m;
               }},
      d);
}

double default_radius(const Domain& d, Complex z) {
  double dist = singularity_distance(d, z);
  if (!(dist > 0)) throw DomainError("expansion point lies outside the declared domain");
  return std::min(1.0, 0.5 * dist);
}

Complex contour_integral(const HoloFn1& f, const CircleContour& c) {
  if (c.nodes < 8 || !power_of_two(c.nodes))
    throw ParameterError("contour nodes must be a power of two >= 8");
  if (!(c.radius > 0)) throw DomainError("contour radius must be positive");
  Circle grid(c.center, c.radius, c.nodes);
  Complex acc = 0.0;
  for (int k = 0; k < c.nodes; ++k) {
    Complex v = f.eval(grid.node[k]);
    if (!is_finite(v))
      throw QuadratureDomainError("non-finite integrand value on the contour");
    acc += v * grid.unit[k];
  }
  // dzeta = i r e^{i theta} dtheta
  return acc * (2.0 * kPi * kI * c.radius / static_cast<double>(c.nodes));
}

Converged contour_integral_converged(const HoloFn1& f, Complex center, double radius,
                                     const QuadratureConfig& cfg) {
  validate_config(cfg);
  auto sample = [&](int n) {
    CircleContour c{center, radius, n};
    return std::vector<Complex>{contour_integral(f, c)};
  };
  auto [vals, trace] = converge(sample, cfg, "contour_integral");
  return Converged{vals[0], trace.empty() ? 0.0 : trace.back().second, trace};
}

namespace {

// Derivative coefficients f^(m)(z0) = m! / (n r^m) sum_k f(node_k) e^{-i m theta_k},
// for every m in `orders`, from one circle sampling.
std::vector<Complex> derivative_sums(const HoloFn1& f, Complex z0, double r, int n,
                                     const std::vector<int>& orders) {
  Circle grid(z0, r, n);
  int top = 0;
  for (int m : orders) top = std::max(top, m);
  std::vector<Accumulator> four(top + 1);
  for (int k = 0; k < n; ++k) {
    Complex v = f.eval(grid.node[k]);
    if (!is_finite(v))
      throw QuadratureDomainError("non-finite integrand value on the contour");
    std::complex<long double> vl(v);
    std::complex<long double> rot(std::conj(grid.unit[k]));
    std::complex<long double> ph(1.0L, 0.0L);
    for (int m = 0; m <= top; ++m) {
      four[m].add(vl * ph);
      ph *= rot;
    }
  }
  std::vector<Complex> out(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    int m = orders[i];
    out[i] = four[m].value() * factorial(m) / (static_cast<double>(n) * std::pow(r, m));
  }
  return out;
}

}  // namespace

Complex cauchy_derivative(const HoloFn1& f, Complex z0, int order, double radius,
                          const QuadratureConfig& cfg) {
  if (order < 0) throw ParameterError("derivative order must be >= 0");
  validate_config(cfg);
  validate_radius(radius, singularity_distance(f.domain, z0), "cauchy_derivative");
  std::vector<int> orders{order};
  auto sample = [&](int n) { return derivative_sums(f, z0, radius, n, orders); };
  auto [vals, trace] = converge(sample, cfg, "cauchy_derivative");
  return vals[0];
}

Complex cauchy_derivative(const HoloFn1& f, Complex z0, int order,
                          const QuadratureConfig& cfg) {
  return cauchy_derivative(f, z0, order, default_radius(f.domain, z0), cfg);
}

namespace {

// Tensor-product sampling of f on circle x circle about (z0, z0); extracts the
// scaled sums S_{p,q} = (1/n^2) sum f e^{-ip theta_j} e^{-iq theta_k} for all
// p, q <= order, in fixed row-major order.
std::vector<Complex> partial_sums(const HoloFn2& f, Complex z0, double r, int n,
                                  int order) {
  Circle grid(z0, r, n);
  const int w = order + 1;
  // Row pass: G[j][q] = sum_k F[j][k] e^{-iq theta_k}
  std::vector<std::complex<long double>> rowsum(static_cast<std::size_t>(n) * w,
                                                {0.0L, 0.0L});
  for (int j = 0; j < n; ++j) {
    std::vector<Accumulator> acc(w);
    for (int k = 0; k < n; ++k) {
      Complex v = f.eval(grid.node[j], grid.node[k]);
      if (!is_finite(v))
        throw QuadratureDomainError("non-finite integrand value on the bidisk torus");
      std::complex<long double> vl(v);
      std::complex<long double> rot(std::conj(grid.unit[k]));
      std::complex<long double> ph(1.0L, 0.0L);
      for (int q = 0; q < w; ++q) {
        acc[q].add(vl * ph);
        ph *= rot;
      }
    }
    for (int q = 0; q < w; ++q)
      rowsum[static_cast<std::size_t>(j) * w + q] = acc[q].sum;
  }
  // Column pass with the p-phases.
  std::vector<Accumulator> out(static_cast<std::size_t>(w) * w);
  for (int j = 0; j < n; ++j) {
    std::complex<long double> rot(std::conj(grid.unit[j]));
    std::complex<long double> ph(1.0L, 0.0L);
    for (int p = 0; p < w; ++p) {
      for (int q = 0; q < w; ++q)
        out[static_cast<std::size_t>(p) * w + q].add(
            rowsum[static_cast<std::size_t>(j) * w + q] * ph);
      ph *= rot;
    }
  }
  long double n2 = static_cast<long double>(n) * static_cast<long double>(n);
  std::vector<Complex> vals(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::complex<long double> s = out[i].sum / n2;
    vals[i] = Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }
  return vals;
}

double bidisk_distance(const HoloFn2& f, Complex z0) {
  return std::min(singularity_distance(f.domain1, z0),
                  singularity_distance(f.domain2, z0));
}

}  // namespace

PartialTable mixed_partial_table(const HoloFn2& f, Complex z0, int order, double radius,
                                 const QuadratureConfig& cfg) {
  if (order < 0) throw ParameterError("derivative order must be >= 0");
  validate_config(cfg);
  validate_radius(radius, bidisk_distance(f, z0), "mixed_partial");
  auto sample = [&](int n) { return partial_sums(f, z0, radius, n, order); };
  auto [sums, trace] = converge(sample, cfg, "mixed_partial");
  PartialTable table;
  table.order = order;
  table.trace = trace;
  table.value.resize(sums.size());
  const int w = order + 1;
  for (int p = 0; p < w; ++p)
    for (int q = 0; q < w; ++q)
      table.value[static_cast<std::size_t>(p) * w + q] =
          sums[static_cast<std::size_t>(p) * w + q] * factorial(p) * factorial(q) /
          std::pow(radius, p + q);
  return table;
}

Complex mixed_partial(const HoloFn2& f, Complex z0, int p, int q, double radius,
                      const QuadratureConfig& cfg) {
  if (p < 0 || q < 0) throw ParameterError("derivative orders must be >= 0");
  validate_config(cfg);
  validate_radius(radius, bidisk_distance(f, z0), "mixed_partial");
  // Single-coefficient extraction under the same doubling protocol.
  auto sample = [&](int n) {
    Circle grid(z0, radius, n);
    Accumulator acc;
    std::vector<std::complex<long double>> colphase(n);
    for (int k = 0; k < n; ++k) {
      std::complex<long double> rot(std::conj(grid.unit[k]));
      std::complex<long double> ph(1.0L, 0.0L);
      for (int m = 0; m < q; ++m) ph *= rot;
      colphase[k] = ph;
    }
    for (int j = 0; j < n; ++j) {
      std::complex<long double> rot(std::conj(grid.unit[j]));
      std::complex<long double> pj(1.0L, 0.0L);
      for (int m = 0; m < p; ++m) pj *= rot;
      Accumulator row;
      for (int k = 0; k < n; ++k) {
        Complex v = f.eval(grid.node[j], grid.node[k]);
        if (!is_finite(v))
          throw QuadratureDomainError("non-finite integrand value on the bidisk torus");
        row.add(std::complex<long double>(v) * colphase[k]);
      }
      acc.add(row.sum * pj);
    }
    long double n2 = static_cast<long double>(n) * static_cast<long double>(n);
    std::complex<long double> s = acc.sum / n2;
    return std::vector<Complex>{
        Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()))};
  };
  auto [vals, trace] = converge(sample, cfg, "mixed_partial");
  return vals[0] * factorial(p) * factorial(q) / std::pow(radius, p + q);
}

Complex mixed_partial(const HoloFn2& f, Complex z0, int p, int q,
                      const QuadratureConfig& cfg) {
  double r = std::min(default_radius(f.domain1, z0), default_radius(f.domain2, z0));
  return mixed_partial(f, z0, p, q, r, cfg);
}

long long binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 62) throw ParameterError("binomial: n too large for exact integers");
  // Pascal row, exact in 64-bit for n <= 62.
  std::vector<long long> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(33);
    t[0] = 1.0;
    for (int i = 1; i < 33; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0) throw ParameterError("factorial of negative integer");
  if (n < static_cast<int>(table.size())) return table[n];
  double v = table.back();
  for (int i = static_cast<int>(table.size()); i <= n; ++i) v *= i;
  return v;
}

}  // namespace genop
