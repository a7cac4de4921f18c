#include "genop/quad1d.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace genop::quad {

namespace {

constexpr double kTauMax = 6.8;
constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 11;

// Precomputed tanh-sinh nodes in unit form. For tau >= 0,
//   x(tau) = (a+b)/2 + (b-a)/2 tanh(y),  y = (pi/2) sinh(tau),
// so the one-sided endpoint offsets are (b-a)/2 (1 +- tanh y); the factors
// 1 +- tanh(y) = 2 / (e^{-+2y} + 1) are stored directly, which keeps them
// accurate when the node hugs an endpoint. The mirrored node -tau swaps them.
struct TsUnitNode {
  double near;    // 1 - tanh|y|, offset fraction to the nearer endpoint
  double far;     // 1 + tanh|y|
  double weight;  // (pi/2) cosh(tau) sech^2(y), without the h factor
};

struct TsTable {
  // levels[0]: tau = 0, 1, 2, ... ; levels[k]: odd multiples of 2^-k.
  std::vector<std::vector<TsUnitNode>> levels;
};

TsUnitNode make_unit_node(double tau) {
  double y = 0.5 * kPi * std::sinh(tau);
  double e2 = std::exp(-2.0 * y);  // tau >= 0
  double sech = 1.0 / std::cosh(y);
  return {2.0 * e2 / (1.0 + e2), 2.0 / (1.0 + e2),
          0.5 * kPi * std::cosh(tau) * sech * sech};
}

const TsTable& ts_table() {
  static const TsTable table = [] {
    TsTable t;
    t.levels.resize(kMaxLevel + 1);
    for (int k = 1; k * 1.0 <= kTauMax; ++k)
      t.levels[0].push_back(make_unit_node(k));
    for (int level = 1; level <= kMaxLevel; ++level) {
      double h = std::ldexp(1.0, -level);
      for (int k = 1; k * h <= kTauMax; k += 2)
        t.levels[level].push_back(make_unit_node(k * h));
    }
    return t;
  }();
  return table;
}

Complex checked(const FnEnd& f, double x, double dl, double dr) {
  Complex v = f(x, dl, dr);
  if (!is_finite(v))
    throw QuadratureDomainError("non-finite integrand value in 1d quadrature");
  return v;
}

}  // namespace

Complex tanh_sinh_ends(const FnEnd& f, double a, double b, double tol) {
  if (!(a < b)) {
    if (a == b) return Complex(0.0);
    return -tanh_sinh_ends(f, b, a, tol);
  }
  const double half = 0.5 * (b - a);
  const TsTable& table = ts_table();

  auto add_node = [&](Complex& sum, const TsUnitNode& n) {
    double w = half * n.weight;
    if (!(w > 1e-305)) return;
    double dnear = half * n.near;
    double dfar = half * n.far;
    if (!(dnear > 0.0)) return;
    // +tau: node near b; -tau: node near a.
    sum += checked(f, a + dfar, dfar, -dnear) * w;
    sum += checked(f, a + dnear, dnear, -dfar) * w;
  };

  Complex sum = checked(f, a + half, half, -half) * (half * 0.5 * kPi);
  for (const TsUnitNode& n : table.levels[0]) add_node(sum, n);
  Complex prev = sum;  // h = 1
  std::vector<std::pair<int, double>> trace;
  double h = 1.0;
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    for (const TsUnitNode& n : table.levels[level]) add_node(sum, n);
    Complex cur = sum * h;
    double change = scaled_distance(cur, prev);
    trace.emplace_back(level, change);
    if (level >= kMinLevel && change <= tol) return cur;
    prev = cur;
  }
  // The last two levels agreeing within a generous multiple of tol is still
  // acceptable; otherwise report the refinement history.
  if (!trace.empty() && trace.back().second <= 1e3 * tol) return prev;
  throw NonConvergenceError("tanh-sinh refinement did not settle", trace);
}

Complex tanh_sinh(const Fn& f, double a, double b, double tol) {
  return tanh_sinh_ends([&](double x, double, double) { return f(x); }, a, b, tol);
}

Complex split_points(const Fn& f, double a, double b, std::vector<double> splits,
                     double tol) {
  if (!(a < b)) {
    if (a == b) return Complex(0.0);
    return -split_points(f, b, a, std::move(splits), tol);
  }
  std::vector<double> cuts;
  cuts.push_back(a);
  std::sort(splits.begin(), splits.end());
  for (double s : splits)
    if (s > a && s < b && s > cuts.back()) cuts.push_back(s);
  cuts.push_back(b);
  Complex acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) acc += tanh_sinh(f, cuts[i], cuts[i + 1], tol);
  return acc;
}

Complex gauss_kronrod(const Fn& f, double a, double b, double tol) {
  if (!(a < b)) {
    if (a == b) return Complex(0.0);
    return -gauss_kronrod(f, b, a, tol);
  }
  auto wrapped = [&](double x) {
    Complex v = f(x);
    if (!is_finite(v))
      throw QuadratureDomainError("non-finite integrand value in 1d quadrature");
    return v;
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(wrapped, a, b, 12,
                                                                       tol);
}

namespace {

Complex piece_with_anchors(const Fn2& F, double alpha, double beta, double p1, double p2,
                           double tol) {
  if (!(beta - alpha > 0)) return Complex(0.0);
  bool sing_a = (alpha == p1) || (alpha == p2);
  bool sing_b = (beta == p1) || (beta == p2);
  if (sing_a && sing_b) {
    double mid = 0.5 * (alpha + beta);
    if (!(alpha < mid && mid < beta)) return Complex(0.0);
    return piece_with_anchors(F, alpha, mid, p1, p2, tol) +
           piece_with_anchors(F, mid, beta, p1, p2, tol);
  }
  auto g = [&](double x, double dl, double dr) {
    double d1 = (alpha == p1) ? dl : ((beta == p1) ? dr : x - p1);
    double d2 = (alpha == p2) ? dl : ((beta == p2) ? dr : x - p2);
    return F(x, d1, d2);
  };
  return tanh_sinh_ends(g, alpha, beta, tol);
}

}  // namespace

Complex with_roots(const Fn2& F, double a, double b, double p1, double p2, double tol,
                   std::vector<double> extra_splits) {
  if (!(a < b)) {
    if (a == b) return Complex(0.0);
    return -with_roots(F, b, a, p1, p2, tol, std::move(extra_splits));
  }
  std::vector<double> cuts{a, b};
  for (double p : {p1, p2})
    if (p > a && p < b) cuts.push_back(p);
  for (double s : extra_splits)
    if (s > a && s < b) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Complex acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    acc += piece_with_anchors(F, cuts[i], cuts[i + 1], p1, p2, tol);
  return acc;
}

}  // namespace genop::quad
