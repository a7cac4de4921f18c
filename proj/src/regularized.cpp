#include "genop/regularized.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "genop/quad1d.hpp"

namespace genop {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

bool near_integer(Complex z, double tol = 1e-13) {
  return std::abs(z.imag()) < tol &&
         std::abs(z.real() - std::round(z.real())) < tol;
}

void check_not_pole(Complex mu) {
  if (near_integer(mu) && mu.real() < -0.5) {
    int ell = static_cast<int>(std::lround(-mu.real())) - 1;
    throw PoleError("pairing evaluated at a pole mu = -ell-1", ell);
  }
}

// phi^(k)(0)/k! for k = 0..count-1 by a Cauchy circle inside the analyticity
// disk, with one node-doubling stability pass.
std::vector<Complex> taylor_coefficients(const TestFunction1D& phi, int count,
                                         const PairingConfig& cfg) {
  if (!(phi.analytic_radius > 0))
    throw DomainError("test function needs a positive analyticity radius");
  double rho = 0.5 * phi.analytic_radius;
  auto sample = [&](int n) {
    std::vector<Complex> coef(count, Complex(0.0));
    for (int m = 0; m < n; ++m) {
      double th = 2.0 * kPi * m / static_cast<double>(n);
      Complex u = std::polar(1.0, th);
      Complex v = phi.eval(rho * u);
      if (!is_finite(v))
        throw QuadratureDomainError("non-finite test-function value on the Taylor circle");
      Complex rot = std::conj(u);
      Complex ph = 1.0;
      for (int k = 0; k < count; ++k) {
        coef[k] += v * ph;
        ph *= rot;
      }
    }
    for (int k = 0; k < count; ++k)
      coef[k] /= static_cast<double>(n) * std::pow(rho, k);
    return coef;
  };
  std::vector<Complex> a = sample(cfg.taylor_nodes);
  std::vector<Complex> b = sample(2 * cfg.taylor_nodes);
  for (int k = 0; k < count; ++k)
    if (scaled_distance(a[k], b[k]) > 1e-9)
      throw NonConvergenceError("Taylor coefficients did not settle under doubling",
                                {{cfg.taylor_nodes, scaled_distance(a[k], b[k])}});
  return b;
}

struct ReflectedView {
  const TestFunction1D* phi;
  bool reflect;
  Complex operator()(Complex t) const { return phi->eval(reflect ? -t : t); }
};

// Tail \int_1^infty t^mu phi(t) dt for the (possibly reflected) function.
Complex tail_integral(const ReflectedView& phi, const Decay& decay, Complex mu,
                      double tol) {
  return std::visit(
      Overload{
          [&](const CompactSupport& c) -> Complex {
            if (c.bound <= 1.0) return Complex(0.0);
            auto f = [&](double t) {
              return std::exp(mu * std::log(t)) * phi(Complex(t));
            };
            return quad::tanh_sinh(f, 1.0, c.bound, tol);
          },
          [&](const ExponentialDecay& e) -> Complex {
            if (!(e.rate > 0)) throw DecayContractError("non-positive decay rate");
            double top = 1.0 + 40.0 / e.rate;
            double probe = 1.0 + 30.0 / e.rate;
            double scale = std::abs(phi(Complex(1.0))) + 1.0;
            if (std::abs(phi(Complex(probe))) > 1e-8 * scale)
              throw DecayContractError("declared exponential decay does not hold");
            auto f = [&](double t) {
              return std::exp(mu * std::log(t)) * phi(Complex(t));
            };
            return quad::tanh_sinh(f, 1.0, top, tol);
          },
          [&](const AlgebraicDecay& a) -> Complex {
            double margin = a.power - mu.real() - 1.0;
            if (!(margin >= 0.1))
              throw DecayContractError(
                  "algebraic decay too slow for an absolutely convergent tail");
            double c_est = 1e-300;
            for (double t : {1.0, 4.0, 16.0, 64.0})
              c_est = std::max(c_est, std::abs(phi(Complex(t))) * std::pow(t, a.power));
            if (std::abs(phi(Complex(256.0))) * std::pow(256.0, a.power) > 100.0 * c_est)
              throw DecayContractError("declared algebraic decay does not hold");
            // t = e^v turns the tail into a smooth decaying integral on [0, V].
            double top = std::log(std::max(10.0, c_est / (1e-13 * margin))) / margin;
            top = std::min(top, 200.0);
            auto f = [&](double v) {
              return std::exp((mu + 1.0) * v) * phi(Complex(std::exp(v)));
            };
            return quad::tanh_sinh(f, 0.0, top, tol);
          }},
      decay);
}

}  // namespace

Complex t_power(double a, Complex mu, Side side) {
  if (side == Side::plus ? (a > 0) : (a < 0)) {
    if (mu.imag() == 0.0) return Complex(std::pow(std::abs(a), mu.real()));
    return std::exp(mu * std::log(std::abs(a)));
  }
  return Complex(0.0);
}

Complex pair_power(const PowerParameter& p, const TestFunction1D& phi,
                   const PairingConfig& cfg) {
  check_not_pole(p.mu);
  const Complex mu = p.mu;
  ReflectedView view{&phi, p.side == Side::minus};

  const int depth = std::max(0, static_cast<int>(std::ceil(-mu.real())));
  std::vector<Complex> coef = taylor_coefficients(phi, depth + 1, cfg);
  if (p.side == Side::minus)
    for (int k = 1; k <= depth; k += 2) coef[k] = -coef[k];

  // Head: the subtracted Taylor terms integrated in closed form on [0,1];
  // this is where the meromorphic continuation lives.
  Complex head = 0.0;
  for (int k = 0; k <= depth; ++k) head += coef[k] / (mu + static_cast<double>(k + 1));

  auto remainder = [&](double t) {
    Complex poly = 0.0;
    double tp = 1.0;
    for (int k = 0; k <= depth; ++k) {
      poly += coef[k] * tp;
      tp *= t;
    }
    Complex phi_t = view(Complex(t));
    Complex rem = phi_t - poly;
    // Below the cancellation floor the computed difference is pure roundoff;
    // the true remainder is O(t^{K+1}) there and its weighted contribution is
    // negligible, while the noise times t^mu would not even be integrable.
    if (std::abs(rem) <= 1e-14 * (std::abs(phi_t) + std::abs(poly)))
      return Complex(0.0);
    // Joint exponential: t^mu alone overflows at the rule's deepest nodes
    // while the product t^mu (phi - T_K) stays O(t^{mu+K+1}).
    return std::exp(mu * std::log(t) + std::log(rem));
  };
  Complex core = quad::tanh_sinh(remainder, 0.0, 1.0, cfg.tol);

  Complex tail = tail_integral(view, phi.decay, mu, cfg.tol);
  return head + core + tail;
}

Complex residue_at_pole(Side side, int ell, const TestFunction1D& phi,
                        const PairingConfig& cfg) {
  if (ell < 0) throw ParameterError("residue order must be >= 0");
  std::vector<Complex> coef = taylor_coefficients(phi, ell + 1, cfg);
  double sign = (side == Side::minus && ell % 2 == 1) ? -1.0 : 1.0;
  return sign * coef[ell];
}

Complex beta_pairing(Side side, Complex lambda, Complex w) {
  if (near_integer(lambda))
    throw PoleError("beta pairing undefined at integer exponents",
                    static_cast<int>(std::lround(lambda.real())));
  if (side == Side::plus) {
    if (w.imag() == 0.0 && w.real() <= 0.0)
      throw DomainError("beta pairing (+): w lies on the branch cut (-inf, 0]");
    return -kPi * std::exp(lambda * std::log(w)) / std::sin(kPi * lambda);
  }
  if (w.imag() == 0.0 && w.real() >= 0.0)
    throw DomainError("beta pairing (-): w lies on the branch cut [0, inf)");
  return kPi * std::exp(lambda * std::log(-w)) / std::sin(kPi * lambda);
}

BoundaryValuePair boundary_value_check(Complex lambda, double x, double eps) {
  if (x == 0.0) throw DomainError("boundary value check requires x != 0");
  if (!(eps > 0)) throw ParameterError("boundary value check requires eps > 0");
  if (near_integer(lambda))
    throw PoleError("boundary value check requires non-integer lambda",
                    static_cast<int>(std::lround(lambda.real())));
  Complex above = std::exp(lambda * std::log(Complex(x, eps)));
  Complex below = std::exp(lambda * std::log(Complex(x, -eps)));
  Complex ref =
      x < 0 ? 2.0 * kI * std::sin(kPi * lambda) * std::exp(lambda * std::log(-x))
            : Complex(0.0);
  return {above - below, ref};
}

Complex kernel_K(const PowerParameter& p, double zeta1, double zeta2, double zeta) {
  if (zeta1 == zeta2) throw DomainError("kernel requires zeta1 != zeta2");
  if (!(p.mu.real() > -1.0))
    throw DomainError("kernel is function-valued only for Re mu > -1");
  double arg = (zeta1 - zeta) * (zeta2 - zeta) / (zeta1 - zeta2);
  return t_power(arg, p.mu, p.side);
}

double kernel_factorization_residual(Side side, Complex mu, double zeta1, double zeta2,
                                     double zeta, double eps) {
  if (zeta1 == zeta2) throw DomainError("factorization requires zeta1 != zeta2");
  double w = (zeta1 - zeta) * (zeta2 - zeta) / (zeta1 - zeta2);
  if (w == 0.0) throw DomainError("factorization degenerates at w = 0");
  auto jump = [&](double e) {
    return beta_pairing(side, mu, Complex(w, e)) - beta_pairing(side, mu, Complex(w, -e));
  };
  // The jump is analytic in eps away from 0; one Richardson step leaves O(eps^2).
  Complex extrapolated = 2.0 * jump(eps / 2) - jump(eps);
  Complex lhs = extrapolated / (zeta1 - zeta2);
  Complex rhs = -2.0 * kPi * kI / (zeta1 - zeta2) *
                kernel_K(PowerParameter{mu, flip(side)}, zeta1, zeta2, zeta);
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

}  // namespace genop
