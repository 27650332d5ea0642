#include "hyperwave/greens.hpp"

#include <cmath>
#include <limits>

#include "hyperwave/quadrature.hpp"

namespace hyperwave::greens {

GreenValue eval(Dimension dim, double t, const Point& x) {
  if (!(t > 0)) throw std::invalid_argument("greens::eval: t must be > 0");
  double r = norm(x, dim);
  switch (dim.value()) {
    case 1:
      return {r <= t ? 0.5 : 0.0, false};
    case 2: {
      if (r > t) return {0.0, false};
      double d2 = (t - r) * (t + r);
      if (d2 <= 0.0)
        return {std::numeric_limits<double>::infinity(), true};
      return {1.0 / (2.0 * pi * std::sqrt(d2)), false};
    }
    default:
      throw UnsupportedError(
          "greens::eval: G(t,.) is a surface measure in d=3; use "
          "greens::sample or pair against test functions");
  }
}

double mass(Dimension, double t) {
  if (!(t > 0)) throw std::invalid_argument("greens::mass: t must be > 0");
  return t;
}

Point sample(Dimension dim, double t, std::mt19937_64& rng) {
  if (!(t > 0)) throw std::invalid_argument("greens::sample: t must be > 0");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (dim.value()) {
    case 1: {
      return make_point(t * (2.0 * unif(rng) - 1.0));
    }
    case 2: {
      // radius CDF F(r) = (t - sqrt(t^2 - r^2)) / t, inverted exactly
      double u = unif(rng);
      double r = t * std::sqrt(u * (2.0 - u));
      double phi = 2.0 * pi * unif(rng);
      return make_point(r * std::cos(phi), r * std::sin(phi));
    }
    default: {
      std::normal_distribution<double> gauss(0.0, 1.0);
      double g0, g1, g2, n;
      do {
        g0 = gauss(rng);
        g1 = gauss(rng);
        g2 = gauss(rng);
        n = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2);
      } while (n == 0.0);
      return make_point(t * g0 / n, t * g1 / n, t * g2 / n);
    }
  }
}

double heat_kernel(Dimension dim, double t, const Point& x) {
  if (!(t > 0)) throw std::invalid_argument("greens::heat_kernel: t must be > 0");
  double r2 = 0.0;
  for (int i = 0; i < dim.value(); ++i) r2 += x[i] * x[i];
  return std::pow(2.0 * pi * t, -0.5 * dim.value()) * std::exp(-r2 / (2.0 * t));
}

double fourier(double t, double k) {
  if (t < 0 || k < 0)
    throw std::invalid_argument("greens::fourier: t and k must be >= 0");
  double kt = k * t;
  if (kt < 1e-4) {
    double kt2 = kt * kt;
    return t * (1.0 - kt2 / 6.0 + kt2 * kt2 / 120.0);
  }
  return std::sin(kt) / k;
}

double laplace_fourier_residual(double lambda, double k) {
  if (!(lambda > 0))
    throw std::invalid_argument("laplace residual: lambda must be > 0");
  double lhs = quad::laplace_halfline(
      [&](double t) { return fourier(t, k); }, lambda, 1e-12);
  double rhs = 1.0 / (lambda * lambda + k * k);
  return std::abs(lhs - rhs);
}

double laplace_residual(Dimension dim, double lambda, const Point& x) {
  if (!(lambda > 0))
    throw std::invalid_argument("laplace residual: lambda must be > 0");
  if (dim.value() != 1) return laplace_fourier_residual(lambda, norm(x, dim));
  double r = std::abs(x[0]);
  // wave side: the integrand is 1/2 past the cone crossing t = |x|
  double T = 16.0 * std::log(10.0) / lambda;
  double lhs = r >= T ? 0.0 : quad::integrate(
      [&](double t) { return 0.5 * std::exp(-lambda * t); }, r, T, 1e-12);
  // heat side: p(t,x) ~ t^{-1/2} at the origin when x = 0
  double a = 0.5 * lambda * lambda;
  double Th = 16.0 * std::log(10.0) / a;
  double rhs = 0.5 * quad::integrate_singular(
      [&](double t) {
        return std::exp(-a * t) * heat_kernel(dim, t, x);
      },
      0.0, Th, 1e-12);
  return std::abs(lhs - rhs);
}

}  // namespace hyperwave::greens
