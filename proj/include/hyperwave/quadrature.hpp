#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <vector>

#include "hyperwave/common.hpp"

namespace hyperwave::quad {

inline constexpr double default_tol = 1e-10;

/// Adaptive Gauss–Kronrod on a finite interval. Throws QuadratureError when
/// the error estimate misses the requested tolerance by a wide margin.
template <class F>
double integrate(F&& f, double a, double b, double tol = default_tol) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, tol, &err);
  if (!std::isfinite(v) || err > std::max(1e3 * tol, 1e-6 * std::abs(v)))
    throw QuadratureError("adaptive quadrature did not converge", err);
  return v;
}

/// Finite-interval quadrature tolerant of integrable endpoint singularities.
template <class F>
double integrate_singular(F&& f, double a, double b, double tol = default_tol) {
  if (!(b > a)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0, l1 = 0.0;
  double v = ts.integrate(f, a, b, std::sqrt(tol), &err, &l1);
  if (!std::isfinite(v)) throw QuadratureError("tanh-sinh quadrature failed", err);
  return v;
}

/// Half-line Laplace-type integral of e^{-lambda t} f(t): the integrand is
/// truncated where e^{-lambda t} < 1e-16, per the module defaults.
template <class F>
double laplace_halfline(F&& f, double lambda, double tol = default_tol,
                        bool singular_origin = false) {
  double T = 16.0 * std::log(10.0) / lambda;
  auto g = [&](double t) { return std::exp(-lambda * t) * f(t); };
  return singular_origin ? integrate_singular(g, 0.0, T, tol)
                         : integrate(g, 0.0, T, tol);
}

/// Piecewise adaptive quadrature with interior breakpoints (kinks, cone
/// crossings). Breakpoints outside (a,b) are ignored.
template <class F>
double integrate_broken(F&& f, double a, double b,
                        std::vector<double> breaks, double tol = default_tol) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double lo = a;
  for (double c : breaks) {
    if (c <= lo || c > b) continue;
    total += integrate(f, lo, std::min(c, b), tol);
    lo = c;
  }
  if (lo < b) total += integrate(f, lo, b, tol);
  return total;
}

/// Fixed 32-node Gauss–Legendre on [a,b] (the simplex-panel workhorse).
template <class F>
double gauss32(F&& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss<double, 32>::integrate(f, a, b);
}

/// Two-stage Richardson extrapolation for a geometric parameter ladder
/// {e0, e0/2, e0/4} with known leading error exponents p1 < p2.
/// Returns the extrapolated value and the magnitude of the last correction.
struct LadderResult {
  double value;
  double error_estimate;
};

inline LadderResult richardson_ladder(double v0, double v1, double v2,
                                      double p1, double p2) {
  double r1 = std::pow(2.0, p1);
  double w0 = (r1 * v1 - v0) / (r1 - 1.0);
  double w1 = (r1 * v2 - v1) / (r1 - 1.0);
  double r2 = std::pow(2.0, p2);
  double final = (r2 * w1 - w0) / (r2 - 1.0);
  return {final, std::abs(final - w1)};
}

}  // namespace hyperwave::quad
