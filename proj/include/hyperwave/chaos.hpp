#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperwave/common.hpp"
#include "hyperwave/covariance.hpp"

namespace hyperwave::chaos {

/// Iterated wave-kernel time-simplex integrand
///   g_n(x_1..x_n, t, x0) = int_{0<s_1<..<s_n<t} prod G(s_k - s_{k-1}, x_k - x_{k-1}) ds.
///
/// d=1: the product of half-indicators makes the integrand piecewise
/// constant; panel-splitting the simplex at the light-cone breakpoints
/// collapses the quadrature to the exact shifted-simplex volume
///   (t - sum |dx_k|)_+^n / (2^n n!).
/// d=2: nested quadrature, one cosh substitution per time level (removes the
/// inverse-square-root cone singularity exactly).
/// d=3: the kernel is a measure; pointwise evaluation is refused.
double kernel_eval(Dimension dim, int n, double t, const Point& x0,
                   std::span<const Point> points);

/// Residual of the Laplace identity between the wave-kernel simplex integral
/// and the heat-kernel simplex integral (d=1, n <= 2):
///   int_0^inf e^{-lambda t} g_n dt
///     = (lambda/2)(1/2)^n int_0^inf e^{-lambda^2 t/2} [heat simplex] dt.
double laplace_kernel_residual(int n, double lambda, std::span<const double> points,
                               double x0 = 0.0);

/// First nontrivial mean term E S_2(g_2(.,t,0)) as the double integral
///   int_0^t s [ int mu(dxi) (1 - cos(|xi|(t-s))) / |xi|^2 ] ds
/// by quadrature. White noise: inner integral is (t-s)/2, value t^3/12.
double mean_chaos2(const cov::CovarianceModel& model, double t);

struct StratCovOptions {
  double eps0 = 0.05;         // ladder top rung for mollified pairings
  bool force_ladder = false;  // use the mollified route even for white noise
};

/// Pair-moment E S_n(g_n(.,t1,0)) S_n(g_n(.,t2,0)) = sum over pair
/// partitions of the gamma-paired double kernel integral. White noise uses
/// exact delta contractions (each pair identifies two variables); Riesz and
/// forced-mollified runs pair the kernels against gamma_{2 eps} on an
/// eps-ladder with Richardson extrapolation.
double strat_cov(const cov::CovarianceModel& model, int n, double t1, double t2,
                 const StratCovOptions& opt = {});

/// sum_{l1+..+lp = 2n} E prod_j S_{lj}(g_{lj}(.,t,0)), supported for
/// (p=1, n=1) and (p=2, n=1).
double moment_term_sum(const cov::CovarianceModel& model, int p, int n, double t);

struct ChaosCoefficient {
  int p = 1;
  int n = 1;
  double value = 0.0;
  std::string method;  // "quadrature" | "ilt_mc"
  double error = 0.0;  // stderr (MC) or quadrature tolerance
};

/// Coefficient of t^{(4-alpha) n} in the E u^p moment series, evaluated at
/// t=1. Quadrature is limited to n=1, p <= 2; "ilt_mc" delegates to the
/// Brownian local-time route (p=1 only).
ChaosCoefficient chaos_coefficient(const cov::CovarianceModel& model, int p, int n,
                                   const std::string& method,
                                   std::uint64_t reps = 10000, std::uint64_t seed = 1,
                                   unsigned threads = 1);

}  // namespace hyperwave::chaos
