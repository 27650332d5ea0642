#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperwave/common.hpp"
#include "hyperwave/estimate.hpp"

namespace hyperwave::dmt {

/// Bounded potential f(y); evaluated only at sampled chain positions.
using Potential = std::function<double(const Point&)>;

/// Deterministic free-wave field u0(t, x) fed into the estimator (default 1).
using FreeField = std::function<double(double, const Point&)>;

/// Poisson(1) jump times on [0,t] with spatial steps drawn from
/// G(gap,.)/gap; `weight` stays unset until an estimator evaluates it.
struct JumpChain {
  double horizon = 0.0;
  std::vector<double> jump_times;          // tau_1 < ... < tau_N <= t
  std::vector<Point> positions;            // X_{tau_1}, ..., X_{tau_N}
  double weight = 0.0;
};

JumpChain sample_chain(Dimension dim, double t, const Point& x, std::mt19937_64& rng);
JumpChain sample_chain(Dimension dim, double t, const Point& x, std::uint64_t seed);

/// Jump-chain representation of the wave equation with potential:
///   u(t,x) = e^t E_x[ u0(t - tau_N, X_{tau_N}) prod_k (tau_k - tau_{k-1}) f(X_{tau_k}) ].
/// Guards against non-finite or absurdly large potential values on sampled
/// points (the representation needs bounded f).
MonteCarloEstimate estimate(Dimension dim, const Potential& f, const FreeField& u0,
                            double t, const Point& x, std::uint64_t reps,
                            std::uint64_t seed, unsigned threads = 1);
MonteCarloEstimate estimate(Dimension dim, const Potential& f, double t,
                            const Point& x, std::uint64_t reps, std::uint64_t seed,
                            unsigned threads = 1);

/// n-th term of the deterministic series: int g_n(x_1..x_n, t, x) prod f(x_k) dx
/// by kink-aware iterated quadrature (d=1, n <= 2; n=0 returns 1).
double series_term(const Potential& f, int n, double t, double x);

struct VarianceStratum {
  int jumps = 0;                 // N(t) value of the stratum
  std::uint64_t count = 0;
  double mean_contribution = 0;  // stratum share of the overall mean
  double stderr_contribution = 0;
  bool flagged = false;          // stratum stderr > 10% of |total mean|
};

struct VarianceReport {
  MonteCarloEstimate total;
  std::vector<VarianceStratum> strata;
  bool flagged = false;  // total relative stderr > 10%
};

VarianceReport variance_report(Dimension dim, const Potential& f, double t,
                               std::uint64_t reps, std::uint64_t seed,
                               unsigned threads = 1);

/// Potential grammar for the CLI: "const:<c>", "gauss:a=<a>,s=<s>"
/// (a exp(-|y|^2 / 2 s^2)), or "table:<csv path>" (d=1; position column then
/// value, linear interpolation, 0 outside the grid).
Potential parse_potential(const std::string& spec, Dimension dim);

}  // namespace hyperwave::dmt
