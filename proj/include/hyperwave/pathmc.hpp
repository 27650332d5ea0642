#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyperwave/common.hpp"
#include "hyperwave/covariance.hpp"
#include "hyperwave/estimate.hpp"

namespace hyperwave::pathmc {

/// Discretized Brownian path; positions are interleaved (point i, coord c
/// at pts[i*d + c]), points[0] = start.
struct BrownianPath {
  Dimension dim;
  double horizon;
  double dt;
  Point start;
  std::vector<double> pts;

  int steps() const { return static_cast<int>(pts.size()) / dim.value() - 1; }
  Point point(int i) const {
    Point p{0, 0, 0};
    for (int c = 0; c < dim.value(); ++c) p[c] = pts[i * dim.value() + c];
    return p;
  }
};

BrownianPath bm_simulate(Dimension dim, double t, int steps, std::mt19937_64& rng,
                         const Point& start = {0, 0, 0});
BrownianPath bm_simulate(Dimension dim, double t, int steps, std::uint64_t seed,
                         const Point& start = {0, 0, 0});

/// Heat-mollified self-intersection local time
///   int_0^t int_0^t gamma_eps(B(s) - B(r)) ds dr
/// at a single smoothing eps. d=1 uses the occupied-bin occupation estimator
/// (bin width eps/2, occupation-weighted bin positions, analytic kernel);
/// d>=2 falls back to the O(steps^2) pair sum with a radial kernel table.
double self_ilt(const BrownianPath& path, const cov::CovarianceModel& model,
                double eps);

/// Mutual version over two independent paths.
double mutual_ilt(const BrownianPath& p1, const BrownianPath& p2,
                  const cov::CovarianceModel& model, double eps);

struct IltOptions {
  double eps0 = 0.1;   // ladder top rung; dt is tied to eps^2 per rung
  unsigned threads = 1;
};

/// MC estimate of m_n(t) = E_0 [self-ILT over [0,t]^2]^n with the eps-ladder
/// extrapolation applied per replica (common underlying path across rungs).
/// Flags heavy-tailed averages via the top-1% contribution share.
MonteCarloEstimate ilt_moment_mc(const cov::CovarianceModel& model, int n, double t,
                                 std::uint64_t reps, std::uint64_t seed,
                                 const IltOptions& opt = {});

/// MC estimate of int_0^inf e^{-lambda t} E S_n(g_n(.,t,0)) dt through the
/// Brownian local-time representation; odd n short-circuits to exact 0.
MonteCarloEstimate strat_moment_laplace_mc(const cov::CovarianceModel& model, int n,
                                           double lambda, std::uint64_t reps,
                                           std::uint64_t seed,
                                           const IltOptions& opt = {});

/// MC estimate of c_n, the coefficient of t^{(4-alpha) n} in E u(t,0):
///   c_n = m_n(1) (1/8)^n (1/n!) Gamma((4-alpha)n/2 + 1) 2^{(4-alpha)n/2}
///         / Gamma((4-alpha)n + 1).
MonteCarloEstimate mean_coeff_from_ilt(const cov::CovarianceModel& model, int n,
                                       std::uint64_t reps, std::uint64_t seed,
                                       unsigned threads = 1, double eps0 = 0.1);

/// Discretized two-sided white-noise field on a 1-d grid; increments[j] is
/// W((j+1) dy) - W(j dy) ~ N(0, dy).
struct NoiseField1D {
  double y0;
  double dy;
  std::vector<double> increments;

  static NoiseField1D sample(double y_min, double y_max, double dy,
                             std::mt19937_64& rng);
  static NoiseField1D zeros(double y_min, double y_max, double dy);
};

/// Pairing of the path's occupation density against the noise increments:
/// the discretization of int_0^t W'(B(s)) ds = int L_t(y) W(dy).
/// Throws RangeError when the path leaves the noise grid.
double quenched_noise_integral(const BrownianPath& path, const NoiseField1D& noise);

}  // namespace hyperwave::pathmc
