#pragma once

#include <vector>

#include "hyperwave/common.hpp"

namespace hyperwave::intermit {

/// log sum_{n>=0} theta^n b^n / (n!)^gamma by streaming log-domain
/// summation; terms are dropped once they fall 40 log-units below the
/// running maximum past the peak.
double mittag_leffler_log(double theta, double gamma_exp, double b);

/// Long-time moment growth rate:
///   ((3-a)/2) p^{(4-a)/(3-a)} (2 sqrt(M)/(4-a))^{(4-a)/(3-a)}.
double long_time_exponent(int p, double alpha, double M);

/// High-moment growth rate (same constant family, t in place of p).
double high_moment_exponent(double t, double alpha, double M);

/// Wick-product comparison rate, p >= 2:
///   ((3-a)/2) p (p-1)^{1/(3-a)} (2 sqrt(M)/(4-a))^{(4-a)/(3-a)}.
double skorohod_exponent(int p, double alpha, double M);

struct ExponentPrediction {
  int p = 1;
  double alpha = 1.0;
  double M = 0.0;
  double long_time_rate = 0.0;
  double high_moment_rate = 0.0;  // at t = 1
  double skorohod_rate = 0.0;     // NaN when p < 2
};

ExponentPrediction predict(int p, double alpha, double M);

struct SeriesValue {
  double value;             // may overflow to inf for huge arguments
  double log_value;         // always finite when the series is
  double truncation_bound;  // tail estimate from the fitted factorial envelope
};

/// Partial sum sum_{n<=N} t^{(4-alpha) n} c_n with c_0 = 1 implied when the
/// list starts at n=1 (pass include_zero_term=false in that case).
SeriesValue assemble_moment_series(const std::vector<double>& coeffs_from_n1,
                                   double t, double alpha);

struct GrowthDiagnosticRow {
  int n;
  double diagnostic;  // (1/n) log((n!)^{3-alpha} c_n)
  double target;      // log[(1/2)^{3-alpha} p^{4-alpha} (2 sqrt(M)/(4-a))^{4-a}]
};

/// Report-only growth diagnostic against the factorial-envelope target line.
std::vector<GrowthDiagnosticRow> coefficient_growth_diagnostic(
    const std::vector<double>& coeffs_from_n1, int p, double alpha, double M);

}  // namespace hyperwave::intermit
