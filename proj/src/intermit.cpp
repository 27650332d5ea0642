#include "hyperwave/intermit.hpp"

#include <cmath>
#include <limits>

namespace hyperwave::intermit {

double mittag_leffler_log(double theta, double gamma_exp, double b) {
  if (!(theta > 0) || !(gamma_exp > 0) || !(b > 0))
    throw std::invalid_argument("mittag_leffler_log: positive parameters required");
  double log_tb = std::log(theta) + std::log(b);
  double running_max = 0.0;  // n = 0 term is 1 -> log 0.0... log term = 0
  double shifted_sum = 1.0;  // sum of exp(l_n - running_max)
  double prev = 0.0;
  for (long n = 1; n < 100000000L; ++n) {
    double l = n * log_tb - gamma_exp * std::lgamma(n + 1.0);
    if (l > running_max) {
      shifted_sum = shifted_sum * std::exp(running_max - l) + 1.0;
      running_max = l;
    } else {
      shifted_sum += std::exp(l - running_max);
      if (l < running_max - 40.0 && l < prev) break;
    }
    prev = l;
  }
  return running_max + std::log(shifted_sum);
}

namespace {

double rate_constant(double alpha, double M) {
  if (!(alpha > 0) || !(alpha < 2))
    throw std::invalid_argument("exponents: 0 < alpha < 2");
  if (!(M > 0)) throw std::invalid_argument("exponents: M > 0");
  double e = (4.0 - alpha) / (3.0 - alpha);
  return 0.5 * (3.0 - alpha) *
         std::pow(2.0 * std::sqrt(M) / (4.0 - alpha), e);
}

}  // namespace

double long_time_exponent(int p, double alpha, double M) {
  if (p < 1) throw std::invalid_argument("long_time_exponent: p >= 1");
  double e = (4.0 - alpha) / (3.0 - alpha);
  return rate_constant(alpha, M) * std::pow(static_cast<double>(p), e);
}

double high_moment_exponent(double t, double alpha, double M) {
  if (!(t > 0)) throw std::invalid_argument("high_moment_exponent: t > 0");
  double e = (4.0 - alpha) / (3.0 - alpha);
  return rate_constant(alpha, M) * std::pow(t, e);
}

double skorohod_exponent(int p, double alpha, double M) {
  if (p < 2) throw std::invalid_argument("skorohod_exponent: p >= 2");
  double e = (4.0 - alpha) / (3.0 - alpha);
  return 0.5 * (3.0 - alpha) * p *
         std::pow(static_cast<double>(p - 1), 1.0 / (3.0 - alpha)) *
         std::pow(2.0 * std::sqrt(M) / (4.0 - alpha), e);
}

ExponentPrediction predict(int p, double alpha, double M) {
  ExponentPrediction out;
  out.p = p;
  out.alpha = alpha;
  out.M = M;
  out.long_time_rate = long_time_exponent(p, alpha, M);
  out.high_moment_rate = high_moment_exponent(1.0, alpha, M);
  out.skorohod_rate = p >= 2 ? skorohod_exponent(p, alpha, M)
                             : std::numeric_limits<double>::quiet_NaN();
  return out;
}

SeriesValue assemble_moment_series(const std::vector<double>& coeffs, double t,
                                   double alpha) {
  if (coeffs.empty())
    throw std::invalid_argument("assemble_moment_series: empty coefficient list");
  if (!(t >= 0)) throw std::invalid_argument("assemble_moment_series: t >= 0");
  double log_t_block = t > 0 ? (4.0 - alpha) * std::log(t)
                             : -std::numeric_limits<double>::infinity();
  // log-domain partial sum, n = 0 term is 1
  double running_max = 0.0;
  double shifted = 1.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    double c = coeffs[i];
    if (c < 0)
      throw std::invalid_argument("assemble_moment_series: negative coefficient");
    if (c == 0.0 || t == 0.0) continue;
    auto n = static_cast<double>(i + 1);
    double l = n * log_t_block + std::log(c);
    if (l > running_max) {
      shifted = shifted * std::exp(running_max - l) + 1.0;
      running_max = l;
    } else {
      shifted += std::exp(l - running_max);
    }
  }
  SeriesValue out{};
  out.log_value = running_max + std::log(shifted);
  out.value = out.log_value < 700.0 ? std::exp(out.log_value)
                                    : std::numeric_limits<double>::infinity();

  // factorial-envelope fit: log c_n + log n! ~ n log C (least squares
  // through the origin), tail <= z^{N+1}/(N+1)! e^z with z = C t^{4-alpha}
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] <= 0.0) continue;
    auto n = static_cast<double>(i + 1);
    num += n * (std::log(coeffs[i]) + std::lgamma(n + 1.0));
    den += n * n;
  }
  if (den > 0 && t > 0) {
    double logC = num / den;
    auto N1 = static_cast<double>(coeffs.size() + 1);
    double logz = logC + log_t_block;
    double log_tail = N1 * logz - std::lgamma(N1 + 1.0) + std::exp(logz);
    out.truncation_bound =
        log_tail < 700.0 ? std::exp(log_tail) : std::numeric_limits<double>::infinity();
  } else {
    out.truncation_bound = 0.0;
  }
  return out;
}

std::vector<GrowthDiagnosticRow> coefficient_growth_diagnostic(
    const std::vector<double>& coeffs, int p, double alpha, double M) {
  if (p < 1) throw std::invalid_argument("growth diagnostic: p >= 1");
  double target = (3.0 - alpha) * std::log(0.5) +
                  (4.0 - alpha) * std::log(static_cast<double>(p)) +
                  (4.0 - alpha) * std::log(2.0 * std::sqrt(M) / (4.0 - alpha));
  std::vector<GrowthDiagnosticRow> rows;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!(coeffs[i] > 0))
      throw std::invalid_argument("growth diagnostic: coefficients must be > 0");
    int n = static_cast<int>(i) + 1;
    double diag = ((3.0 - alpha) * std::lgamma(n + 1.0) + std::log(coeffs[i])) / n;
    rows.push_back({n, diag, target});
  }
  return rows;
}

}  // namespace hyperwave::intermit
