#include "hyperwave.h"

#include <cstring>
#include <string>

#include "hyperwave/chaos.hpp"
#include "hyperwave/covariance.hpp"
#include "hyperwave/dmt.hpp"
#include "hyperwave/greens.hpp"
#include "hyperwave/intermit.hpp"
#include "hyperwave/pathmc.hpp"
#include "hyperwave/varopt.hpp"
#include "hyperwave/wick.hpp"

struct hw_model {
  hyperwave::cov::CovarianceModel model;
};

namespace {

thread_local std::string g_last_error;

hyperwave::Point to_point(const double x[3]) {
  return x ? hyperwave::Point{x[0], x[1], x[2]} : hyperwave::Point{0, 0, 0};
}

template <class F>
hw_status guarded(F&& f) {
  try {
    f();
    return HW_OK;
  } catch (const hyperwave::SizeGuardError& e) {
    g_last_error = e.what();
    return HW_ERR_GUARD;
  } catch (const hyperwave::RangeError& e) {
    g_last_error = e.what();
    return HW_ERR_RANGE;
  } catch (const hyperwave::UnsupportedError& e) {
    g_last_error = e.what();
    return HW_ERR_UNSUPPORTED;
  } catch (const hyperwave::SingularityError& e) {
    g_last_error = e.what();
    return HW_ERR_INVALID;
  } catch (const hyperwave::QuadratureError& e) {
    g_last_error = e.what();
    return HW_ERR_NUMERIC;
  } catch (const hyperwave::DivergenceError& e) {
    g_last_error = e.what();
    return HW_ERR_NUMERIC;
  } catch (const hyperwave::Error& e) {
    g_last_error = e.what();
    return HW_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HW_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HW_ERR_NUMERIC;
  }
}

}  // namespace

extern "C" {

const char* hw_version(void) { return "0.1.0"; }

const char* hw_last_error(void) { return g_last_error.c_str(); }

hw_status hw_model_parse(const char* spec, hw_model** out) {
  if (!spec || !out) {
    g_last_error = "null argument";
    return HW_ERR_INVALID;
  }
  return guarded([&] {
    *out = new hw_model{hyperwave::cov::CovarianceModel::parse(spec)};
  });
}

void hw_model_free(hw_model* model) { delete model; }

hw_status hw_model_describe(const hw_model* model, char* buf, int buflen) {
  if (!model || !buf || buflen <= 0) {
    g_last_error = "null argument";
    return HW_ERR_INVALID;
  }
  return guarded([&] {
    std::string s = model->model.describe();
    std::strncpy(buf, s.c_str(), buflen - 1);
    buf[buflen - 1] = '\0';
  });
}

hw_status hw_gamma_eval(const hw_model* model, const double x[3], double* out) {
  if (!model || !out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::cov::gamma_eval(model->model, to_point(x)); });
}

hw_status hw_gamma_mollified(const hw_model* model, double eps, const double x[3],
                             double* out) {
  if (!model || !out) return HW_ERR_INVALID;
  return guarded(
      [&] { *out = hyperwave::cov::gamma_mollified(model->model, eps, to_point(x)); });
}

hw_status hw_dalang_integral(const hw_model* model, int* finite, double* out) {
  if (!model || !finite) return HW_ERR_INVALID;
  return guarded([&] {
    auto r = hyperwave::cov::dalang_integral(model->model);
    *finite = r.finite ? 1 : 0;
    if (r.finite && out) *out = r.value;
  });
}

hw_status hw_homogeneity_residual(const hw_model* model, double c,
                                  const double x[3], double* out) {
  if (!model || !out) return HW_ERR_INVALID;
  return guarded([&] {
    *out = hyperwave::cov::homogeneity_residual(model->model, c, to_point(x));
  });
}

hw_status hw_green_eval(int d, double t, const double x[3], double* out,
                        int* at_cone) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] {
    auto v = hyperwave::greens::eval(hyperwave::Dimension(d), t, to_point(x));
    *out = v.value;
    if (at_cone) *at_cone = v.at_cone ? 1 : 0;
  });
}

hw_status hw_green_mass(int d, double t, double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::greens::mass(hyperwave::Dimension(d), t); });
}

hw_status hw_green_fourier(double t, double k, double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::greens::fourier(t, k); });
}

hw_status hw_heat_kernel(int d, double t, const double x[3], double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] {
    *out = hyperwave::greens::heat_kernel(hyperwave::Dimension(d), t, to_point(x));
  });
}

hw_status hw_green_laplace_residual(int d, double lambda, const double x[3],
                                    double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] {
    *out = hyperwave::greens::laplace_residual(hyperwave::Dimension(d), lambda,
                                               to_point(x));
  });
}

hw_status hw_green_fourier_laplace_residual(double lambda, double k, double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded(
      [&] { *out = hyperwave::greens::laplace_fourier_residual(lambda, k); });
}

hw_status hw_mean_chaos2(const hw_model* model, double t, double* out) {
  if (!model || !out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::chaos::mean_chaos2(model->model, t); });
}

hw_status hw_strat_cov(const hw_model* model, int n, double t1, double t2,
                       double* out) {
  if (!model || !out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::chaos::strat_cov(model->model, n, t1, t2); });
}

hw_status hw_chaos_coefficient(const hw_model* model, int p, int n,
                               const char* method, uint64_t reps, uint64_t seed,
                               unsigned threads, double* value_out,
                               double* stderr_out) {
  if (!model || !method || !value_out) return HW_ERR_INVALID;
  return guarded([&] {
    auto c = hyperwave::chaos::chaos_coefficient(model->model, p, n, method, reps,
                                                 seed, threads);
    *value_out = c.value;
    if (stderr_out) *stderr_out = c.error;
  });
}

hw_status hw_ilt_moment(const hw_model* model, int n, double t, uint64_t reps,
                        uint64_t seed, unsigned threads, double eps0,
                        double* value_out, double* stderr_out, int* unreliable) {
  if (!model || !value_out) return HW_ERR_INVALID;
  return guarded([&] {
    hyperwave::pathmc::IltOptions opt;
    if (eps0 > 0) opt.eps0 = eps0;
    opt.threads = threads;
    auto est = hyperwave::pathmc::ilt_moment_mc(model->model, n, t, reps, seed, opt);
    *value_out = est.value;
    if (stderr_out) *stderr_out = est.stderr_;
    if (unreliable)
      *unreliable = est.bias_note.find("UNRELIABLE") != std::string::npos ? 1 : 0;
  });
}

hw_status hw_strat_moment_laplace(const hw_model* model, int n, double lambda,
                                  uint64_t reps, uint64_t seed, unsigned threads,
                                  double eps0, double* value_out,
                                  double* stderr_out) {
  if (!model || !value_out) return HW_ERR_INVALID;
  return guarded([&] {
    hyperwave::pathmc::IltOptions opt;
    if (eps0 > 0) opt.eps0 = eps0;
    opt.threads = threads;
    auto est = hyperwave::pathmc::strat_moment_laplace_mc(model->model, n, lambda,
                                                          reps, seed, opt);
    *value_out = est.value;
    if (stderr_out) *stderr_out = est.stderr_;
  });
}

hw_status hw_mean_coeff_from_ilt(const hw_model* model, int n, uint64_t reps,
                                 uint64_t seed, unsigned threads, double eps0,
                                 double* value_out, double* stderr_out) {
  if (!model || !value_out) return HW_ERR_INVALID;
  return guarded([&] {
    auto est = hyperwave::pathmc::mean_coeff_from_ilt(
        model->model, n, reps, seed, threads, eps0 > 0 ? eps0 : 0.1);
    *value_out = est.value;
    if (stderr_out) *stderr_out = est.stderr_;
  });
}

hw_status hw_dmt_estimate(int d, const char* potential, double t,
                          const double x[3], uint64_t reps, uint64_t seed,
                          unsigned threads, double* value_out, double* stderr_out) {
  if (!potential || !value_out) return HW_ERR_INVALID;
  return guarded([&] {
    hyperwave::Dimension dim(d);
    auto f = hyperwave::dmt::parse_potential(potential, dim);
    auto est = hyperwave::dmt::estimate(dim, f, t, to_point(x), reps, seed, threads);
    *value_out = est.value;
    if (stderr_out) *stderr_out = est.stderr_;
  });
}

hw_status hw_dmt_series_term(const char* potential, int n, double t, double x,
                             double* out) {
  if (!potential || !out) return HW_ERR_INVALID;
  return guarded([&] {
    auto f = hyperwave::dmt::parse_potential(potential, hyperwave::Dimension(1));
    *out = hyperwave::dmt::series_term(f, n, t, x);
  });
}

hw_status hw_dmt_variance_report(int d, const char* potential, double t,
                                 uint64_t reps, uint64_t seed, unsigned threads,
                                 double* total, double* total_stderr,
                                 int* overall_flag, int max_rows, int* rows,
                                 int* jumps, uint64_t* counts, double* contribs,
                                 double* contrib_stderrs, int* flags) {
  if (!potential || !total) return HW_ERR_INVALID;
  return guarded([&] {
    hyperwave::Dimension dim(d);
    auto f = hyperwave::dmt::parse_potential(potential, dim);
    auto rep = hyperwave::dmt::variance_report(dim, f, t, reps, seed, threads);
    *total = rep.total.value;
    if (total_stderr) *total_stderr = rep.total.stderr_;
    if (overall_flag) *overall_flag = rep.flagged ? 1 : 0;
    int nrows = std::min<int>(max_rows, static_cast<int>(rep.strata.size()));
    for (int i = 0; i < nrows; ++i) {
      if (jumps) jumps[i] = rep.strata[i].jumps;
      if (counts) counts[i] = rep.strata[i].count;
      if (contribs) contribs[i] = rep.strata[i].mean_contribution;
      if (contrib_stderrs) contrib_stderrs[i] = rep.strata[i].stderr_contribution;
      if (flags) flags[i] = rep.strata[i].flagged ? 1 : 0;
    }
    if (rows) *rows = nrows;
  });
}

hw_status hw_solve_M(const hw_model* model, double grid_extent, double grid_h,
                     int iterations, int restarts, uint64_t seed, double* M_out,
                     double* maximizer_buf, int buf_len, int* npoints) {
  if (!model || !M_out) return HW_ERR_INVALID;
  return guarded([&] {
    hyperwave::varopt::SolveOptions opt;
    if (grid_extent > 0) opt.extent = grid_extent;
    if (grid_h > 0) opt.h = grid_h;
    if (iterations > 0) opt.iterations = iterations;
    if (restarts > 0) opt.restarts = restarts;
    opt.seed = seed;
    auto res = hyperwave::varopt::solve_M(model->model, opt);
    *M_out = res.M;
    if (maximizer_buf && buf_len > 0) {
      int n = std::min<int>(buf_len, res.maximizer.size());
      for (int i = 0; i < n; ++i) maximizer_buf[i] = res.maximizer.values[i];
      if (npoints) *npoints = n;
    } else if (npoints) {
      *npoints = res.maximizer.size();
    }
  });
}

hw_status hw_gaussian_ansatz_M(const hw_model* model, double grid_extent,
                               double grid_h, double* out) {
  if (!model || !out) return HW_ERR_INVALID;
  return guarded([&] {
    hyperwave::varopt::SolveOptions opt;
    if (grid_extent > 0) opt.extent = grid_extent;
    if (grid_h > 0) opt.h = grid_h;
    *out = hyperwave::varopt::gaussian_ansatz_M(model->model, opt);
  });
}

hw_status hw_white_noise_M_closed(double* out) {
  if (!out) return HW_ERR_INVALID;
  *out = hyperwave::varopt::white_noise_M_closed();
  return HW_OK;
}

hw_status hw_mittag_leffler_log(double theta, double gamma_exp, double b,
                                double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded(
      [&] { *out = hyperwave::intermit::mittag_leffler_log(theta, gamma_exp, b); });
}

hw_status hw_long_time_exponent(int p, double alpha, double M, double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::intermit::long_time_exponent(p, alpha, M); });
}

hw_status hw_high_moment_exponent(double t, double alpha, double M, double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded(
      [&] { *out = hyperwave::intermit::high_moment_exponent(t, alpha, M); });
}

hw_status hw_skorohod_exponent(int p, double alpha, double M, double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::intermit::skorohod_exponent(p, alpha, M); });
}

hw_status hw_assemble_moment_series(const double* coeffs, int ncoeffs, double t,
                                    double alpha, double* value, double* log_value,
                                    double* truncation_bound) {
  if (!coeffs || ncoeffs < 1 || !value) return HW_ERR_INVALID;
  return guarded([&] {
    std::vector<double> c(coeffs, coeffs + ncoeffs);
    auto s = hyperwave::intermit::assemble_moment_series(c, t, alpha);
    *value = s.value;
    if (log_value) *log_value = s.log_value;
    if (truncation_bound) *truncation_bound = s.truncation_bound;
  });
}

hw_status hw_growth_diagnostic(const double* coeffs, int ncoeffs, int p,
                               double alpha, double M, double* diagnostics,
                               double* target) {
  if (!coeffs || ncoeffs < 1 || !diagnostics) return HW_ERR_INVALID;
  return guarded([&] {
    std::vector<double> c(coeffs, coeffs + ncoeffs);
    auto rows = hyperwave::intermit::coefficient_growth_diagnostic(c, p, alpha, M);
    for (int i = 0; i < ncoeffs; ++i) diagnostics[i] = rows[i].diagnostic;
    if (target) *target = rows.front().target;
  });
}

hw_status hw_pair_partition_count(int n, uint64_t* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] { *out = hyperwave::wick::pair_partition_count(n); });
}

hw_status hw_humeyer_coefficients(int n, double* coeffs, int cap, int* count) {
  if (!coeffs || !count) return HW_ERR_INVALID;
  return guarded([&] {
    if (n < 0 || n > 6) throw std::invalid_argument("order n in [0,6]");
    int terms = n / 2 + 1;
    if (cap < terms) throw std::invalid_argument("buffer too small");
    for (int k = 0; 2 * k <= n; ++k)
      coeffs[k] = std::tgamma(n + 1.0) / (std::pow(2.0, k) * std::tgamma(k + 1.0) *
                                          std::tgamma(n - 2 * k + 1.0));
    *count = terms;
  });
}

hw_status hw_humeyer_max_residual(int n, int m, int samples, uint64_t seed,
                                  double* out) {
  if (!out) return HW_ERR_INVALID;
  return guarded([&] {
    using namespace hyperwave;
    if (n < 1 || n > 6 || m < 1 || m > 8)
      throw std::invalid_argument("hu-meyer check: n in [1,6], m in [1,8]");
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      auto rng = derive_stream(seed, static_cast<std::uint64_t>(s));
      auto spec = wick::GaussianVectorSpec::random(m, rng);
      auto f = wick::SymmetricTensor::random(n, m, rng);
      auto w = spec.sample(rng);
      double plain = wick::strat_finite(f, w);
      double expansion = 0.0;
      for (const auto& term : wick::hu_meyer(f, spec))
        expansion += term.coeff * wick::ito_multiple(term.tensor, w, spec);
      worst = std::max(worst, std::abs(plain - expansion));
    }
    *out = worst;
  });
}

} /* extern "C" */
