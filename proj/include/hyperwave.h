/* hyperwave C API: opaque handles + status codes over the numerics core.
 *
 * Every function returns hw_status; outputs go through pointers. On any
 * failure hw_last_error() carries a thread-local message describing it.
 * Spatial points are passed as double[3]; only the first d entries are read.
 */
#ifndef HYPERWAVE_H
#define HYPERWAVE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hw_status {
  HW_OK = 0,
  HW_ERR_INVALID = 1,     /* bad arguments / parse failure */
  HW_ERR_UNSUPPORTED = 2, /* operation undefined for these inputs */
  HW_ERR_NUMERIC = 3,     /* quadrature/extrapolation failure, divergence */
  HW_ERR_GUARD = 4,       /* size/cost guard tripped */
  HW_ERR_RANGE = 5        /* input outside a sampled/tabulated range */
} hw_status;

const char* hw_version(void);
/* Thread-local message for the last failing call on this thread. */
const char* hw_last_error(void);

/* ---- covariance models -------------------------------------------------- */

typedef struct hw_model hw_model;

/* Grammar: "white1d" | "riesz:d=<1|2|3>,alpha=<f>,kappa=<f>", optional
 * ",eps=<f>" mollified wrapper on either. */
hw_status hw_model_parse(const char* spec, hw_model** out);
void hw_model_free(hw_model* model);
hw_status hw_model_describe(const hw_model* model, char* buf, int buflen);

hw_status hw_gamma_eval(const hw_model* model, const double x[3], double* out);
hw_status hw_gamma_mollified(const hw_model* model, double eps, const double x[3],
                             double* out);
/* finite=0: the integral diverges and *out is untouched. */
hw_status hw_dalang_integral(const hw_model* model, int* finite, double* out);
hw_status hw_homogeneity_residual(const hw_model* model, double c,
                                  const double x[3], double* out);

/* ---- wave kernel -------------------------------------------------------- */

/* at_cone=1 flags the d=2 light-cone point (value +inf). */
hw_status hw_green_eval(int d, double t, const double x[3], double* out,
                        int* at_cone);
hw_status hw_green_mass(int d, double t, double* out);
hw_status hw_green_fourier(double t, double k, double* out);
hw_status hw_heat_kernel(int d, double t, const double x[3], double* out);
hw_status hw_green_laplace_residual(int d, double lambda, const double x[3],
                                    double* out);
hw_status hw_green_fourier_laplace_residual(double lambda, double k, double* out);

/* ---- chaos moments ------------------------------------------------------ */

hw_status hw_mean_chaos2(const hw_model* model, double t, double* out);
hw_status hw_strat_cov(const hw_model* model, int n, double t1, double t2,
                       double* out);
/* method: "quadrature" | "ilt_mc"; stderr_out may be NULL. */
hw_status hw_chaos_coefficient(const hw_model* model, int p, int n,
                               const char* method, uint64_t reps, uint64_t seed,
                               unsigned threads, double* value_out,
                               double* stderr_out);

/* ---- Brownian local-time Monte Carlo ------------------------------------ */

hw_status hw_ilt_moment(const hw_model* model, int n, double t, uint64_t reps,
                        uint64_t seed, unsigned threads, double eps0,
                        double* value_out, double* stderr_out, int* unreliable);
hw_status hw_strat_moment_laplace(const hw_model* model, int n, double lambda,
                                  uint64_t reps, uint64_t seed, unsigned threads,
                                  double eps0, double* value_out,
                                  double* stderr_out);
hw_status hw_mean_coeff_from_ilt(const hw_model* model, int n, uint64_t reps,
                                 uint64_t seed, unsigned threads, double eps0,
                                 double* value_out, double* stderr_out);

/* ---- jump-chain wave representation ------------------------------------- */

/* Potential grammar: "const:<c>" | "gauss:a=<a>,s=<s>" | "table:<csv>". */
hw_status hw_dmt_estimate(int d, const char* potential, double t,
                          const double x[3], uint64_t reps, uint64_t seed,
                          unsigned threads, double* value_out, double* stderr_out);
hw_status hw_dmt_series_term(const char* potential, int n, double t, double x,
                             double* out);
/* Per-jump-count strata written into parallel arrays of capacity max_rows. */
hw_status hw_dmt_variance_report(int d, const char* potential, double t,
                                 uint64_t reps, uint64_t seed, unsigned threads,
                                 double* total, double* total_stderr,
                                 int* overall_flag, int max_rows, int* rows,
                                 int* jumps, uint64_t* counts, double* contribs,
                                 double* contrib_stderrs, int* flags);

/* ---- variational constant ----------------------------------------------- */

/* maximizer_buf (capacity buf_len, filled size -> *npoints) receives the
 * grid values; pass NULL to skip. history/npoints likewise optional. */
hw_status hw_solve_M(const hw_model* model, double grid_extent, double grid_h,
                     int iterations, int restarts, uint64_t seed, double* M_out,
                     double* maximizer_buf, int buf_len, int* npoints);
hw_status hw_gaussian_ansatz_M(const hw_model* model, double grid_extent,
                               double grid_h, double* out);
hw_status hw_white_noise_M_closed(double* out);

/* ---- intermittency arithmetic ------------------------------------------- */

hw_status hw_mittag_leffler_log(double theta, double gamma_exp, double b,
                                double* out);
hw_status hw_long_time_exponent(int p, double alpha, double M, double* out);
hw_status hw_high_moment_exponent(double t, double alpha, double M, double* out);
hw_status hw_skorohod_exponent(int p, double alpha, double M, double* out);
/* Partial moment series with tail bound from the fitted factorial envelope. */
hw_status hw_assemble_moment_series(const double* coeffs_from_n1, int ncoeffs,
                                    double t, double alpha, double* value,
                                    double* log_value, double* truncation_bound);
hw_status hw_growth_diagnostic(const double* coeffs_from_n1, int ncoeffs, int p,
                               double alpha, double M, double* diagnostics,
                               double* target);

/* ---- pair-partition / Hu-Meyer checks ----------------------------------- */

hw_status hw_pair_partition_count(int n, uint64_t* out);
/* Coefficients n!/(2^k k! (n-2k)!), k = 0..n/2, written to coeffs. */
hw_status hw_humeyer_coefficients(int n, double* coeffs, int cap, int* count);
/* Max |plain product - Wick expansion| over `samples` random
 * (tensor, covariance, sample) triples at tensor order n, dimension m. */
hw_status hw_humeyer_max_residual(int n, int m, int samples, uint64_t seed,
                                  double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYPERWAVE_H */
