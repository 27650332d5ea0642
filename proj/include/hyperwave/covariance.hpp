#pragma once

#include <memory>
#include <optional>
#include <string>

#include "hyperwave/common.hpp"

namespace hyperwave::cov {

enum class Kind { white_noise_1d, riesz, mollified };

/// Power-law radial spectral density c * |xi|^(alpha - d) under the
/// convention gamma(x) = int e^{i xi.x} mu(d xi), mu(d xi) = density d xi.
/// White noise (d = alpha = 1) is the constant density 1/(2*pi).
struct SpectralDensity {
  Dimension dim;
  double coeff;       // c
  double exponent;    // alpha - d
  double damping = 0.0;  // extra e^{-damping |xi|^2 / 2} factor (mollified models)

  double alpha() const { return exponent + dim.value(); }
  double operator()(double rho) const;
};

/// Noise covariance model: 1-d white noise (gamma = delta_0), a Riesz kernel
/// gamma(x) = kappa |x|^{-alpha}, or a heat-mollified wrapper around either.
class CovarianceModel {
public:
  static CovarianceModel white1d();
  static CovarianceModel riesz(Dimension dim, double alpha, double kappa = 1.0);
  static CovarianceModel mollified(CovarianceModel base, double eps);

  /// Grammar: "white1d" | "riesz:d=<1|2|3>,alpha=<f>,kappa=<f>", with an
  /// optional ",eps=<f>" wrapper on either.
  static CovarianceModel parse(const std::string& spec);

  Kind kind() const { return kind_; }
  Dimension dim() const { return dim_; }
  double alpha() const { return alpha_; }         // homogeneity degree
  double kappa() const { return kappa_; }
  double eps() const { return eps_; }             // wrapper smoothing scale
  const CovarianceModel& base() const;
  /// The solvability condition "alpha < 2" holds (always true for white1d).
  bool dalang_finite() const;
  std::string describe() const;

  SpectralDensity spectral() const;

private:
  CovarianceModel() : dim_(1) {}
  Kind kind_ = Kind::white_noise_1d;
  Dimension dim_;
  double alpha_ = 1.0;
  double kappa_ = 1.0;
  double eps_ = 0.0;
  std::shared_ptr<const CovarianceModel> base_;
};

/// Pointwise gamma. Singular kernels reject x = 0; white noise returns 0
/// off the origin (delta_0 has no pointwise density).
double gamma_eval(const CovarianceModel& model, const Point& x);

/// Heat-mollified covariance (gamma * p_eps)(x). Exact p_eps for white
/// noise; quadrature split at the singularity for Riesz.
double gamma_mollified(const CovarianceModel& model, double eps, const Point& x);

struct DalangResult {
  bool finite;
  double value;  // only meaningful when finite
};

/// int mu(d xi) / (1 + |xi|^2), classified analytically by the tail exponent
/// before any quadrature (Riesz: finite iff alpha < 2).
DalangResult dalang_integral(const CovarianceModel& model);

/// Same classifier/evaluator for a directly supplied power-law density.
DalangResult dalang_integral(const SpectralDensity& density);

/// |gamma(c x) - c^{-alpha} gamma(x)| / |gamma(c x)| for Riesz models.
double homogeneity_residual(const CovarianceModel& model, double c, const Point& x);

/// K(alpha) = int_0^inf u^{alpha-3} (1 - cos u) du, 0 < alpha < 2.
/// The radial backbone of every spectral moment integral here:
///   int mu(d xi) (1-cos(|xi| a))/|xi|^2 = omega_{d-1} c K(alpha) a^{2-alpha}.
double spectral_cos_integral(double alpha);

/// Surface area of the unit sphere in R^d (2, 2*pi, 4*pi).
double sphere_area(Dimension dim);

}  // namespace hyperwave::cov
