#pragma once

#include <random>

#include "hyperwave/common.hpp"

namespace hyperwave::greens {

/// Pointwise value of the wave kernel; `at_cone` marks the d=2 light-cone
/// singularity |x| = t, where the value is +infinity.
struct GreenValue {
  double value;
  bool at_cone;
};

/// G(t,x) for d=1,2. The d=3 kernel is a surface measure with no pointwise
/// density; callers get an UnsupportedError pointing at sample()/pairing.
GreenValue eval(Dimension dim, double t, const Point& x);

/// Total mass of G(t,·); equals t in every supported dimension (analytic).
double mass(Dimension dim, double t);

/// Draws a point with density G(t,·)/t.
///   d=1: uniform on [-t,t]
///   d=2: exact inverse-CDF radius r = t*sqrt(2u - u^2), uniform angle
///   d=3: uniform on the sphere of radius t (normalized Gaussian triple)
Point sample(Dimension dim, double t, std::mt19937_64& rng);

/// Standard heat kernel (2*pi*t)^{-d/2} exp(-|x|^2 / 2t).
double heat_kernel(Dimension dim, double t, const Point& x);

/// Spatial Fourier transform of G(t,·): sin(k t)/k, continuously extended
/// by t at k = 0.
double fourier(double t, double k);

/// Residual of the Laplace wave–heat bridge
///   int_0^inf e^{-lambda t} G(t,x) dt = (1/2) int_0^inf e^{-lambda^2 t/2} p(t,x) dt,
/// both sides by quadrature. For d=1 the check runs in real space; for
/// d=2,3 it is performed on the Fourier side at k = |x|.
double laplace_residual(Dimension dim, double lambda, const Point& x);

/// Fourier-side residual |int_0^inf e^{-lambda t} sin(kt)/k dt - 1/(lambda^2+k^2)|.
double laplace_fourier_residual(double lambda, double k);

}  // namespace hyperwave::greens
