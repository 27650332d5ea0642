#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace hyperwave {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Spatial dimension restricted to 1, 2, 3.
class Dimension {
public:
  explicit Dimension(int d) : d_(d) {
    if (d < 1 || d > 3)
      throw std::invalid_argument("Dimension: d must be 1, 2 or 3 (got " +
                                  std::to_string(d) + ")");
  }
  int value() const { return d_; }
  friend bool operator==(Dimension a, Dimension b) { return a.d_ == b.d_; }

private:
  int d_;
};

/// Spatial point; only the first dim() entries are meaningful.
using Point = std::array<double, 3>;

inline Point make_point(double x0, double x1 = 0.0, double x2 = 0.0) {
  return {x0, x1, x2};
}

inline double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double norm(const Point& x, Dimension dim) {
  double s = 0.0;
  for (int i = 0; i < dim.value(); ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation not defined for the given inputs (e.g. pointwise d=3 kernels).
struct UnsupportedError : Error {
  using Error::Error;
};

/// Pointwise evaluation of a distribution at its singular point.
struct SingularityError : Error {
  using Error::Error;
};

/// Combinatorial or cost guard tripped; pass the override flag to proceed.
struct SizeGuardError : Error {
  using Error::Error;
};

/// A quadrature or extrapolation failed to reach the requested tolerance.
struct QuadratureError : Error {
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) +
              ")"),
        achieved_error(achieved) {}
  double achieved_error;
};

/// A quantity classified as infinite (e.g. Dalang-divergent integrals).
struct DivergenceError : Error {
  using Error::Error;
};

/// Input outside a sampled/tabulated range.
struct RangeError : Error {
  using Error::Error;
};

}  // namespace hyperwave
