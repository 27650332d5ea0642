#include "hyperwave/chaos.hpp"

#include <cmath>
#include <functional>

#include "hyperwave/greens.hpp"
#include "hyperwave/pathmc.hpp"
#include "hyperwave/quadrature.hpp"
#include "hyperwave/wick.hpp"

namespace hyperwave::chaos {

namespace {

double dist(const Point& a, const Point& b, Dimension dim) {
  double s = 0.0;
  for (int i = 0; i < dim.value(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// d=2 recursion: g_n(x_1..x_n, t, x0) = (1/2pi) int_0^{acosh(t/r)} g_{n-1}(x_2.., t - r cosh v, x_1) dv
double kernel_d2(int n, double t, const Point& x0, std::span<const Point> pts) {
  if (n == 0) return 1.0;
  double r = dist(pts[0], x0, Dimension(2));
  if (!(t > 0) || r >= t) return 0.0;
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  double V = std::acosh(t / r);
  auto rest = pts.subspan(1);
  auto f = [&](double v) {
    return kernel_d2(n - 1, t - r * std::cosh(v), pts[0], rest);
  };
  return quad::gauss32(f, 0.0, V) / (2.0 * pi);
}

}  // namespace

double kernel_eval(Dimension dim, int n, double t, const Point& x0,
                   std::span<const Point> points) {
  if (n < 1 || n > 3)
    throw SizeGuardError("kernel_eval: simplex quadrature guarded to n <= 3");
  if (static_cast<int>(points.size()) != n)
    throw std::invalid_argument("kernel_eval: need exactly n points");
  if (!(t > 0)) return 0.0;
  switch (dim.value()) {
    case 1: {
      double total = 0.0;
      Point prev = x0;
      for (const Point& p : points) {
        total += std::abs(p[0] - prev[0]);
        prev = p;
      }
      double slack = t - total;
      if (slack <= 0.0) return 0.0;
      double v = std::pow(slack, n);
      for (int k = 1; k <= n; ++k) v /= (2.0 * k);
      return v;  // slack^n / (2^n n!)
    }
    case 2:
      return kernel_d2(n, t, x0, points);
    default:
      throw UnsupportedError(
          "kernel_eval: the d=3 kernel is a measure on (R^3)^n; use the "
          "sampling representations");
  }
}

double laplace_kernel_residual(int n, double lambda, std::span<const double> points,
                               double x0) {
  if (n < 1 || n > 2)
    throw std::invalid_argument("laplace_kernel_residual: n <= 2");
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be > 0");
  if (static_cast<int>(points.size()) != n)
    throw std::invalid_argument("need exactly n points");
  std::vector<Point> pts;
  for (double y : points) pts.push_back(make_point(y));
  Point origin = make_point(x0);

  double lhs = quad::laplace_halfline(
      [&](double t) {
        return t > 0 ? kernel_eval(Dimension(1), n, t, origin, pts) : 0.0;
      },
      lambda, 1e-11);

  std::vector<double> gaps;
  double prev = x0;
  for (double y : points) {
    gaps.push_back(y - prev);
    prev = y;
  }
  auto heat_simplex = [&](double t) -> double {
    if (n == 1) return greens::heat_kernel(Dimension(1), t, make_point(gaps[0]));
    return quad::integrate_singular(
        [&](double s) {
          return greens::heat_kernel(Dimension(1), s, make_point(gaps[0])) *
                 greens::heat_kernel(Dimension(1), t - s, make_point(gaps[1]));
        },
        0.0, t, 1e-9);
  };
  double a = 0.5 * lambda * lambda;
  double T = 16.0 * std::log(10.0) / a;
  double rhs = 0.5 * lambda * std::pow(0.5, n) *
               quad::integrate_singular(
                   [&](double t) { return std::exp(-a * t) * heat_simplex(t); },
                   0.0, T, 1e-10);
  return std::abs(lhs - rhs);
}

double mean_chaos2(const cov::CovarianceModel& model, double t) {
  if (!(t >= 0)) throw std::invalid_argument("mean_chaos2: t >= 0");
  if (t == 0.0) return 0.0;
  cov::SpectralDensity s = model.spectral();
  double area = cov::sphere_area(model.dim());
  if (s.damping == 0.0) {
    double alpha = s.alpha();
    if (!(alpha < 2.0))
      throw DivergenceError("mean_chaos2: Dalang condition fails (alpha >= 2)");
    double K = cov::spectral_cos_integral(alpha);
    double inner_coeff = area * s.coeff * K;
    return inner_coeff *
           quad::integrate(
               [&](double u) { return u * std::pow(t - u, 2.0 - alpha); }, 0.0,
               t, 1e-12);
  }
  // mollified model: damped radial integral, no scaling shortcut
  auto inner = [&](double a) {
    double P = std::sqrt(2.0 * 40.0 / s.damping);
    auto f = [&](double rho) {
      double sh = std::sin(0.5 * rho * a);
      return area * std::pow(rho, s.dim.value() - 1.0) * s(rho) * 2.0 * sh * sh /
             (rho * rho);
    };
    return quad::integrate_singular(f, 0.0, 1.0, 1e-11) +
           quad::integrate(f, 1.0, std::max(P, 2.0), 1e-11);
  };
  return quad::integrate([&](double u) { return u * inner(t - u); }, 0.0, t, 1e-9);
}

namespace {

// g_2 in closed form for d=1, with explicit argument order
double g2_d1(double a, double b, double t) {
  double slack = t - std::abs(a) - std::abs(b - a);
  return slack > 0 ? slack * slack / 8.0 : 0.0;
}

double g1_d1(double a, double t) {
  double slack = t - std::abs(a);
  return slack > 0 ? 0.5 * slack : 0.0;
}

// Pair partitions of the 2n slots (first n: kernel at t1, last n: kernel at t2).
// White noise: each pair identifies its two slot variables; integrate the
// reduced-variable product with kink-aware iterated quadrature.
double white_contraction(int n, double t1, double t2) {
  double T = std::max(t1, t2);
  double total = 0.0;
  wick::for_each_pair_partition(n, [&](const wick::PairPartition& part) {
    // map slot -> free variable id via the pairing
    std::vector<int> var(2 * n, -1);
    int nfree = 0;
    for (auto [a, b] : part) {
      var[a] = nfree;
      var[b] = nfree;
      ++nfree;
    }
    if (n == 1) {
      auto f = [&](double y) { return g1_d1(y, t1) * g1_d1(y, t2); };
      total += quad::integrate_broken(f, -T, T, {0.0}, 1e-11);
      return;
    }
    // n = 2: two free variables
    auto integrand = [&](double y0, double y1) {
      double v[2] = {y0, y1};
      double a1 = v[var[0]], b1 = v[var[1]];
      double a2 = v[var[2]], b2 = v[var[3]];
      return g2_d1(a1, b1, t1) * g2_d1(a2, b2, t2);
    };
    auto outer = [&](double y0) {
      return quad::integrate_broken(
          [&](double y1) { return integrand(y0, y1); }, -T, T, {0.0, y0}, 1e-11);
    };
    total += quad::integrate_broken(outer, -T, T, {0.0}, 1e-9);
  });
  return total;
}

// One rung of the mollified pairing: every gamma factor is gamma_{2 eps}.
double mollified_rung(const cov::CovarianceModel& model, int n, double t1,
                      double t2, double eps) {
  double T = std::max(t1, t2);
  // tabulated gamma_{2 eps} on [0, 2T]
  const int table_n = 4096;
  double du = 2.0 * T / (table_n - 1);
  std::vector<double> table(table_n);
  for (int i = 0; i < table_n; ++i)
    table[i] = cov::gamma_mollified(model, 2.0 * eps, make_point(i * du));
  auto gam = [&](double u) {
    double r = std::abs(u) / du;
    int i = static_cast<int>(r);
    if (i >= table_n - 1) return table[table_n - 1];
    double w = r - i;
    return (1.0 - w) * table[i] + w * table[i + 1];
  };

  double total = 0.0;
  wick::for_each_pair_partition(n, [&](const wick::PairPartition& part) {
    if (n == 1) {
      auto outer = [&](double x1) {
        double g1v = g1_d1(x1, t1);
        if (g1v == 0.0) return 0.0;
        return g1v * quad::integrate_broken(
                         [&](double x2) {
                           return gam(x1 - x2) * g1_d1(x2, t2);
                         },
                         -t2, t2, {0.0, x1}, 1e-10);
      };
      total += quad::integrate_broken(outer, -t1, t1, {0.0}, 1e-8);
      return;
    }
    // n = 2: four variables, tensorized Gauss-Legendre panels split at 0
    auto g_slot = [&](const double* x) {
      return g2_d1(x[0], x[1], t1) * g2_d1(x[2], x[3], t2);
    };
    std::vector<double> nodes, weights;
    {
      auto& xs = boost::math::quadrature::gauss<double, 16>::abscissa();
      auto& ws = boost::math::quadrature::gauss<double, 16>::weights();
      auto push_panel = [&](double a, double b) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          if (i == 0 && xs[i] == 0.0) {
            nodes.push_back(mid);
            weights.push_back(ws[i] * half);
            continue;
          }
          nodes.push_back(mid + half * xs[i]);
          weights.push_back(ws[i] * half);
          nodes.push_back(mid - half * xs[i]);
          weights.push_back(ws[i] * half);
        }
      };
      push_panel(-T, 0.0);
      push_panel(0.0, T);
    }
    std::size_t m = nodes.size();
    double acc = 0.0;
    std::vector<double> x(4);
    for (std::size_t i0 = 0; i0 < m; ++i0) {
      x[0] = nodes[i0];
      for (std::size_t i1 = 0; i1 < m; ++i1) {
        x[1] = nodes[i1];
        if (g2_d1(x[0], x[1], t1) == 0.0) continue;
        for (std::size_t i2 = 0; i2 < m; ++i2) {
          x[2] = nodes[i2];
          for (std::size_t i3 = 0; i3 < m; ++i3) {
            x[3] = nodes[i3];
            double gg = g_slot(x.data());
            if (gg == 0.0) continue;
            double pairprod = 1.0;
            for (auto [a, b] : part) pairprod *= gam(x[a] - x[b]);
            acc += weights[i0] * weights[i1] * weights[i2] * weights[i3] *
                   pairprod * gg;
          }
        }
      }
    }
    total += acc;
  });
  return total;
}

}  // namespace

double strat_cov(const cov::CovarianceModel& model, int n, double t1, double t2,
                 const StratCovOptions& opt) {
  if (n < 1 || n > 2)
    throw SizeGuardError("strat_cov: pairing quadrature guarded to n <= 2");
  if (t1 <= 0.0 || t2 <= 0.0) return 0.0;
  if (model.dim().value() != 1)
    throw UnsupportedError("strat_cov: d = 1 only");
  if (model.kind() == cov::Kind::white_noise_1d && !opt.force_ladder)
    return white_contraction(n, t1, t2);
  if (model.kind() == cov::Kind::mollified)
    throw UnsupportedError("strat_cov: apply the ladder to the base model");
  double alpha = model.alpha();
  double v0 = mollified_rung(model, n, t1, t2, opt.eps0);
  double v1 = mollified_rung(model, n, t1, t2, opt.eps0 / 2.0);
  double v2 = mollified_rung(model, n, t1, t2, opt.eps0 / 4.0);
  auto res = quad::richardson_ladder(v0, v1, v2, 1.0 - 0.5 * alpha, 1.0);
  return res.value;
}

double moment_term_sum(const cov::CovarianceModel& model, int p, int n, double t) {
  if (n == 0) return 1.0;
  if (p == 1 && n == 1) return mean_chaos2(model, t);
  if (p == 2 && n == 1) {
    // E[S_0 S_2] + E[S_1 S_1] + E[S_2 S_0]
    return 2.0 * mean_chaos2(model, t) + strat_cov(model, 1, t, t);
  }
  throw UnsupportedError(
      "moment_term_sum: quadrature supports (p,n) in {(1,1),(2,1)}");
}

ChaosCoefficient chaos_coefficient(const cov::CovarianceModel& model, int p, int n,
                                   const std::string& method, std::uint64_t reps,
                                   std::uint64_t seed, unsigned threads) {
  ChaosCoefficient c;
  c.p = p;
  c.n = n;
  c.method = method;
  if (method == "quadrature") {
    c.value = moment_term_sum(model, p, n, 1.0);
    c.error = 1e-9;
  } else if (method == "ilt_mc") {
    if (p != 1)
      throw UnsupportedError("chaos_coefficient: ilt_mc supports p = 1 only");
    auto est = pathmc::mean_coeff_from_ilt(model, n, reps, seed, threads);
    c.value = est.value;
    c.error = est.stderr_;
  } else {
    throw std::invalid_argument("chaos_coefficient: method must be quadrature or ilt_mc");
  }
  if (c.value < 0.0 && c.value > -1e-12) c.value = 0.0;
  if (c.value < 0.0)
    throw Error("chaos_coefficient: negative coefficient (series is positive)");
  return c;
}

}  // namespace hyperwave::chaos
