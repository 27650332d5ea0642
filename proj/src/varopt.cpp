#include "hyperwave/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperwave/quadrature.hpp"
#include "hyperwave/rng.hpp"

namespace hyperwave::varopt {

double GridFunction::norm2() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += weight(i) * values[i] * values[i];
  return std::sqrt(s);
}

void GridFunction::project() {
  values.front() = 0.0;
  values.back() = 0.0;
  double n = norm2();
  if (n == 0.0) throw std::invalid_argument("GridFunction: cannot normalize 0");
  for (auto& v : values) v /= n;
}

GridFunction GridFunction::gaussian(double extent, double h, double center,
                                    double width) {
  GridFunction g;
  g.extent = extent;
  g.h = h;
  int n = static_cast<int>(std::round(extent / h)) + 1;
  g.values.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = g.x(i);
    g.values[i] = std::exp(-0.5 * (x - center) * (x - center) / (width * width));
  }
  g.project();
  return g;
}

Functional::Functional(const cov::CovarianceModel& model, double extent, double h,
                       double ladder_eps0) {
  extent_ = extent;
  h_ = h;
  white_ = model.kind() == cov::Kind::white_noise_1d;
  if (white_) return;
  if (model.kind() != cov::Kind::riesz || model.dim().value() != 1)
    throw UnsupportedError("varopt: white1d or riesz d=1 models");
  int n = static_cast<int>(std::round(extent / h)) + 1;
  if (n > 2048) throw SizeGuardError("varopt: grid capped at 2048 points (d=1)");
  kernel_row_.resize(n);
  // Richardson-extrapolated mollified kernel off the diagonal; the diagonal
  // keeps the finest rung (gamma_eps(0) diverges as eps -> 0).
  double e0 = ladder_eps0;
  double alpha = model.alpha();
  double crossover = 14.0 * std::sqrt(e0);
  for (int k = 0; k < n; ++k) {
    double r = k * h;
    if (k == 0) {
      kernel_row_[k] = cov::gamma_mollified(model, 0.25 * e0, make_point(0.0));
    } else if (r > crossover) {
      kernel_row_[k] = model.kappa() * std::pow(r, -alpha);
    } else {
      double v0 = cov::gamma_mollified(model, e0, make_point(r));
      double v1 = cov::gamma_mollified(model, 0.5 * e0, make_point(r));
      double v2 = cov::gamma_mollified(model, 0.25 * e0, make_point(r));
      kernel_row_[k] =
          quad::richardson_ladder(v0, v1, v2, 1.0, 2.0).value;
    }
  }
}

double Functional::quadratic_form(const GridFunction& g) const {
  int n = g.size();
  if (white_) {
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
      double v2 = g.values[i] * g.values[i];
      q += g.weight(i) * v2 * v2;
    }
    return q;
  }
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    double wi = g.weight(i) * g.values[i] * g.values[i];
    if (wi == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      double wj = g.weight(j) * g.values[j] * g.values[j];
      if (wj == 0.0) continue;
      row += wj * kernel_row_[std::abs(i - j)];
    }
    q += wi * row;
  }
  return q;
}

double Functional::dirichlet(const GridFunction& g) const {
  int n = g.size();
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    double up = i + 1 < n ? g.values[i + 1] : 0.0;
    double dn = i - 1 >= 0 ? g.values[i - 1] : 0.0;
    double der = (up - dn) / (2.0 * h_);
    d += g.weight(i) * der * der;
  }
  return d;
}

double Functional::operator()(const GridFunction& g) const {
  return std::sqrt(quadratic_form(g)) - dirichlet(g);
}

std::vector<double> Functional::gradient(const GridFunction& g) const {
  int n = g.size();
  std::vector<double> grad(n, 0.0);
  double q = quadratic_form(g);
  double rq = std::sqrt(std::max(q, 1e-300));
  if (white_) {
    for (int i = 0; i < n; ++i)
      grad[i] = 2.0 * g.weight(i) * g.values[i] * g.values[i] * g.values[i] / rq;
  } else {
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        double wj = g.weight(j) * g.values[j] * g.values[j];
        if (wj != 0.0) row += wj * kernel_row_[std::abs(i - j)];
      }
      grad[i] = 2.0 * g.weight(i) * g.values[i] * row / rq;
    }
  }
  // Dirichlet part: d/dg_i of sum_p w_p ((g_{p+1}-g_{p-1})/2h)^2
  for (int p = 0; p < n; ++p) {
    double up = p + 1 < n ? g.values[p + 1] : 0.0;
    double dn = p - 1 >= 0 ? g.values[p - 1] : 0.0;
    double der = (up - dn) / (2.0 * h_);
    double c = g.weight(p) * der / h_;
    if (p + 1 < n) grad[p + 1] -= c;
    if (p - 1 >= 0) grad[p - 1] += c;
  }
  return grad;
}

namespace {

double inner_w(const GridFunction& g, const std::vector<double>& a,
               const std::vector<double>& b) {
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weight(i) * a[i] * b[i];
  return s;
}

struct AscentResult {
  double phi;
  GridFunction g;
  std::vector<double> history;
  bool converged;
};

AscentResult ascend(const Functional& F, GridFunction g, int iterations) {
  AscentResult out{F(g), std::move(g), {}, false};
  out.history.push_back(out.phi);
  double step = 1.0;
  int flat = 0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> grad = F.gradient(out.g);
    // Riemannian projection: remove the radial component on the sphere
    double rad = inner_w(out.g, grad, out.g.values);
    for (int i = 0; i < out.g.size(); ++i) grad[i] -= rad * out.g.values[i];
    double gnorm2 = inner_w(out.g, grad, grad);
    if (gnorm2 < 1e-26) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    while (step > 1e-16) {
      GridFunction trial = out.g;
      for (int i = 0; i < trial.size(); ++i) trial.values[i] += step * grad[i];
      trial.project();
      double phi_try = F(trial);
      if (phi_try >= out.phi + 1e-4 * step * gnorm2) {
        double delta = phi_try - out.phi;
        out.g = std::move(trial);
        out.phi = phi_try;
        out.history.push_back(out.phi);
        step = std::min(step * 1.5, 4.0);
        accepted = true;
        flat = delta < 1e-13 * (1.0 + std::abs(out.phi)) ? flat + 1 : 0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || flat >= 5) {
      out.converged = true;
      break;
    }
  }
  // sign normalization: peak positive
  auto mx = std::max_element(out.g.values.begin(), out.g.values.end());
  auto mn = std::min_element(out.g.values.begin(), out.g.values.end());
  if (std::abs(*mn) > std::abs(*mx))
    for (auto& v : out.g.values) v = -v;
  return out;
}

}  // namespace

SolveResult solve_M(const cov::CovarianceModel& model, const SolveOptions& opt) {
  if (!model.dalang_finite())
    throw DivergenceError("solve_M: model is not Dalang-finite");
  Functional F(model, opt.extent, opt.h, opt.ladder_eps0);
  SolveResult best;
  best.M = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    auto rng = derive_stream(opt.seed, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> cdist(-opt.extent / 8, opt.extent / 8);
    std::uniform_real_distribution<double> wdist(0.5, 2.5);
    GridFunction g0 =
        GridFunction::gaussian(opt.extent, opt.h, cdist(rng), wdist(rng));
    AscentResult res = ascend(F, std::move(g0), opt.iterations);
    if (res.phi > best.M) {
      best.M = res.phi;
      best.maximizer = res.g;
      best.history = res.history;
      best.converged = res.converged;
    }
    best.restarts_used = r + 1;
  }
  return best;
}

double gaussian_ansatz_M(const cov::CovarianceModel& model, const SolveOptions& opt) {
  Functional F(model, opt.extent, opt.h, opt.ladder_eps0);
  auto value = [&](double logw) {
    return F(GridFunction::gaussian(opt.extent, opt.h, 0.0, std::exp(logw)));
  };
  // golden-section maximization over the log-width
  double a = std::log(0.2), b = std::log(8.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = value(c), fd = value(d);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = value(d);
    }
  }
  return std::max(fc, fd);
}

double white_noise_M_closed() { return 0.25 * std::cbrt(1.5); }

}  // namespace hyperwave::varopt
