#include "hyperwave/pathmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "hyperwave/quadrature.hpp"

namespace hyperwave::pathmc {

BrownianPath bm_simulate(Dimension dim, double t, int steps, std::mt19937_64& rng,
                         const Point& start) {
  if (steps < 2) throw std::invalid_argument("bm_simulate: steps >= 2");
  if (!(t > 0)) throw std::invalid_argument("bm_simulate: t > 0");
  BrownianPath p{dim, t, t / steps, start, {}};
  int d = dim.value();
  p.pts.resize(static_cast<std::size_t>(steps + 1) * d);
  std::normal_distribution<double> g(0.0, std::sqrt(p.dt));
  for (int c = 0; c < d; ++c) p.pts[c] = start[c];
  for (int i = 1; i <= steps; ++i)
    for (int c = 0; c < d; ++c)
      p.pts[i * d + c] = p.pts[(i - 1) * d + c] + g(rng);
  return p;
}

BrownianPath bm_simulate(Dimension dim, double t, int steps, std::uint64_t seed,
                         const Point& start) {
  auto rng = derive_stream(seed, 0);
  return bm_simulate(dim, t, steps, rng, start);
}

namespace {

// Tabulated radial kernel gamma_eps(|u|); cutoff > 0 marks a compactly
// supported (numerically) kernel. Beyond the table a Riesz kernel falls back
// to the exact power law.
struct Kernel1D {
  double du = 0.0;
  double cutoff = 0.0;
  std::vector<double> table;
  double tail_kappa = 0.0;
  double tail_alpha = 0.0;

  double operator()(double u) const {
    u = std::abs(u);
    if (cutoff > 0.0 && u >= cutoff) return 0.0;
    double r = u / du;
    auto i = static_cast<std::size_t>(r);
    if (i + 1 >= table.size())
      return tail_kappa > 0.0 ? tail_kappa * std::pow(u, -tail_alpha) : 0.0;
    double w = r - static_cast<double>(i);
    return (1.0 - w) * table[i] + w * table[i + 1];
  }
};

Kernel1D build_kernel(const cov::CovarianceModel& model, double eps, double range) {
  Kernel1D k;
  k.du = std::sqrt(eps) / 64.0;
  if (model.kind() == cov::Kind::white_noise_1d) {
    k.cutoff = 9.5 * std::sqrt(eps);
    auto n = static_cast<std::size_t>(k.cutoff / k.du) + 2;
    k.table.resize(n);
    double norm = 1.0 / std::sqrt(2.0 * pi * eps);
    for (std::size_t i = 0; i < n; ++i) {
      double u = static_cast<double>(i) * k.du;
      k.table[i] = norm * std::exp(-0.5 * u * u / eps);
    }
    return k;
  }
  if (model.kind() != cov::Kind::riesz || model.dim().value() != 1)
    throw UnsupportedError("ILT kernels: white1d or riesz d=1");
  auto n = static_cast<std::size_t>(range / k.du) + 2;
  // gamma_eps is smooth on the sqrt(eps) scale near 0 and within O(eps) of
  // the power law once u >> sqrt(eps); sample the crossover densely and
  // switch to the exact power law past 12 sqrt(eps).
  double crossover = 12.0 * std::sqrt(eps);
  k.table.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = static_cast<double>(i) * k.du;
    if (u <= crossover)
      k.table[i] = cov::gamma_mollified(model, eps, make_point(u));
    else
      k.table[i] = model.kappa() * std::pow(u, -model.alpha());
  }
  k.tail_kappa = model.kappa();
  k.tail_alpha = model.alpha();
  return k;
}

// Occupied-bin occupation measure: mass (time spent) and occupation-weighted
// mean position per bin, sorted by bin index.
struct Occupation {
  std::vector<double> mass;
  std::vector<double> pos;
  double total = 0.0;
};

Occupation occupation_1d(const BrownianPath& path, int stride, double bin_width) {
  Occupation occ;
  int steps = path.steps();
  double dt = path.dt * stride;
  std::unordered_map<long long, std::pair<double, double>> bins;
  bins.reserve(static_cast<std::size_t>(steps / std::max(stride, 1)) / 4 + 8);
  for (int i = 0; i < steps; i += stride) {
    double x = path.pts[i];
    auto b = static_cast<long long>(std::floor(x / bin_width));
    auto& slot = bins[b];
    slot.first += dt;
    slot.second += dt * x;
  }
  std::vector<long long> keys;
  keys.reserve(bins.size());
  for (auto& [b, s] : bins) keys.push_back(b);
  std::sort(keys.begin(), keys.end());
  occ.mass.reserve(keys.size());
  occ.pos.reserve(keys.size());
  for (long long b : keys) {
    auto& s = bins[b];
    occ.mass.push_back(s.first);
    occ.pos.push_back(s.second / s.first);
    occ.total += s.first;
  }
  return occ;
}

double ilt_bilinear(const Occupation& a, const Occupation& b, const Kernel1D& ker) {
  double total = 0.0;
  std::size_t lo = 0;
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    double xi = a.pos[i], mi = a.mass[i];
    if (ker.cutoff > 0.0) {
      while (lo < b.mass.size() && b.pos[lo] < xi - ker.cutoff) ++lo;
      for (std::size_t j = lo; j < b.mass.size() && b.pos[j] <= xi + ker.cutoff; ++j)
        total += mi * b.mass[j] * ker(xi - b.pos[j]);
    } else {
      for (std::size_t j = 0; j < b.mass.size(); ++j)
        total += mi * b.mass[j] * ker(xi - b.pos[j]);
    }
  }
  return total;
}

double path_range(const BrownianPath& p1, const BrownianPath& p2) {
  auto [lo1, hi1] = std::minmax_element(p1.pts.begin(), p1.pts.end());
  auto [lo2, hi2] = std::minmax_element(p2.pts.begin(), p2.pts.end());
  return std::max(*hi1, *hi2) - std::min(*lo1, *lo2) + 1.0;
}

double ilt_pair_sum(const BrownianPath& p1, const BrownianPath& p2,
                    const cov::CovarianceModel& model, double eps, bool same) {
  // d >= 2 fallback: O(N1 N2) over time points with a radial kernel table
  Dimension dim = p1.dim;
  int d = dim.value();
  double rmax = 0.0;
  for (std::size_t i = 0; i + d <= p1.pts.size(); i += d)
    for (int c = 0; c < d; ++c) rmax = std::max(rmax, std::abs(p1.pts[i + c]));
  for (std::size_t i = 0; i + d <= p2.pts.size(); i += d)
    for (int c = 0; c < d; ++c) rmax = std::max(rmax, std::abs(p2.pts[i + c]));
  double range = 2.0 * rmax * std::sqrt(static_cast<double>(d)) + 1.0;
  double du = std::sqrt(eps) / 32.0;
  auto n = static_cast<std::size_t>(range / du) + 2;
  std::vector<double> table(n);
  for (std::size_t i = 0; i < n; ++i)
    table[i] = cov::gamma_mollified(model, eps, make_point(static_cast<double>(i) * du));
  auto ker = [&](double r) {
    double x = r / du;
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= n) return table.back();
    double w = x - static_cast<double>(i);
    return (1.0 - w) * table[i] + w * table[i + 1];
  };
  int n1 = p1.steps(), n2 = p2.steps();
  if (static_cast<long long>(n1) * n2 > 20'000'000LL)
    throw SizeGuardError("ILT pair sum: steps product too large for d >= 2");
  double total = 0.0;
  for (int i = 0; i < n1; ++i) {
    Point a = p1.point(i);
    for (int j = same ? i : 0; j < n2; ++j) {
      Point b = p2.point(j);
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) r2 += (a[c] - b[c]) * (a[c] - b[c]);
      double v = ker(std::sqrt(r2));
      total += (same && j > i) ? 2.0 * v : v;
    }
  }
  return total * p1.dt * p2.dt;
}

const cov::CovarianceModel& ladder_base(const cov::CovarianceModel& model) {
  if (model.kind() == cov::Kind::mollified)
    throw UnsupportedError("ILT ladder: pass the unmollified base model");
  return model;
}

}  // namespace

double self_ilt(const BrownianPath& path, const cov::CovarianceModel& model,
                double eps) {
  if (!(eps > 0)) throw std::invalid_argument("self_ilt: eps > 0");
  if (path.dim.value() == 1) {
    Kernel1D ker = build_kernel(model, eps, path_range(path, path));
    Occupation occ = occupation_1d(path, 1, 0.5 * eps);
    return ilt_bilinear(occ, occ, ker);
  }
  return ilt_pair_sum(path, path, model, eps, true);
}

double mutual_ilt(const BrownianPath& p1, const BrownianPath& p2,
                  const cov::CovarianceModel& model, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("mutual_ilt: eps > 0");
  if (!(p1.dim == p2.dim)) throw std::invalid_argument("mutual_ilt: dim mismatch");
  if (p1.dim.value() == 1) {
    Kernel1D ker = build_kernel(model, eps, path_range(p1, p2));
    Occupation o1 = occupation_1d(p1, 1, 0.5 * eps);
    Occupation o2 = occupation_1d(p2, 1, 0.5 * eps);
    return ilt_bilinear(o1, o2, ker);
  }
  return ilt_pair_sum(p1, p2, model, eps, false);
}

namespace {

struct LadderPlan {
  std::array<double, 3> eps;
  std::array<int, 3> stride;  // subsampling factors 16, 4, 1
  int steps_fine;
  double p1, p2;  // Richardson exponents
};

LadderPlan make_plan(const cov::CovarianceModel& model, double t, double eps0) {
  LadderPlan plan;
  plan.eps = {eps0, 0.5 * eps0, 0.25 * eps0};
  plan.stride = {16, 4, 1};
  double dt_fine = plan.eps[2] * plan.eps[2];  // dt tied to eps^2
  int raw = static_cast<int>(std::ceil(t / (16.0 * dt_fine))) * 16;
  if (raw > 400000)
    throw SizeGuardError("ILT ladder: eps0 too small for this horizon");
  plan.steps_fine = raw;
  plan.p1 = 1.0 - 0.5 * model.alpha();
  plan.p2 = 1.0;
  return plan;
}

}  // namespace

MonteCarloEstimate ilt_moment_mc(const cov::CovarianceModel& model, int n, double t,
                                 std::uint64_t reps, std::uint64_t seed,
                                 const IltOptions& opt) {
  if (n < 1 || n > 4)
    throw SizeGuardError("ilt_moment_mc: n <= 4 (heavy tails)");
  if (!(t > 0)) throw std::invalid_argument("ilt_moment_mc: t > 0");
  const cov::CovarianceModel& base = ladder_base(model);
  if (base.dim().value() != 1)
    throw UnsupportedError(
        "ilt_moment_mc: ladder estimation runs on d=1 models; use self_ilt "
        "directly for d >= 2 one-off evaluations");
  LadderPlan plan = make_plan(base, t, opt.eps0);
  double range = 16.0 * std::sqrt(t) + 2.0;
  std::array<Kernel1D, 3> kernels;
  for (int k = 0; k < 3; ++k) kernels[k] = build_kernel(base, plan.eps[k], range);

  auto replica = [&](std::mt19937_64& rng, std::uint64_t) {
    BrownianPath path = bm_simulate(Dimension(1), t, plan.steps_fine, rng);
    std::array<double, 3> v{};
    for (int k = 0; k < 3; ++k) {
      Occupation occ = occupation_1d(path, plan.stride[k], 0.5 * plan.eps[k]);
      v[k] = ilt_bilinear(occ, occ, kernels[k]);
    }
    return quad::richardson_ladder(v[0], v[1], v[2], plan.p1, plan.p2).value;
  };
  std::vector<double> lambda_vals =
      run_replica_values(reps, seed, opt.threads, replica);
  std::vector<double> powered(lambda_vals.size());
  for (std::size_t i = 0; i < lambda_vals.size(); ++i)
    powered[i] = std::pow(lambda_vals[i], n);
  MonteCarloEstimate est = summarize(powered, seed);

  // heavy-tail guard: share of the top 1% of contributions
  std::vector<double> sorted = powered;
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) {
    return std::abs(a) > std::abs(b);
  });
  std::size_t top = std::max<std::size_t>(1, sorted.size() / 100);
  double top_sum = 0.0, all_sum = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    all_sum += std::abs(sorted[i]);
    if (i < top) top_sum += std::abs(sorted[i]);
  }
  double share = all_sum > 0 ? top_sum / all_sum : 0.0;
  std::ostringstream note;
  note << "eps_ladder={" << plan.eps[0] << "," << plan.eps[1] << "," << plan.eps[2]
       << "}, dt=eps^2 (fine " << t / plan.steps_fine << "), richardson_exponents=("
       << plan.p1 << ",1)";
  if (share > 0.5)
    note << "; UNRELIABLE: top-1% replicas carry " << 100.0 * share
         << "% of the average";
  est.bias_note = note.str();
  return est;
}

MonteCarloEstimate strat_moment_laplace_mc(const cov::CovarianceModel& model, int n,
                                           double lambda, std::uint64_t reps,
                                           std::uint64_t seed, const IltOptions& opt) {
  if (n < 1) throw std::invalid_argument("strat_moment_laplace_mc: n >= 1");
  if (!(lambda > 0)) throw std::invalid_argument("lambda > 0 required");
  if (n % 2 == 1) {
    MonteCarloEstimate zero;
    zero.reps = reps;
    zero.seed = seed;
    zero.bias_note = "odd chaos order: mean vanishes identically";
    return zero;
  }
  int m = n / 2;
  MonteCarloEstimate base = ilt_moment_mc(model, m, 1.0, reps, seed, opt);
  double alpha = model.alpha();
  double q = (4.0 - alpha) * n / 4.0;
  double a = 0.5 * lambda * lambda;
  double T = 16.0 * std::log(10.0) / a;
  double time_integral = quad::integrate(
      [&](double t) { return std::exp(-a * t) * std::pow(t, q); }, 0.0, T, 1e-12);
  double factor = 0.5 * lambda * std::pow(0.5, n) * time_integral;
  for (int k = 1; k <= m; ++k) factor /= 2.0 * k;  // 1/(2^m m!)
  MonteCarloEstimate est;
  est.value = factor * base.value;
  est.stderr_ = factor * base.stderr_;
  est.reps = reps;
  est.seed = seed;
  est.bias_note = base.bias_note;
  return est;
}

MonteCarloEstimate mean_coeff_from_ilt(const cov::CovarianceModel& model, int n,
                                       std::uint64_t reps, std::uint64_t seed,
                                       unsigned threads, double eps0) {
  if (n < 0 || n > 3) throw SizeGuardError("mean_coeff_from_ilt: n <= 3");
  if (n == 0) {
    MonteCarloEstimate one;
    one.value = 1.0;
    one.reps = reps;
    one.seed = seed;
    one.bias_note = "order-0 term is exactly 1";
    return one;
  }
  IltOptions opt;
  opt.eps0 = eps0;
  opt.threads = threads;
  MonteCarloEstimate base = ilt_moment_mc(model, n, 1.0, reps, seed, opt);
  double alpha = model.alpha();
  double e = 0.5 * (4.0 - alpha) * n;
  double factor = std::pow(0.125, n) * std::exp2(e) * std::tgamma(e + 1.0) /
                  std::tgamma(2.0 * e + 1.0);
  for (int k = 1; k <= n; ++k) factor /= k;
  MonteCarloEstimate est;
  est.value = factor * base.value;
  est.stderr_ = factor * base.stderr_;
  est.reps = reps;
  est.seed = seed;
  est.bias_note = base.bias_note;
  return est;
}

NoiseField1D NoiseField1D::sample(double y_min, double y_max, double dy,
                                  std::mt19937_64& rng) {
  if (!(dy > 0) || !(y_max > y_min))
    throw std::invalid_argument("NoiseField1D: bad grid");
  NoiseField1D f;
  f.y0 = y_min;
  f.dy = dy;
  auto n = static_cast<std::size_t>(std::ceil((y_max - y_min) / dy));
  f.increments.resize(n);
  std::normal_distribution<double> g(0.0, std::sqrt(dy));
  for (auto& v : f.increments) v = g(rng);
  return f;
}

NoiseField1D NoiseField1D::zeros(double y_min, double y_max, double dy) {
  NoiseField1D f;
  f.y0 = y_min;
  f.dy = dy;
  f.increments.assign(static_cast<std::size_t>(std::ceil((y_max - y_min) / dy)), 0.0);
  return f;
}

double quenched_noise_integral(const BrownianPath& path, const NoiseField1D& noise) {
  if (path.dim.value() != 1)
    throw UnsupportedError("quenched_noise_integral: d = 1 only");
  double total = 0.0;
  int steps = path.steps();
  for (int i = 0; i < steps; ++i) {
    double x = path.pts[i];
    double r = (x - noise.y0) / noise.dy;
    if (r < 0.0 || r >= static_cast<double>(noise.increments.size()))
      throw RangeError("quenched_noise_integral: path left the noise grid");
    total += path.dt * noise.increments[static_cast<std::size_t>(r)] / noise.dy;
  }
  return total;
}

}  // namespace hyperwave::pathmc
