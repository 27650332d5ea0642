#include "hyperwave/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hyperwave/greens.hpp"
#include "hyperwave/quadrature.hpp"

namespace hyperwave::dmt {

JumpChain sample_chain(Dimension dim, double t, const Point& x, std::mt19937_64& rng) {
  if (!(t > 0)) throw std::invalid_argument("sample_chain: t > 0");
  JumpChain chain;
  chain.horizon = t;
  std::exponential_distribution<double> expo(1.0);
  double clock = 0.0;
  Point pos = x;
  while (true) {
    double gap = expo(rng);
    if (clock + gap > t) break;
    clock += gap;
    Point step = greens::sample(dim, gap, rng);
    for (int c = 0; c < dim.value(); ++c) pos[c] += step[c];
    chain.jump_times.push_back(clock);
    chain.positions.push_back(pos);
  }
  return chain;
}

JumpChain sample_chain(Dimension dim, double t, const Point& x, std::uint64_t seed) {
  auto rng = derive_stream(seed, 0);
  return sample_chain(dim, t, x, rng);
}

namespace {

double evaluate_weight(const JumpChain& chain, Dimension dim, const Potential& f,
                       const FreeField& u0, const Point& x) {
  double t = chain.horizon;
  double w = std::exp(t);
  double prev = 0.0;
  for (std::size_t k = 0; k < chain.jump_times.size(); ++k) {
    double fv = f(chain.positions[k]);
    if (!std::isfinite(fv) || std::abs(fv) > 1e6)
      throw Error("dmt::estimate: potential is unbounded on a sampled point");
    w *= (chain.jump_times[k] - prev) * fv;
    prev = chain.jump_times[k];
  }
  const Point& last = chain.positions.empty() ? x : chain.positions.back();
  double u0v = u0(t - prev, last);
  if (!std::isfinite(u0v))
    throw Error("dmt::estimate: free field is not finite on a sampled point");
  return w * u0v;
}

}  // namespace

MonteCarloEstimate estimate(Dimension dim, const Potential& f, const FreeField& u0,
                            double t, const Point& x, std::uint64_t reps,
                            std::uint64_t seed, unsigned threads) {
  if (reps < 2) throw std::invalid_argument("dmt::estimate: reps >= 2");
  auto replica = [&](std::mt19937_64& rng, std::uint64_t) {
    JumpChain chain = sample_chain(dim, t, x, rng);
    return evaluate_weight(chain, dim, f, u0, x);
  };
  return run_replicas(reps, seed, threads, replica);
}

MonteCarloEstimate estimate(Dimension dim, const Potential& f, double t,
                            const Point& x, std::uint64_t reps, std::uint64_t seed,
                            unsigned threads) {
  return estimate(dim, f, [](double, const Point&) { return 1.0; }, t, x, reps,
                  seed, threads);
}

double series_term(const Potential& f, int n, double t, double x) {
  if (n < 0 || n > 2)
    throw SizeGuardError("dmt::series_term: n <= 2 (quadrature cost)");
  if (!(t > 0)) throw std::invalid_argument("series_term: t > 0");
  if (n == 0) return 1.0;
  if (n == 1) {
    auto g = [&](double y) {
      double slack = t - std::abs(y - x);
      return slack > 0 ? 0.5 * slack * f(make_point(y)) : 0.0;
    };
    return quad::integrate_broken(g, x - t, x + t, {x}, 1e-10);
  }
  auto inner = [&](double y1) {
    double slack1 = t - std::abs(y1 - x);
    if (slack1 <= 0) return 0.0;
    auto g = [&](double y2) {
      double slack = slack1 - std::abs(y2 - y1);
      return slack > 0 ? slack * slack / 8.0 * f(make_point(y2)) : 0.0;
    };
    return f(make_point(y1)) *
           quad::integrate_broken(g, y1 - slack1, y1 + slack1, {y1}, 1e-11);
  };
  return quad::integrate_broken(inner, x - t, x + t, {x}, 1e-9);
}

VarianceReport variance_report(Dimension dim, const Potential& f, double t,
                               std::uint64_t reps, std::uint64_t seed,
                               unsigned threads) {
  // replica values and their N(t) strata; strata reduced deterministically
  std::vector<int> jumps(reps);
  auto replica = [&](std::mt19937_64& rng, std::uint64_t i) {
    JumpChain chain = sample_chain(dim, t, make_point(0), rng);
    jumps[i] = static_cast<int>(chain.jump_times.size());
    return evaluate_weight(chain, dim, f,
                           [](double, const Point&) { return 1.0; },
                           make_point(0));
  };
  std::vector<double> vals = run_replica_values(reps, seed, threads, replica);
  VarianceReport report;
  report.total = summarize(vals, seed);
  std::map<int, std::vector<double>> byn;
  for (std::uint64_t i = 0; i < reps; ++i) byn[jumps[i]].push_back(vals[i]);
  double denom = std::abs(report.total.value);
  for (auto& [nj, v] : byn) {
    VarianceStratum s;
    s.jumps = nj;
    s.count = v.size();
    double sum = 0.0;
    for (double y : v) sum += y;
    s.mean_contribution = sum / static_cast<double>(reps);
    double mean_in = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double y : v) ss += (y - mean_in) * (y - mean_in);
    // stderr of this stratum's contribution to the overall mean
    double var_contrib = ss / std::max<std::size_t>(v.size() - 1, 1) *
                         (static_cast<double>(v.size()) / reps) / reps;
    s.stderr_contribution = std::sqrt(var_contrib);
    s.flagged = denom > 0 && s.stderr_contribution > 0.1 * denom;
    report.strata.push_back(s);
  }
  report.flagged =
      denom > 0 ? (report.total.stderr_ > 0.1 * denom) : report.total.stderr_ > 0;
  return report;
}

Potential parse_potential(const std::string& spec, Dimension dim) {
  auto colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "const") {
    double c = std::stod(rest);
    return [c](const Point&) { return c; };
  }
  if (head == "gauss") {
    double a = 1.0, s = 1.0;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("gauss potential: key=value expected");
      std::string k = item.substr(0, eq);
      double v = std::stod(item.substr(eq + 1));
      if (k == "a") a = v;
      else if (k == "s") s = v;
      else throw std::invalid_argument("gauss potential: unknown key " + k);
    }
    int d = dim.value();
    return [a, s, d](const Point& y) {
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) r2 += y[c] * y[c];
      return a * std::exp(-0.5 * r2 / (s * s));
    };
  }
  if (head == "table") {
    if (dim.value() != 1)
      throw UnsupportedError("table potentials: d = 1 grids only");
    std::ifstream in(rest);
    if (!in) throw std::invalid_argument("table potential: cannot open " + rest);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double px, pv;
      if (ls >> px >> pv) rows.emplace_back(px, pv);
    }
    if (rows.size() < 2)
      throw std::invalid_argument("table potential: need at least two rows");
    std::sort(rows.begin(), rows.end());
    return [rows](const Point& y) {
      double x = y[0];
      if (x <= rows.front().first) return 0.0;
      if (x >= rows.back().first) return 0.0;
      auto it = std::lower_bound(rows.begin(), rows.end(),
                                 std::make_pair(x, -1e300));
      auto hi = it == rows.begin() ? it + 1 : it;
      auto lo = hi - 1;
      double w = (x - lo->first) / (hi->first - lo->first);
      return (1.0 - w) * lo->second + w * hi->second;
    };
  }
  throw std::invalid_argument("unknown potential spec '" + spec + "'");
}

}  // namespace hyperwave::dmt
