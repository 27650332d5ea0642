#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hyperwave/rng.hpp"

namespace hyperwave {

/// The universal stochastic result record.
struct MonteCarloEstimate {
  double value = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(reps)
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::string bias_note;
};

/// Per-replica values of `f`; replica i always sees the stream derived from
/// (seed, i), so the result is identical for any `threads` value.
template <class F>
std::vector<double> run_replica_values(std::uint64_t reps, std::uint64_t seed,
                                       unsigned threads, F&& f) {
  std::vector<double> vals(reps);
  if (threads <= 1 || reps < 2 * threads) {
    for (std::uint64_t i = 0; i < reps; ++i) {
      auto rng = derive_stream(seed, i);
      vals[i] = f(rng, i);
    }
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (reps + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(reps, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::uint64_t i = lo; i < hi; ++i) {
          auto rng = derive_stream(seed, i);
          vals[i] = f(rng, i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return vals;
}

/// Fixed-order mean/stderr reduction of per-replica values.
inline MonteCarloEstimate summarize(const std::vector<double>& vals,
                                    std::uint64_t seed) {
  MonteCarloEstimate est;
  est.reps = vals.size();
  est.seed = seed;
  if (vals.empty()) return est;
  double sum = 0.0;
  for (double v : vals) sum += v;
  double mean = sum / static_cast<double>(vals.size());
  double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  double sd = vals.size() > 1 ? std::sqrt(ss / static_cast<double>(vals.size() - 1)) : 0.0;
  est.value = mean;
  est.stderr_ = sd / std::sqrt(static_cast<double>(vals.size()));
  return est;
}

/// Runs `reps` independent replicas of `f` and reduces them deterministically.
template <class F>
MonteCarloEstimate run_replicas(std::uint64_t reps, std::uint64_t seed,
                                unsigned threads, F&& f) {
  return summarize(run_replica_values(reps, seed, threads, std::forward<F>(f)), seed);
}

}  // namespace hyperwave
