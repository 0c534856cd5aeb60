// Simulation throughput: per-trial cost dominates every CLI simulate /
// compare invocation (a figure row is 1e5..1e6 trials x N user draws).

#include <benchmark/benchmark.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "kbest/model.hpp"
#include "kbest/montecarlo.hpp"
#include "kbest/rng.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

kbest::SystemParams params(int n, int k, double ps) {
  return {2.0, 3.0, 2.0, 20.0, 1.0, 0.1, ps, n, k};
}

void bm_rng_uniform(benchmark::State& state) {
  kbest::RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.uniform01());
  }
}
BENCHMARK(bm_rng_uniform);

void bm_rng_gamma(benchmark::State& state) {
  kbest::RngStream rng(1, 0);
  const double shape = static_cast<double>(state.range(0)) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.gamma_dist(shape, 3.0));
  }
}
BENCHMARK(bm_rng_gamma)->Arg(1)->Arg(4)->Arg(9);  // shapes 0.5, 2, 4.5

void bm_kth_largest(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  kbest::RngStream rng(7, 0);
  std::vector<double> scratch(n);
  std::vector<double> pristine(n);
  for (double& v : pristine) v = rng.uniform01();
  for (auto _ : state) {
    scratch = pristine;
    benchmark::DoNotOptimize(
        kbest::kth_largest({scratch.data(), scratch.size()}, 3));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_kth_largest)->Arg(16)->Arg(64)->Arg(256);

void bm_run_trial(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)), 2, 10.0);
  kbest::RngStream rng(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kbest::run_trial(p, std::nullopt, rng).kth_sir);
  }
  state.SetItemsProcessed(state.iterations() * p.n_users);
}
BENCHMARK(bm_run_trial)->Arg(10)->Arg(40)->Arg(200);

void bm_run_trial_stale_selection(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)), 2, 10.0);
  const kbest::CsiParams csi{0.9, 0.9, 0.1, 20.0, 3.0};
  kbest::RngStream rng(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kbest::run_trial(p, csi, rng,
                         kbest::CsiSimMode::select_estimate_evaluate_truth)
            .kth_sir);
  }
  state.SetItemsProcessed(state.iterations() * p.n_users);
}
BENCHMARK(bm_run_trial_stale_selection)->Arg(40);

void bm_estimate_avg_throughput(benchmark::State& state) {
  const auto p = params(40, 1, kInf);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto r = kbest::estimate(kbest::AvgThroughput{}, p, std::nullopt,
                                   20000, seed++, 1);
    benchmark::DoNotOptimize(r.mean);
  }
  state.SetItemsProcessed(state.iterations() * 20000 * p.n_users);
}
BENCHMARK(bm_estimate_avg_throughput)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
