// Hot-path special functions and the closed-form metric evaluations. The
// quadrature-backed metrics dominate sweep latency, so regressions here show
// up directly in CLI run times.

#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

#include "kbest/asymptotics.hpp"
#include "kbest/model.hpp"
#include "kbest/quadrature.hpp"
#include "kbest/specfun.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

kbest::SystemParams params(int n, int k, double ps) {
  return {2.0, 3.0, 2.0, 20.0, 1.0, 0.1, ps, n, k};
}

void bm_ln_gamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::specfun::ln_gamma(x));
    x += 1e-3;
    if (x > 300.0) x = 0.5;
  }
}
BENCHMARK(bm_ln_gamma);

void bm_upper_inc_gamma_reg(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::specfun::upper_inc_gamma_reg(s, x));
    x += 1e-3;
    if (x > 4.0 * s) x = 0.1;
  }
}
BENCHMARK(bm_upper_inc_gamma_reg)->Arg(1)->Arg(3)->Arg(40);

void bm_exp_integral_e1(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::specfun::exp_integral_e1(x));
    x = (x > 20.0) ? 0.01 : x * 1.001;
  }
}
BENCHMARK(bm_exp_integral_e1);

void bm_bessel_k(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::specfun::bessel_k(n, x));
    x = (x > 30.0) ? 0.05 : x * 1.002;
  }
}
BENCHMARK(bm_bessel_k)->Arg(1)->Arg(4);

void bm_avg_throughput(benchmark::State& state) {
  const auto p = params(100, 2, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::avg_throughput(p).value);
  }
}
BENCHMARK(bm_avg_throughput);

void bm_eff_throughput(benchmark::State& state) {
  const auto p = params(100, 2, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::eff_throughput(p, 0.5).value);
  }
}
BENCHMARK(bm_eff_throughput);

void bm_avg_ber_capped(benchmark::State& state) {
  const auto p = params(50, 1, std::pow(10.0, -0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::avg_ber(p, 0.5, 0.5).value);
  }
}
BENCHMARK(bm_avg_ber_capped);

void bm_outage_capped(benchmark::State& state) {
  const auto p = params(30, 2, 0.1);
  const double x0 = std::pow(10.0, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::outage(p, x0).value);
  }
}
BENCHMARK(bm_outage_capped);

void bm_outage_uncapped(benchmark::State& state) {
  const auto p = params(30, 2, kInf);
  const double x0 = std::pow(10.0, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kbest::outage(p, x0).value);
  }
}
BENCHMARK(bm_outage_uncapped);

void bm_quadrature_semi_infinite(benchmark::State& state) {
  for (auto _ : state) {
    const auto r = kbest::integrate(
        [](double u) { return std::exp(-u) / (1.0 + u); }, 0.0, kInf, {});
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(bm_quadrature_semi_infinite);

}  // namespace

BENCHMARK_MAIN();
