#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "kbest/model.hpp"

// Exact-model Monte Carlo engine. Every trial draws the full system of
// model.hpp (no asymptotic shortcut), so estimates here are the ground truth
// the asymptotic formulas are validated against.
//
// Determinism contract: trial t uses RngStream(seed, t), and reductions run
// in fixed chunk order with compensated summation — results are bit-identical
// for any worker-thread count, including 1.

namespace kbest {

struct TrialOutcome {
  double st_power;  // realized transmit power P
  double kth_sir;   // P * Z_(N-k+1)
  double z_rank;    // Z_(N-k+1)
};

struct EstimateResult {
  double mean;
  double std_error;
  std::uint64_t n_trials;
  std::uint64_t seed;
  Metric metric;
};

// How imperfect CSI enters a trial. `substitution` mirrors the analysis:
// selection and metric evaluation both see the estimated channels (beta_hat,
// eta_hat, deflated cap r_I*T). `select_estimate_evaluate_truth` goes beyond
// that: users are ranked on stale estimates while the metric is scored on the
// true channels reconstructed through the correlation model with coefficient
// delta. The second mode is exploratory and excluded from acceptance checks.
enum class CsiSimMode { substitution, select_estimate_evaluate_truth };

// k-th largest element of v (k = 1 is the maximum), by iterative quickselect
// with a median-of-three pivot; expected linear time, deterministic, reorders
// v in place. The returned order statistic is unaffected by ties; where an
// index is needed (stale-selection mode), ties break toward the lowest user
// index.
double kth_largest(std::span<double> v, int k);

// One system draw. Draw order (power first, then per-user signal and
// interference gains) is part of the determinism contract.
TrialOutcome run_trial(const SystemParams& p,
                       const std::optional<CsiParams>& csi, RngStream& rng,
                       CsiSimMode mode = CsiSimMode::substitution);

// Monte Carlo estimate of a metric over n_trials >= 100 independent trials.
//   AvgThroughput: mean of log2(1 + PZ), standard error of the mean.
//   EffThroughput: -(1/A) log2 W with W the mean of (1+PZ)^{-A}; std_error
//                  by the delta method, se(W) / (A * W * ln 2).
//   AvgBer:        c * mean of exp(-v*PZ).
//   Outage:        fraction of trials with PZ <= x0, binomial std_error.
// n_threads = 0 picks the hardware concurrency.
EstimateResult estimate(const Metric& metric, const SystemParams& p,
                        const std::optional<CsiParams>& csi,
                        std::uint64_t n_trials, std::uint64_t seed,
                        unsigned n_threads = 0,
                        CsiSimMode mode = CsiSimMode::substitution);

// Convergence diagnostic for the limiting law: draws n_samples >= 1000 of
// Z_(N-k+1)/b (pure order statistic, no power adaptation) and returns the
// Kolmogorov-Smirnov sup-distance to limiting_cdf(., k_rank).
double ks_statistic(const SystemParams& p, std::uint64_t n_samples,
                    std::uint64_t seed, unsigned n_threads = 0);

// Fraction of trials in which the realized interference P*|h0|^2 exceeds the
// cap T under the outdated-CSI correlation model. r_override substitutes the
// power margin (diagnostics; the default is power_margin(rho, gamma0)).
double interference_outage_rate(const SystemParams& p, const CsiParams& csi,
                                std::uint64_t n_trials, std::uint64_t seed,
                                std::optional<double> r_override = std::nullopt,
                                unsigned n_threads = 0);

}  // namespace kbest
