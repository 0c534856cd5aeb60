#include "kbest/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace kbest {
namespace {

// Neumaier-compensated accumulator: makes the chunk sums independent of
// floating-point association noise inside a chunk.
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

constexpr std::uint64_t kChunk = 8192;

unsigned resolve_threads(unsigned n_threads, std::uint64_t n_chunks) {
  unsigned nt = n_threads != 0
                    ? n_threads
                    : std::max(1u, std::thread::hardware_concurrency());
  if (nt > n_chunks) nt = static_cast<unsigned>(n_chunks);
  return std::max(1u, nt);
}

// Runs fn(chunk_index, first_trial, last_trial) over ceil(n/kChunk) chunks on
// nt threads. Chunks are claimed dynamically, but every consumer of chunk
// results indexes them by chunk id, so scheduling never affects output.
template <class Fn>
void for_each_chunk(std::uint64_t n, unsigned n_threads, const Fn& fn) {
  const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  const unsigned nt = resolve_threads(n_threads, n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t ci = next.fetch_add(1, std::memory_order_relaxed);
      if (ci >= n_chunks) return;
      fn(ci, ci * kChunk, std::min(n, (ci + 1) * kChunk));
    }
  };
  if (nt == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

struct ChunkMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// (sum, sum of squares) of a per-trial statistic, combined in chunk-index
// order: bit-identical for every thread count.
template <class PerTrial>
std::pair<double, double> reduce_moments(std::uint64_t n_trials,
                                         std::uint64_t seed,
                                         unsigned n_threads,
                                         const PerTrial& per_trial) {
  const std::uint64_t n_chunks = (n_trials + kChunk - 1) / kChunk;
  std::vector<ChunkMoments> parts(n_chunks);
  for_each_chunk(n_trials, n_threads,
                 [&](std::uint64_t ci, std::uint64_t beg, std::uint64_t end) {
                   CompensatedSum s, s2;
                   for (std::uint64_t t = beg; t < end; ++t) {
                     RngStream rng(seed, t);
                     const double x = per_trial(t, rng);
                     s.add(x);
                     s2.add(x * x);
                   }
                   parts[ci] = {s.value(), s2.value()};
                 });
  CompensatedSum s, s2;
  for (const ChunkMoments& p : parts) {
    s.add(p.sum);
    s2.add(p.sum_sq);
  }
  return {s.value(), s2.value()};
}

// sample standard error of the mean from raw moments
double std_error_of_mean(double sum, double sum_sq, std::uint64_t n) {
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) /
                        static_cast<double>(n - 1));
  return std::sqrt(var / static_cast<double>(n));
}

double require_integer_shape(double m) {
  const double r = std::round(m);
  if (std::fabs(m - r) > 1e-9 || r < 1.0) {
    throw std::invalid_argument(
        "stale-selection mode models the fading shape as that many complex "
        "Gaussian branches and needs integer m >= 1");
  }
  return r;
}

// Plain trial of the (possibly substituted) system: power, then per user the
// signal gain and the interference gain.
TrialOutcome plain_trial(const SystemParams& q, RngStream& rng) {
  thread_local std::vector<double> z;
  TrialOutcome out;
  out.st_power = sample_st_power(q, rng);
  z.resize(static_cast<std::size_t>(q.n_users));
  for (int i = 0; i < q.n_users; ++i) {
    const double h = rng.gamma_dist(q.m, q.beta);
    const double g = rng.exponential(q.lambda);
    z[static_cast<std::size_t>(i)] = h / (q.p_m * g);
  }
  out.z_rank = kth_largest(z, q.k_rank);
  out.kth_sir = out.st_power * out.z_rank;
  return out;
}

// Stale-selection trial: ranking sees the estimated gains, the metric sees
// the true gains regenerated branch-by-branch through the delta correlation.
TrialOutcome stale_selection_trial(const SystemParams& p, const CsiParams& c,
                                   RngStream& rng) {
  const int branches = static_cast<int>(require_integer_shape(p.m));
  const SystemParams q = effective_params(p, c);

  thread_local std::vector<double> z_est;
  thread_local std::vector<double> z_true;
  z_est.resize(static_cast<std::size_t>(p.n_users));
  z_true.resize(static_cast<std::size_t>(p.n_users));

  TrialOutcome out;
  // transmit power is set from the estimated link, margin included
  out.st_power = sample_st_power(q, rng);

  const double est_comp = std::sqrt(0.5 * c.beta_hat);  // per-component sd
  const double innov_comp = std::sqrt(0.5 * p.beta * (1.0 - c.delta * c.delta));
  const double carry = c.delta * std::sqrt(p.beta / c.beta_hat);
  for (int i = 0; i < p.n_users; ++i) {
    double est_sq = 0.0;
    double true_sq = 0.0;
    for (int j = 0; j < branches; ++j) {
      const double er = est_comp * rng.normal();
      const double ei = est_comp * rng.normal();
      const double tr = carry * er + innov_comp * rng.normal();
      const double ti = carry * ei + innov_comp * rng.normal();
      est_sq += er * er + ei * ei;
      true_sq += tr * tr + ti * ti;
    }
    const double g = rng.exponential(p.lambda);
    z_est[static_cast<std::size_t>(i)] = est_sq / (p.p_m * g);
    z_true[static_cast<std::size_t>(i)] = true_sq / (p.p_m * g);
  }

  thread_local std::vector<double> scratch;
  scratch = z_est;
  const double kth_est = kth_largest(scratch, p.k_rank);
  // lowest user index wins ties, by forward scan
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < z_est.size(); ++i) {
    if (z_est[i] == kth_est) {
      chosen = i;
      break;
    }
  }
  out.z_rank = z_true[chosen];
  out.kth_sir = out.st_power * out.z_rank;
  return out;
}

double per_trial_statistic(const Metric& metric, const TrialOutcome& t) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AvgThroughput>) {
          return std::log1p(t.kth_sir) / std::numbers::ln2;
        } else if constexpr (std::is_same_v<T, EffThroughput>) {
          return std::pow(1.0 + t.kth_sir, -m.a_exp);
        } else if constexpr (std::is_same_v<T, AvgBer>) {
          return std::exp(-m.v * t.kth_sir);
        } else {
          return t.kth_sir <= m.x0 ? 1.0 : 0.0;
        }
      },
      metric);
}

}  // namespace

double kth_largest(std::span<double> v, int k) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  if (k < 1 || k > n) {
    throw std::invalid_argument("kth_largest: need 1 <= k <= v.size()");
  }
  const std::ptrdiff_t target = n - k;  // ascending-order index
  std::ptrdiff_t lo = 0;
  std::ptrdiff_t hi = n - 1;
  for (;;) {
    if (hi <= lo + 1) {
      if (hi == lo + 1 && v[hi] < v[lo]) std::swap(v[lo], v[hi]);
      return v[target];
    }
    // median-of-three pivot into v[lo+1]; sentinels at both ends
    const std::ptrdiff_t mid = lo + (hi - lo) / 2;
    std::swap(v[mid], v[lo + 1]);
    if (v[lo] > v[hi]) std::swap(v[lo], v[hi]);
    if (v[lo + 1] > v[hi]) std::swap(v[lo + 1], v[hi]);
    if (v[lo] > v[lo + 1]) std::swap(v[lo], v[lo + 1]);
    std::ptrdiff_t i = lo + 1;
    std::ptrdiff_t j = hi;
    const double pivot = v[lo + 1];
    for (;;) {
      do {
        ++i;
      } while (v[i] < pivot);
      do {
        --j;
      } while (v[j] > pivot);
      if (j < i) break;
      std::swap(v[i], v[j]);
    }
    v[lo + 1] = v[j];
    v[j] = pivot;
    if (j >= target) hi = j - 1;
    if (j <= target) lo = i;
  }
}

TrialOutcome run_trial(const SystemParams& p,
                       const std::optional<CsiParams>& csi, RngStream& rng,
                       CsiSimMode mode) {
  if (!csi) return plain_trial(p, rng);
  if (mode == CsiSimMode::substitution) {
    return plain_trial(effective_params(p, *csi), rng);
  }
  return stale_selection_trial(p, *csi, rng);
}

EstimateResult estimate(const Metric& metric, const SystemParams& p,
                        const std::optional<CsiParams>& csi,
                        std::uint64_t n_trials, std::uint64_t seed,
                        unsigned n_threads, CsiSimMode mode) {
  p.validate_for_simulation();
  if (csi) csi->validate();
  validate(metric);
  if (n_trials < 100) {
    throw std::invalid_argument("estimate: n_trials must be >= 100");
  }
  if (csi && mode == CsiSimMode::select_estimate_evaluate_truth) {
    require_integer_shape(p.m);  // fail fast, before threads spawn
  }

  const auto [sum, sum_sq] = reduce_moments(
      n_trials, seed, n_threads, [&](std::uint64_t, RngStream& rng) {
        return per_trial_statistic(metric, run_trial(p, csi, rng, mode));
      });

  const double n = static_cast<double>(n_trials);
  const double raw_mean = sum / n;
  const double raw_se = std_error_of_mean(sum, sum_sq, n_trials);

  EstimateResult res;
  res.n_trials = n_trials;
  res.seed = seed;
  res.metric = metric;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AvgThroughput>) {
          res.mean = raw_mean;
          res.std_error = raw_se;
        } else if constexpr (std::is_same_v<T, EffThroughput>) {
          // W = E[(1+SIR)^{-A}], reported value -(1/A) log2 W; the error bar
          // maps through the same transform (delta method)
          res.mean = -std::log2(raw_mean) / m.a_exp;
          res.std_error = raw_se / (m.a_exp * raw_mean * std::numbers::ln2);
        } else if constexpr (std::is_same_v<T, AvgBer>) {
          res.mean = m.c * raw_mean;
          res.std_error = m.c * raw_se;
        } else {
          res.mean = raw_mean;
          res.std_error =
              std::sqrt(std::max(0.0, raw_mean * (1.0 - raw_mean)) / n);
        }
      },
      metric);
  return res;
}

double ks_statistic(const SystemParams& p, std::uint64_t n_samples,
                    std::uint64_t seed, unsigned n_threads) {
  p.validate_for_simulation();
  if (n_samples < 1000) {
    throw std::invalid_argument("ks_statistic: n_samples must be >= 1000");
  }
  const double b = scale_b(p);
  std::vector<double> samples(n_samples);
  for_each_chunk(n_samples, n_threads,
                 [&](std::uint64_t, std::uint64_t beg, std::uint64_t end) {
                   thread_local std::vector<double> z;
                   z.resize(static_cast<std::size_t>(p.n_users));
                   for (std::uint64_t t = beg; t < end; ++t) {
                     RngStream rng(seed, t);
                     for (int i = 0; i < p.n_users; ++i) {
                       const double h = rng.gamma_dist(p.m, p.beta);
                       const double g = rng.exponential(p.lambda);
                       z[static_cast<std::size_t>(i)] = h / (p.p_m * g);
                     }
                     samples[t] = kth_largest(z, p.k_rank) / b;
                   }
                 });
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(n_samples);
  double d = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double f = limiting_cdf(samples[i], p.k_rank);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return d;
}

double interference_outage_rate(const SystemParams& p, const CsiParams& csi,
                                std::uint64_t n_trials, std::uint64_t seed,
                                std::optional<double> r_override,
                                unsigned n_threads) {
  p.validate();
  csi.validate();
  if (n_trials < 100) {
    throw std::invalid_argument(
        "interference_outage_rate: n_trials must be >= 100");
  }
  const double margin = r_override.value_or(power_margin(csi.rho, csi.gamma0));
  if (!(margin > 0.0)) {
    throw std::invalid_argument(
        "interference_outage_rate: power margin must be > 0");
  }

  const double est_comp = std::sqrt(0.5 / csi.eta_hat);  // |h0_hat|^2~Exp(eta_hat)
  const double innov_comp = std::sqrt(0.5 * (1.0 - csi.rho * csi.rho));
  const double rho = csi.rho;
  const auto [sum, unused] = reduce_moments(
      n_trials, seed, n_threads, [&](std::uint64_t, RngStream& rng) {
        const double er = est_comp * rng.normal();
        const double ei = est_comp * rng.normal();
        const double tr = rho * er + innov_comp * rng.normal();
        const double ti = rho * ei + innov_comp * rng.normal();
        const double est_sq = er * er + ei * ei;
        const double true_sq = tr * tr + ti * ti;
        // P = min(p_s, margin*T/est_sq); the violation test P*true_sq > T is
        // evaluated in cross-multiplied form so that the adapted branch at
        // rho == 1 (true_sq bitwise equal to est_sq, margin exactly 1) is
        // exactly violation-free instead of hinging on a divide round trip.
        const bool capped =
            std::isfinite(p.p_s) && p.p_s * est_sq < margin * p.t_intf;
        const bool violated = capped ? p.p_s * true_sq > p.t_intf
                                     : margin * true_sq > est_sq;
        return violated ? 1.0 : 0.0;
      });
  (void)unused;
  return sum / static_cast<double>(n_trials);
}

}  // namespace kbest
