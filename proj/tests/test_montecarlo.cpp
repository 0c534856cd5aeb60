#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kbest/asymptotics.hpp"
#include "kbest/model.hpp"
#include "kbest/montecarlo.hpp"
#include "kbest/quadrature.hpp"

using namespace kbest;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemParams base(int n, int k, double ps) {
  return {2.0, 3.0, 2.0, 20.0, 1.0, 0.1, ps, n, k};
}

bool same_bits(double a, double b) {
  std::uint64_t ua, ub;
  std::memcpy(&ua, &a, sizeof a);
  std::memcpy(&ub, &b, sizeof b);
  return ua == ub;
}

double ks_against_limiting(std::vector<double> samples, int k) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = limiting_cdf(samples[i], k);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

}  // namespace

TEST_CASE("selection: fixed multiset, extremes, and agreement with full sort") {
  std::vector<double> fixed{5.0, 1.0, 4.0, 2.0, 3.0};
  CHECK(kth_largest(fixed, 2) == 4.0);
  fixed = {5.0, 1.0, 4.0, 2.0, 3.0};
  CHECK(kth_largest(fixed, 1) == 5.0);
  fixed = {5.0, 1.0, 4.0, 2.0, 3.0};
  CHECK(kth_largest(fixed, 5) == 1.0);

  std::vector<double> bad{1.0, 2.0};
  CHECK_THROWS_AS(kth_largest(bad, 0), std::invalid_argument);
  CHECK_THROWS_AS(kth_largest(bad, 3), std::invalid_argument);

  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> size_dist(2, 64);
  std::uniform_int_distribution<int> value_dist(0, 9);  // ties on purpose
  for (int rep = 0; rep < 10000; ++rep) {
    const int n = size_dist(gen);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = value_dist(gen);
    const int k = std::uniform_int_distribution<int>(1, n)(gen);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    CAPTURE(rep);
    CHECK(kth_largest(v, k) == sorted[static_cast<std::size_t>(k - 1)]);
  }
}

TEST_CASE("trials: single-user identity, field consistency, determinism") {
  SystemParams p = base(1, 1, 10.0);
  RngStream rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    const TrialOutcome t = run_trial(p, std::nullopt, rng);
    CHECK(same_bits(t.kth_sir, t.st_power * t.z_rank));
    CHECK(t.st_power <= 10.0);
    CHECK(t.st_power > 0.0);
    CHECK(t.z_rank > 0.0);
  }

  // identical (seed, stream) keys reproduce the outcome bit for bit
  SystemParams q = base(40, 3, 10.0);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    RngStream a(99, trial), b(99, trial);
    const TrialOutcome ta = run_trial(q, std::nullopt, a);
    const TrialOutcome tb = run_trial(q, std::nullopt, b);
    CHECK(same_bits(ta.st_power, tb.st_power));
    CHECK(same_bits(ta.kth_sir, tb.kth_sir));
    CHECK(same_bits(ta.z_rank, tb.z_rank));
  }
}

TEST_CASE("trials: rank ordering holds trial-by-trial on shared streams") {
  // power is drawn first and gains are drawn per user, so equal (seed, trial)
  // keys give k=1 and k=2 the same system realization
  SystemParams p1 = base(40, 1, 10.0);
  SystemParams p2 = base(40, 2, 10.0);
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    RngStream a(5, trial), b(5, trial);
    const TrialOutcome t1 = run_trial(p1, std::nullopt, a);
    const TrialOutcome t2 = run_trial(p2, std::nullopt, b);
    CHECK(same_bits(t1.st_power, t2.st_power));
    CHECK(t1.z_rank >= t2.z_rank);
    CHECK(t1.kth_sir >= t2.kth_sir);
  }
}

TEST_CASE("estimate: single-user mean against a nested-quadrature oracle") {
  const SystemParams p = base(1, 1, 10.0);
  const double w = p.eta * p.t_intf / p.p_s;  // 0.2
  const double atom = -std::expm1(-w);

  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  const QuadResult outer = integrate(
      [&](double z) {
        const QuadResult inner = integrate(
            [&](double u) {
              return std::log1p(p.eta * p.t_intf / u * z) * std::exp(-u);
            },
            w, kInf, spec);
        const double bits =
            inner.value + atom * std::log1p(p.p_s * z);
        return sir_pdf(z, p) * bits / std::numbers::ln2;
      },
      0.0, kInf, spec);
  REQUIRE(outer.ok());
  CHECK(std::fabs(outer.value - 5.682589599748264) <= 1e-7);

  const EstimateResult mc =
      estimate(AvgThroughput{}, p, std::nullopt, 200000, 31);
  CHECK(std::fabs(mc.mean - outer.value) <= 3.0 * mc.std_error);
}

TEST_CASE("estimate: reproducibility and thread-count independence") {
  const SystemParams p = base(40, 2, 10.0);
  const EstimateResult a =
      estimate(AvgThroughput{}, p, std::nullopt, 30000, 17, 1);
  const EstimateResult b =
      estimate(AvgThroughput{}, p, std::nullopt, 30000, 17, 1);
  CHECK(same_bits(a.mean, b.mean));
  CHECK(same_bits(a.std_error, b.std_error));

  for (unsigned threads : {2u, 3u, 8u}) {
    const EstimateResult c =
        estimate(AvgThroughput{}, p, std::nullopt, 30000, 17, threads);
    CAPTURE(threads);
    CHECK(same_bits(a.mean, c.mean));
    CHECK(same_bits(a.std_error, c.std_error));
  }

  const EstimateResult other =
      estimate(AvgThroughput{}, p, std::nullopt, 30000, 18, 1);
  CHECK(other.mean != a.mean);

  CHECK_THROWS_AS(
      estimate(AvgThroughput{}, p, std::nullopt, 99, 1),
      std::invalid_argument);
  SystemParams overk = base(4, 5, 10.0);
  CHECK_THROWS_AS(
      estimate(AvgThroughput{}, overk, std::nullopt, 1000, 1),
      std::invalid_argument);
}

TEST_CASE("estimate: error bar halves when trials quadruple") {
  const SystemParams p = base(40, 1, 10.0);
  const EstimateResult small =
      estimate(AvgThroughput{}, p, std::nullopt, 50000, 3);
  const EstimateResult big =
      estimate(AvgThroughput{}, p, std::nullopt, 200000, 3);
  const double ratio = small.std_error / big.std_error;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("estimate: degenerate outage threshold and metric plumbing") {
  const SystemParams p = base(10, 1, 10.0);
  const EstimateResult sure =
      estimate(Outage{1e300}, p, std::nullopt, 1000, 1);
  CHECK(sure.mean == 1.0);
  CHECK(sure.std_error == 0.0);

  // vanishing delay exponent reproduces the average throughput
  const EstimateResult avg =
      estimate(AvgThroughput{}, p, std::nullopt, 200000, 9);
  const EstimateResult eff =
      estimate(EffThroughput{1e-6}, p, std::nullopt, 200000, 9);
  CHECK(std::fabs(avg.mean - eff.mean) <=
        3.0 * (avg.std_error + eff.std_error));
}

TEST_CASE("estimate: large-system point matches the closed form") {
  const SystemParams p = base(100, 1, 10.0);
  const EstimateResult mc =
      estimate(AvgThroughput{}, p, std::nullopt, 1000000, 1);
  const double asym = avg_throughput(p).value;
  CHECK(std::fabs(mc.mean - asym) / asym < 0.02);
}

TEST_CASE("limiting-law fit: convergence diagnostic") {
  CHECK(ks_statistic(base(500, 1, kInf), 200000, 21) < 0.01);

  const double d_small = ks_statistic(base(10, 1, kInf), 30000, 13);
  const double d_large = ks_statistic(base(1000, 1, kInf), 30000, 13);
  MESSAGE("KS distance N=10: ", d_small, "  N=1000: ", d_large);
  CHECK(d_small > d_large);

  // thread-count independence of the sampled statistic
  CHECK(ks_statistic(base(50, 2, kInf), 20000, 5, 1) ==
        ks_statistic(base(50, 2, kInf), 20000, 5, 4));

  CHECK_THROWS_AS(ks_statistic(base(10, 1, kInf), 999, 1),
                  std::invalid_argument);
}

TEST_CASE("limiting-law fit: sampler self-consistency") {
  // draws taken straight from the limiting sampler should sit inside the
  // 95% Kolmogorov band around their own law
  const std::size_t n = 20000;
  std::vector<double> z(n);
  for (int k : {1, 2}) {
    RngStream rng(42, static_cast<std::uint64_t>(k));
    for (double& x : z) x = sample_limiting(k, rng);
    CAPTURE(k);
    CHECK(ks_against_limiting(z, k) < 1.36 / std::sqrt((double)n));
  }
}

TEST_CASE("interference accounting under stale power estimates") {
  const SystemParams p = base(40, 1, kInf);

  // a perfect estimate can never violate the cap when the cap is the binding
  // constraint
  const CsiParams perfect{1.0, 1.0, 0.1, p.eta, p.beta};
  CHECK(interference_outage_rate(p, perfect, 10000, 1) == 0.0);

  const CsiParams stale{0.9, 1.0, 0.1, 20.0, 3.0};
  const double rate = interference_outage_rate(p, stale, 100000, 1);
  MESSAGE("interference-outage rate at rho=0.9: ", rate,
          " (target level 0.1)");
  WARN_MESSAGE(std::fabs(rate - 0.1) <= 0.03,
               "measured violation rate deviates from the design level; "
               "reported, not asserted");

  // a smaller manual margin always means fewer violations
  double prev = 1.1;
  for (double r : {0.33, 0.2, 0.1, 0.05}) {
    const double v = interference_outage_rate(p, stale, 50000, 2, r);
    CAPTURE(r);
    CHECK(v <= prev);
    prev = v;
  }

  // thread-count independence
  CHECK(interference_outage_rate(p, stale, 50000, 3, std::nullopt, 1) ==
        interference_outage_rate(p, stale, 50000, 3, std::nullopt, 4));
}

TEST_CASE("gamma sampler: first two moments across shape regimes") {
  const double scale = 3.0;
  const std::size_t n = 200000;
  for (double shape : {0.5, 1.0, 2.0, 4.5}) {
    RngStream rng(77, 0);
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.gamma_dist(shape, scale);
      CHECK(x > 0.0);
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    const double want_mean = shape * scale;
    const double want_var = shape * scale * scale;
    CAPTURE(shape);
    CHECK(std::fabs(mean - want_mean) <=
          4.0 * std::sqrt(want_var / (double)n));
    // Var(sample variance) ~ var^2 (2 + 6/shape) / n for this family
    CHECK(std::fabs(var - want_var) <=
          5.0 * want_var * std::sqrt((2.0 + 6.0 / shape) / (double)n));
  }
}

TEST_CASE("stale-selection mode: guard rails and degenerate agreement") {
  SystemParams frac = base(10, 1, kInf);
  frac.m = 1.5;
  const CsiParams csi{0.9, 1.0, 0.1, 20.0, 3.0};
  RngStream rng(1, 0);
  CHECK_THROWS_AS(run_trial(frac, csi, rng,
                            CsiSimMode::select_estimate_evaluate_truth),
                  std::invalid_argument);

  // delta = 1 with matched scales collapses the mode onto plain substitution
  const SystemParams p = base(10, 2, kInf);
  const CsiParams ideal{1.0, 1.0, 0.1, p.eta, p.beta};
  const EstimateResult sub =
      estimate(AvgThroughput{}, p, ideal, 50000, 4, 0,
               CsiSimMode::substitution);
  const EstimateResult stale =
      estimate(AvgThroughput{}, p, ideal, 50000, 4, 0,
               CsiSimMode::select_estimate_evaluate_truth);
  CHECK(std::fabs(sub.mean - stale.mean) <=
        3.0 * (sub.std_error + stale.std_error));

  const EstimateResult t1 =
      estimate(AvgThroughput{}, p, csi, 30000, 6, 1,
               CsiSimMode::select_estimate_evaluate_truth);
  const EstimateResult t4 =
      estimate(AvgThroughput{}, p, csi, 30000, 6, 4,
               CsiSimMode::select_estimate_evaluate_truth);
  CHECK(same_bits(t1.mean, t4.mean));
}
