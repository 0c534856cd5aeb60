#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kbest/model.hpp"
#include "kbest/quadrature.hpp"

using namespace kbest;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// shared study baseline: lambda=2, beta=3, m=2, eta=20, P_M=1, T=0.1
SystemParams base(int n, int k, double ps) {
  return {2.0, 3.0, 2.0, 20.0, 1.0, 0.1, ps, n, k};
}

SystemParams unit_params() { return {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, kInf, 2, 1}; }

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

// sup-distance between the empirical law of (sorted) samples and cdf
double ks_against(std::vector<double> samples, int k) {
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

TEST_CASE("channel-ratio cdf: pinned points and shape") {
  const SystemParams u = unit_params();
  CHECK(sir_cdf(0.0, u) == 0.0);
  CHECK(sir_cdf(1.0, u) == doctest::Approx(0.5).epsilon(1e-14));

  const SystemParams p = base(40, 1, 10.0);
  double prev = 0.0;
  for (double z = 0.1; z < 1e4; z *= 2.0) {
    const double f = sir_cdf(z, p);
    CHECK(f >= prev);
    CHECK(f < 1.0);
    prev = f;
  }
}

TEST_CASE("channel-ratio pdf: normalized and consistent with the cdf") {
  const SystemParams p = base(40, 1, 10.0);
  const QuadResult q =
      integrate([&](double z) { return sir_pdf(z, p); }, 0.0, kInf, {});
  REQUIRE(q.ok());
  CHECK(std::fabs(q.value - 1.0) <= std::max(1e-10, 10.0 * q.err_estimate));

  for (double z : {0.1, 1.0, 10.0}) {
    const double h = 1e-5 * z;
    const double fd = (sir_cdf(z + h, p) - sir_cdf(z - h, p)) / (2.0 * h);
    CAPTURE(z);
    CHECK(rel_err(fd, sir_pdf(z, p)) < 1e-6);
  }
}

TEST_CASE("scale b: unit case, frozen value, quantile round-trip") {
  SystemParams u = unit_params();
  CHECK(scale_b(u) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(rel_err(scale_b(base(40, 1, 10.0)), 470.981011897578) <= 1e-13);

  for (int n : {5, 50, 500}) {
    SystemParams p = base(n, 1, 10.0);
    CAPTURE(n);
    CHECK(std::fabs(sir_cdf(scale_b(p), p) - (1.0 - 1.0 / n)) <= 1e-12);
  }
}

TEST_CASE("scale b: monotone in every parameter") {
  const SystemParams p = base(40, 1, 10.0);
  SystemParams q = p;

  q.n_users = 80;
  CHECK(scale_b(q) > scale_b(p));
  q = p;
  q.beta = 4.0;
  CHECK(scale_b(q) > scale_b(p));
  q = p;
  q.lambda = 3.0;
  CHECK(scale_b(q) > scale_b(p));
  q = p;
  q.p_m = 2.0;
  CHECK(scale_b(q) < scale_b(p));
}

TEST_CASE("limiting law: pinned points and quantile inversion") {
  CHECK(std::fabs(limiting_cdf(1.0, 1) - 0.36787944117144233) <= 1e-12);
  CHECK(std::fabs(limiting_cdf(1.0, 2) - 0.7357588823428847) <= 1e-12);
  CHECK(std::fabs(limiting_quantile(0.36787944117144233, 1) - 1.0) <= 1e-10);

  for (int k = 1; k <= 4; ++k) {
    for (double u : {0.05, 0.3, 0.7, 0.95}) {
      CAPTURE(k);
      CAPTURE(u);
      CHECK(std::fabs(limiting_cdf(limiting_quantile(u, k), k) - u) <= 1e-10);
    }
  }
}

TEST_CASE("limiting law: rank ordering and density normalization") {
  for (int k = 1; k <= 5; ++k) {
    for (double z : {0.05, 0.2, 1.0, 5.0, 50.0}) {
      CAPTURE(k);
      CAPTURE(z);
      CHECK(limiting_cdf(z, k + 1) >= limiting_cdf(z, k));
    }
    const QuadResult q = integrate(
        [k](double z) { return limiting_pdf(z, k); }, 0.0, kInf, {});
    REQUIRE(q.ok());
    CHECK(std::fabs(q.value - 1.0) <= std::max(1e-9, 10.0 * q.err_estimate));
  }
}

TEST_CASE("limiting sampler: determinism, reciprocal moments, KS fit") {
  RngStream a(123, 0), b(123, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_limiting(2, a) == sample_limiting(2, b));
  }

  const int k = 2;
  const std::size_t n = 1000000;
  RngStream rng(2024, 0);
  std::vector<double> z(n);
  double recip_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = sample_limiting(k, rng);
    recip_sum += 1.0 / z[i];
  }
  // 1/Z ~ Gamma(k, 1): mean k, sd sqrt(k)
  const double mean_recip = recip_sum / n;
  CHECK(std::fabs(mean_recip - k) <= 3.0 * std::sqrt((double)k / n));
  CHECK(ks_against(std::move(z), k) < 0.002);
}

TEST_CASE("transmit-power law: cdf, atom mass, sampler mean") {
  SystemParams p = base(40, 1, kInf);
  // uncapped: F_P(t) = exp(-eta T / t); at t = eta*T it equals 1/e
  CHECK(std::fabs(st_power_cdf(p.eta * p.t_intf, p) - 0.36787944117144233) <=
        1e-14);

  p.p_s = 10.0;
  CHECK(st_power_cdf(10.0, p) == 1.0);
  CHECK(st_power_cdf(11.0, p) == 1.0);
  // atom mass at the cap: 1 - e^{-eta T / p_s}
  const double atom = 1.0 - st_power_cdf(std::nextafter(10.0, 0.0), p);
  CHECK(rel_err(atom, 0.18126924692201815) <= 1e-9);

  SystemParams tightcap = p;
  tightcap.p_s = 0.1;  // eta*T/p_s = 20: the cap almost always binds
  const double m2 = 1.0 - st_power_cdf(std::nextafter(0.1, 0.0), tightcap);
  CHECK(m2 > 1.0 - 3e-9);

  // sampler mean against quadrature of the survival function
  const QuadResult ep = integrate(
      [&](double t) { return 1.0 - std::exp(-p.eta * p.t_intf / t); }, 0.0,
      10.0, {});
  REQUIRE(ep.ok());
  CHECK(std::fabs(ep.value - 4.257993557587968) <= 1e-9);

  RngStream rng(7, 0);
  const std::size_t n = 200000;
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sample_st_power(p, rng);
    s += t;
    s2 += t * t;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::fabs(mean - ep.value) <= 3.0 * se);
}

TEST_CASE("power margin: perfect-estimate fixed point and frozen values") {
  for (double g0 : {0.01, 0.1, 0.3}) {
    CAPTURE(g0);
    CHECK(power_margin(1.0, g0) == 1.0);
  }
  CHECK(rel_err(power_margin(0.0, 0.1), 1.0 / 9.0) <= 1e-12);
  CHECK(rel_err(power_margin(0.9, 0.1), 0.3311276401383375) <= 1e-13);
  CHECK(rel_err(power_margin(0.5, 0.1), 0.1389982519138792) <= 1e-13);
}

TEST_CASE("effective parameters: substitution rule") {
  SystemParams p = base(40, 1, kInf);
  const CsiParams perfect{1.0, 1.0, 0.1, p.eta, p.beta};
  const SystemParams same = effective_params(p, perfect);
  CHECK(same.eta == p.eta);
  CHECK(same.beta == p.beta);
  CHECK(same.t_intf == p.t_intf);
  CHECK(same.lambda == p.lambda);
  CHECK(same.p_s == p.p_s);

  const CsiParams stale{0.9, 1.0, 0.1, 20.0, 3.0};
  CHECK(rel_err(stale.true_eta(), 4.3383947939262475) <= 1e-13);
  const SystemParams eff = effective_params(p, stale);
  CHECK(eff.eta == 20.0);
  CHECK(eff.beta == 3.0);
  CHECK(rel_err(eff.t_intf, 0.3311276401383375 * 0.1) <= 1e-13);
  CHECK_NOTHROW(eff.validate());
}

TEST_CASE("validation: rejects out-of-range inputs") {
  SystemParams p = base(40, 1, 10.0);
  CHECK_NOTHROW(p.validate());

  SystemParams bad = p;
  bad.n_users = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.n_users = 1;  // fine for simulation, but no large-N scale exists
  CHECK_NOTHROW(bad.validate());
  CHECK_THROWS_AS(scale_b(bad), std::invalid_argument);
  bad = p;
  bad.k_rank = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.k_rank = 41;
  CHECK_NOTHROW(bad.validate());  // analytic formulas stay meaningful
  CHECK_THROWS_AS(bad.validate_for_simulation(), std::invalid_argument);
  bad = p;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.t_intf = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.p_s = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.p_s = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CsiParams c{0.9, 1.0, 0.1, 20.0, 3.0};
  CHECK_NOTHROW(c.validate());
  CsiParams badc = c;
  badc.rho = 1.5;
  CHECK_THROWS_AS(badc.validate(), std::invalid_argument);
  badc = c;
  badc.gamma0 = 0.0;
  CHECK_THROWS_AS(badc.validate(), std::invalid_argument);
  badc = c;
  badc.eta_hat = 0.0;
  CHECK_THROWS_AS(badc.validate(), std::invalid_argument);

  CHECK_THROWS_AS(validate(Metric{EffThroughput{0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Metric{AvgBer{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Metric{Outage{-1.0}}), std::invalid_argument);
  CHECK_NOTHROW(validate(Metric{AvgThroughput{}}));
}
