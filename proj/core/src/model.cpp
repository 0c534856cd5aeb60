#include "kbest/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kbest/specfun.hpp"

namespace kbest {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void SystemParams::validate() const {
  require(positive_finite(lambda), "lambda must be finite and > 0");
  require(positive_finite(beta), "beta must be finite and > 0");
  require(positive_finite(m), "m must be finite and > 0");
  require(positive_finite(eta), "eta must be finite and > 0");
  require(positive_finite(p_m), "p_m must be finite and > 0");
  require(positive_finite(t_intf), "t_intf must be finite and > 0");
  require(p_s > 0.0 && !std::isnan(p_s), "p_s must be > 0 (inf = no cap)");
  require(n_users >= 1, "n_users must be >= 1");
  require(k_rank >= 1, "k_rank must be >= 1");
}

void SystemParams::validate_for_simulation() const {
  validate();
  require(k_rank <= n_users, "k_rank must be <= n_users in simulation");
}

void CsiParams::validate() const {
  require(rho >= 0.0 && rho <= 1.0, "rho must lie in [0, 1]");
  require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]");
  require(gamma0 > 0.0 && gamma0 < 1.0, "gamma0 must lie in (0, 1)");
  require(positive_finite(eta_hat), "eta_hat must be finite and > 0");
  require(positive_finite(beta_hat), "beta_hat must be finite and > 0");
}

double CsiParams::true_eta() const {
  return 1.0 / (rho * rho / eta_hat + 1.0 - rho * rho);
}

void validate(const Metric& metric) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EffThroughput>) {
          require(positive_finite(m.a_exp), "a_exp must be finite and > 0");
        } else if constexpr (std::is_same_v<T, AvgBer>) {
          require(positive_finite(m.c), "ber c must be finite and > 0");
          require(positive_finite(m.v), "ber v must be finite and > 0");
        } else if constexpr (std::is_same_v<T, Outage>) {
          require(positive_finite(m.x0), "x0 must be finite and > 0");
        }
      },
      metric);
}

double sir_cdf(double z, const SystemParams& p) {
  if (!(z > 0.0)) return 0.0;
  // (P_M z / (lb + P_M z))^m == exp(-m log1p(lb/(P_M z))), exact near 1
  const double lb = p.lambda * p.beta;
  return std::exp(-p.m * std::log1p(lb / (p.p_m * z)));
}

double sir_pdf(double z, const SystemParams& p) {
  if (!(z > 0.0)) return 0.0;
  const double lb = p.lambda * p.beta;
  // log-space form of F(z) * m * lb / (z (lb + P_M z)); avoids 0*inf at the
  // extremes where either factor alone would over/underflow.
  const double lnf = std::log(p.m) - p.m * std::log1p(lb / (p.p_m * z)) +
                     std::log(lb) - std::log(z) - std::log(lb + p.p_m * z);
  return std::exp(lnf);
}

double scale_b(const SystemParams& p) {
  if (p.n_users < 2)
    throw std::invalid_argument("scale_b needs n_users >= 2");
  // expm1/log1p keep (1 - 1/N)^{-1/m} - 1 exact when it is ~1/(mN)
  const double e = std::expm1(-std::log1p(-1.0 / p.n_users) / p.m);
  return p.beta * p.lambda / (p.p_m * e);
}

double limiting_cdf(double z, int k) {
  if (k < 1) throw std::domain_error("limiting_cdf: k must be >= 1");
  if (!(z > 0.0)) return 0.0;
  const double inv = 1.0 / z;
  if (std::isinf(inv)) return 0.0;
  return specfun::upper_inc_gamma_reg(k, inv);
}

double limiting_pdf(double z, int k) {
  if (k < 1) throw std::domain_error("limiting_pdf: k must be >= 1");
  if (!(z > 0.0)) return 0.0;
  // e^{-1/z} / (z^{k+1} (k-1)!) evaluated in log space
  return std::exp(-1.0 / z - (k + 1) * std::log(z) - specfun::ln_gamma(k));
}

double limiting_quantile(double u, int k) {
  if (k < 1) throw std::domain_error("limiting_quantile: k must be >= 1");
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("limiting_quantile: u must lie in (0, 1)");
  }
  // Solve Q(k, x) = u for x (Q decreases from 1 to 0), then z = 1/x.
  double lo = 0.0, hi = 1.0;
  while (specfun::upper_inc_gamma_reg(k, hi) > u) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) break;  // u astronomically small; bracket is good enough
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (specfun::upper_inc_gamma_reg(k, mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 1.0 / (0.5 * (lo + hi));
}

double sample_limiting(int k, RngStream& rng) {
  if (k < 1) throw std::domain_error("sample_limiting: k must be >= 1");
  return 1.0 / rng.gamma_dist(static_cast<double>(k), 1.0);
}

double st_power_cdf(double t, const SystemParams& p) {
  if (!(t > 0.0)) return 0.0;
  if (t >= p.p_s) return 1.0;  // never taken when p_s is infinite
  return std::exp(-p.eta * p.t_intf / t);
}

double sample_st_power(const SystemParams& p, RngStream& rng) {
  const double h0sq = rng.exponential(p.eta);
  return std::min(p.p_s, p.t_intf / h0sq);
}

double power_margin(double rho, double gamma0) {
  require(rho >= 0.0 && rho <= 1.0, "power_margin: rho must lie in [0, 1]");
  require(gamma0 > 0.0 && gamma0 < 1.0,
          "power_margin: gamma0 must lie in (0, 1)");
  const double r2 = rho * rho;
  const double q = 1.0 - 2.0 * gamma0;
  // at rho == 1 both radicand factors carrying (1 - rho^2) vanish exactly,
  // so the margin is exactly 1 in floating point as well
  const double root = std::sqrt((1.0 - r2) * (1.0 - q * q * r2));
  return (2.0 * r2 - 1.0) +
         (1.0 - r2 - q * root) / (2.0 * gamma0 * (1.0 - gamma0));
}

SystemParams effective_params(const SystemParams& p, const CsiParams& c) {
  SystemParams out = p;
  out.eta = c.eta_hat;
  out.beta = c.beta_hat;
  out.t_intf = power_margin(c.rho, c.gamma0) * p.t_intf;
  return out;
}

}  // namespace kbest
