#include "kbest/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kbest/specfun.hpp"

namespace kbest {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  if (std::isinf(hi) && hi < 0.0) return hi;  // both -inf
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// E[exp(-y * V)] for the k-th limiting variable V: 2 y^{k/2} K_k(2 sqrt y)
// divided by (k-1)!. Two regimes keep it overflow-free:
//   y <  1: recurrence in r_n = y^{n/2} K_n(2 sqrt y), which stays bounded as
//           y -> 0 (r_n -> (n-1)!/2), with power-of-two rescaling for large k;
//   y >= 1: log space through the scaled Bessel function, so the e^{-2 sqrt y}
//           decay never hits the K_k overflow at small arguments.
double mgf_factor(int k, double y) {
  if (y == 0.0) return 1.0;
  if (y < 1.0) {
    const double x = 2.0 * std::sqrt(y);
    double rp = specfun::bessel_k(0, x);            // r_0
    double rc = 0.5 * x * specfun::bessel_k(1, x);  // r_1
    int ex = 0;
    for (int n = 1; n < k; ++n) {
      double rn = n * rc + y * rp;
      rp = rc;
      rc = rn;
      if (rc > 1e280) {
        rc = std::ldexp(rc, -512);
        rp = std::ldexp(rp, -512);
        ex += 512;
      }
    }
    if (ex == 0 && k <= 170) {
      return 2.0 * rc / std::exp(specfun::ln_gamma(k));
    }
    return std::exp(std::numbers::ln2 + std::log(rc) +
                    ex * std::numbers::ln2 - specfun::ln_gamma(k));
  }
  const double x = 2.0 * std::sqrt(y);
  return std::exp(std::numbers::ln2 + 0.5 * k * std::log(y) - x +
                  std::log(specfun::bessel_k_scaled(k, x)) -
                  specfun::ln_gamma(k));
}

AsymptoticResult closed_form(double value) { return {value, 0.0, true}; }

// probabilities (and c-scaled probabilities) may land an ulp outside their
// range after the Bessel/quadrature round trip
double clamp_to(double value, double hi) {
  return std::clamp(value, 0.0, hi);
}

AsymptoticResult with_quadrature(double value, const QuadResult& q,
                                 double scale) {
  return {value, scale * q.err_estimate,
          q.status != QuadStatus::accuracy_not_reached &&
              q.status != QuadStatus::bad_integrand};
}

}  // namespace

AsymptoticResult avg_throughput(const SystemParams& p) {
  p.validate();
  const double lnb = std::log(scale_b(p));
  const double psi = specfun::digamma(p.k_rank);
  double ln_mean_lnp;  // E[ln P] actually, kept additive with ln b
  if (p.unlimited_power()) {
    ln_mean_lnp = std::log(p.t_intf * p.eta) + kEulerGamma;
  } else {
    ln_mean_lnp = std::log(p.p_s) -
                  specfun::exp_integral_e1(p.eta * p.t_intf / p.p_s);
  }
  return closed_form((lnb + ln_mean_lnp - psi) / std::numbers::ln2);
}

AsymptoticResult eff_throughput(const SystemParams& p, double a_exp) {
  p.validate();
  const double a = a_exp;
  const double lnb = std::log(scale_b(p));
  const double ln_eta_t = std::log(p.eta * p.t_intf);
  const double lg_ka = specfun::ln_gamma(p.k_rank + a);
  const double lg_k = specfun::ln_gamma(p.k_rank);

  if (p.unlimited_power()) {
    const double value =
        (lnb + ln_eta_t) / std::numbers::ln2 -
        (lg_ka + specfun::ln_gamma(a + 1.0) - lg_k) / (a * std::numbers::ln2);
    return closed_form(value);
  }

  // capped: E[(PZ)^{-A}] splits into the adapted-power part (through the
  // regularized upper gamma of the cap crossing x) and the peak-power atom
  const double x = p.eta * p.t_intf / p.p_s;
  const double l1 = lg_ka + specfun::ln_gamma(a + 1.0) +
                    std::log(specfun::upper_inc_gamma_reg(a + 1.0, x)) -
                    a * (lnb + ln_eta_t) - lg_k;
  const double l2 = lg_ka + std::log(-std::expm1(-x)) -
                    a * (lnb + std::log(p.p_s)) - lg_k;
  return closed_form(-log_sum_exp(l1, l2) / (a * std::numbers::ln2));
}

AsymptoticResult avg_ber(const SystemParams& p, double c, double v,
                         const QuadratureSpec& spec) {
  p.validate();
  const double b = scale_b(p);
  const double eta_t = p.eta * p.t_intf;
  const int k = p.k_rank;

  auto integrand = [k, v, b, eta_t](double u) {
    return mgf_factor(k, v * b * eta_t / u) * std::exp(-u);
  };

  if (p.unlimited_power()) {
    const QuadResult q = integrate(integrand, 0.0, kUnlimitedPower, spec);
    return with_quadrature(clamp_to(c * q.value, c), q, c);
  }
  const double w = eta_t / p.p_s;
  const QuadResult q = integrate(integrand, w, kUnlimitedPower, spec);
  const double atom = mgf_factor(k, v * b * p.p_s) * (-std::expm1(-w));
  return with_quadrature(clamp_to(c * (q.value + atom), c), q, c);
}

AsymptoticResult outage(const SystemParams& p, double x0,
                        const QuadratureSpec& spec) {
  p.validate();
  const double b = scale_b(p);
  const double eta_t = p.eta * p.t_intf;
  const int k = p.k_rank;

  if (p.unlimited_power()) {
    // E[Q(k, b T / (S x0))] over S ~ Exp(eta) collapses to the Bessel form
    return closed_form(clamp_to(mgf_factor(k, b * eta_t / x0), 1.0));
  }

  auto integrand = [k, b, eta_t, x0](double u) {
    return specfun::upper_inc_gamma_reg(k, b * eta_t / (u * x0)) *
           std::exp(-u);
  };
  const double w = eta_t / p.p_s;
  const QuadResult q = integrate(integrand, w, kUnlimitedPower, spec);
  const double atom =
      specfun::upper_inc_gamma_reg(k, b * p.p_s / x0) * (-std::expm1(-w));
  return with_quadrature(clamp_to(q.value + atom, 1.0), q, 1.0);
}

AsymptoticResult evaluate(const Metric& metric, const SystemParams& p,
                          const std::optional<CsiParams>& csi,
                          const QuadratureSpec& spec) {
  validate(metric);
  SystemParams eff = p;
  if (csi) {
    csi->validate();
    eff = effective_params(p, *csi);
  }
  eff.validate();
  return std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AvgThroughput>) {
          return avg_throughput(eff);
        } else if constexpr (std::is_same_v<T, EffThroughput>) {
          return eff_throughput(eff, m.a_exp);
        } else if constexpr (std::is_same_v<T, AvgBer>) {
          return avg_ber(eff, m.c, m.v, spec);
        } else {
          return outage(eff, m.x0, spec);
        }
      },
      metric);
}

}  // namespace kbest
