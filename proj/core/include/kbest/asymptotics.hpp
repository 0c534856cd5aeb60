#pragma once

#include <optional>

#include "kbest/model.hpp"
#include "kbest/quadrature.hpp"

// Large-N asymptotic metrics of the k-th best secondary user. Each function
// evaluates the closed-form limit expression (capped-power branch when p_s is
// finite, uncapped branch when p_s == kUnlimitedPower); BER and capped-power
// outage involve one remaining integral, evaluated by adaptive quadrature
// with the substitution u = eta*T/t so the power density becomes e^{-u}.

namespace kbest {

struct AsymptoticResult {
  double value;           // bit/s/Hz for throughputs, probability otherwise
  double quadrature_err;  // absolute bound from quadrature stages, 0 if none
  bool converged;         // false when a quadrature stage gave up early

  bool ok() const { return converged; }
};

// Average throughput E[log2(1 + P*Z)] in the large-N limit. Closed form,
// no quadrature. Capped: (ln(b*p_s) - E1(eta*T/p_s) - psi(k)) / ln 2;
// uncapped: (ln(b*T*eta) - psi(k) + E0) / ln 2.
AsymptoticResult avg_throughput(const SystemParams& p);

// Effective throughput -(1/A) log2 E[(1 + P*Z)^{-A}] in the large-N limit,
// for delay exponent a_exp > 0. Closed form, evaluated entirely in log space
// (Gamma(k+A) and (b*eta*T)^A overflow quickly otherwise).
AsymptoticResult eff_throughput(const SystemParams& p, double a_exp);

// Average BER c*E[exp(-v*P*Z)] in the large-N limit. One quadrature over the
// power law with a scaled-Bessel integrand, plus the peak-power atom term in
// the capped branch.
AsymptoticResult avg_ber(const SystemParams& p, double c, double v,
                         const QuadratureSpec& spec = {});

// Outage probability Pr{P*Z <= x0} in the large-N limit. Uncapped branch is
// fully closed form (Bessel K); capped branch integrates Q(k, b*t/x0) over
// the power law and adds the atom term.
AsymptoticResult outage(const SystemParams& p, double x0,
                        const QuadratureSpec& spec = {});

// Dispatch wrapper: applies effective_params when csi is present, then
// routes to the matching metric above.
AsymptoticResult evaluate(const Metric& metric, const SystemParams& p,
                          const std::optional<CsiParams>& csi = std::nullopt,
                          const QuadratureSpec& spec = {});

}  // namespace kbest
