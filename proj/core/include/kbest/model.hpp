#pragma once

#include <cmath>
#include <limits>
#include <variant>

#include "kbest/rng.hpp"

// System model of an underlay spectrum-sharing network: N secondary
// transmitter/receiver pairs reuse the primary band, the scheduler picks the
// user with the k-th largest signal-to-interference ratio, and the secondary
// transmit power is capped so interference at the primary receiver stays
// below a threshold. This header owns every physical symbol; the analysis
// layer (asymptotics.hpp) and the simulator (montecarlo.hpp) both consume it.

namespace kbest {

// Distinguished "no peak-power cap" marker for SystemParams::p_s. Formula
// evaluation dispatches on it exactly instead of plugging a huge float into
// the capped-power expressions (which would cancel catastrophically).
inline constexpr double kUnlimitedPower =
    std::numeric_limits<double>::infinity();

// All parameters are stored linear (watts or dimensionless); dB conversion is
// strictly a CLI concern.
struct SystemParams {
  double lambda;  // rate of the exponential primary->secondary channel gain
  double beta;    // scale of the Gamma secondary signal channel gain
  double m;       // shape of that Gamma law, any positive real
  double eta;     // rate of the exponential secondary->primary channel gain
  double p_m;     // primary transmitter power
  double t_intf;  // tolerable interference level T at the primary receiver
  double p_s;     // secondary peak power, or kUnlimitedPower
  int n_users;    // N, number of secondary users
  int k_rank;     // k, selection rank (1 = best)

  bool unlimited_power() const { return std::isinf(p_s); }

  // Throws std::invalid_argument on any violated range. The _for_simulation
  // variant additionally requires k_rank <= n_users (the analytic formulas
  // stay meaningful for k beyond any fixed N, a finite trial does not).
  void validate() const;
  void validate_for_simulation() const;
};

// Imperfect channel knowledge at the secondary transmitter. The estimated
// quantities (eta_hat, beta_hat) are the user-supplied primitives; the true
// eta implied by the correlation model is derived, not input.
struct CsiParams {
  double rho;       // estimate correlation of the secondary->primary link
  double delta;     // estimate correlation of the secondary signal links
  double gamma0;    // target interference-outage probability, in (0,1)
  double eta_hat;   // rate of the estimated secondary->primary gain
  double beta_hat;  // scale of the estimated secondary signal gains

  void validate() const;

  // 1 / (rho^2/eta_hat + 1 - rho^2): rate of the true secondary->primary
  // gain under the correlation model (the innovation has unit mean power).
  double true_eta() const;
};

// Metric requests. a_exp is the normalized delay exponent A > 0 of the
// effective throughput; (c, v) are the modulation constants of the
// exponential BER kernel c*E[exp(-v*SIR)]; x0 is the outage SIR threshold.
struct AvgThroughput {};
struct EffThroughput {
  double a_exp;
};
struct AvgBer {
  double c;
  double v;
};
struct Outage {
  double x0;
};
using Metric = std::variant<AvgThroughput, EffThroughput, AvgBer, Outage>;

void validate(const Metric& metric);

// --- Exact finite-N channel-ratio law -------------------------------------
// Z = |h|^2/(P_M |g|^2) with |h|^2 ~ Gamma(m, beta), |g|^2 ~ Exp(lambda):
//   F(z) = (P_M z / (lambda*beta + P_M z))^m.
double sir_cdf(double z, const SystemParams& p);
double sir_pdf(double z, const SystemParams& p);

// Normalizing scale b = F^{-1}(1 - 1/N) of the k-th largest ratio,
//   b = beta*lambda / (P_M*((1 - 1/N)^{-1/m} - 1)).
// Requires n_users >= 2.
double scale_b(const SystemParams& p);

// --- Limiting law of Z_(N-k+1)/b as N grows --------------------------------
// Inverse-gamma: G(z) = Q(k, 1/z), density e^{-1/z} / (z^{k+1} (k-1)!).
double limiting_cdf(double z, int k);
double limiting_pdf(double z, int k);
double limiting_quantile(double u, int k);  // u in (0,1); inverts to 1e-10
double sample_limiting(int k, RngStream& rng);  // 1/Gamma(k,1) draw

struct LimitingDistribution {
  int k_rank;

  double cdf(double z) const { return limiting_cdf(z, k_rank); }
  double pdf(double z) const { return limiting_pdf(z, k_rank); }
  double quantile(double u) const { return limiting_quantile(u, k_rank); }
  double sample(RngStream& rng) const { return sample_limiting(k_rank, rng); }
};

// --- Adapted transmit power -------------------------------------------------
// P = min(p_s, T/|h0|^2), |h0|^2 ~ Exp(eta). The distribution has the
// continuous part e^{-eta*T/t} on (0, p_s) and, when p_s is finite, an atom
// at p_s of mass 1 - e^{-eta*T/p_s}.
double st_power_cdf(double t, const SystemParams& p);
double sample_st_power(const SystemParams& p, RngStream& rng);

// --- Imperfect-CSI mapping --------------------------------------------------
// Power margin r_I in (0,1]: deflation of the interference cap such that the
// interference-outage probability target gamma0 is met under estimate
// correlation rho. r_I(1, .) == 1 exactly.
double power_margin(double rho, double gamma0);

// Parameter substitution for imperfect CSI: eta <- eta_hat,
// t_intf <- r_I * t_intf, beta <- beta_hat. Every analytic formula then
// applies unchanged (scale_b of the result is the estimated-channel b).
SystemParams effective_params(const SystemParams& p, const CsiParams& c);

}  // namespace kbest
