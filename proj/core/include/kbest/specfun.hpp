#pragma once

// Special-function kernel backing every closed-form expression in the
// library. All functions are pure, thread-safe, and throw std::domain_error
// on out-of-domain arguments.

namespace kbest::specfun {

// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 terms), with
// reflection below 0.5; relative error stays under 1e-13 on [1e-3, 1e3].
double ln_gamma(double x);

// psi(x) = d/dx ln Gamma(x) for x > 0. Recurrence up to x >= 10, then the
// Bernoulli asymptotic series.
double digamma(double x);

// Regularized upper incomplete gamma Q(s,x) = Gamma(s,x)/Gamma(s) for s > 0,
// x >= 0. Series for x < s+1, Lentz continued fraction otherwise; both
// branches run through exp(s ln x - x - ln_gamma(s)) so large arguments do
// not overflow.
double upper_inc_gamma_reg(double s, double x);

// E1(x) = integral_x^inf e^{-y}/y dy for x > 0. Power series up to x = 1,
// continued fraction beyond.
double exp_integral_e1(double x);

// Modified Bessel function of the second kind, integer order n >= 0, x > 0.
// K0/K1 come from their power series (x <= 2) or a Steed continued fraction
// (x > 2); higher orders use the upward recurrence, which is stable for K.
double bessel_k(int n, double x);

// e^x K_n(x): the scaled variant survives arguments far past the point where
// K_n itself underflows (needed around 2*sqrt(v*b*P) > 700).
double bessel_k_scaled(int n, double x);

}  // namespace kbest::specfun
