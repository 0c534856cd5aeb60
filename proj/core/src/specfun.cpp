#include "kbest/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kbest::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr int kMaxIter = 600;
constexpr double kEps = 1e-16;

// K0/K1 power series around 0, A&S 9.6-style, accurate to full double
// precision for x <= 2 (the series variable x^2/4 stays <= 1).
void bessel_k01_series(double x, double& k0, double& k1) {
  const double t = 0.25 * x * x;
  const double lnh = std::log(0.5 * x);

  // I0, I1 and the companion sums with harmonic-number coefficients.
  double term = 1.0;       // t^j / (j!)^2
  double i0 = 1.0;
  double s0 = 0.0;         // sum H_j t^j/(j!)^2
  double term1 = 1.0;      // t^j / (j!(j+1)!)
  double i1sum = 1.0;      // sum t^j/(j!(j+1)!)   [I1 = (x/2)*i1sum]
  double s1 = 1.0;         // sum (H_j + H_{j+1}) t^j/(j!(j+1)!)
  double h = 0.0;          // H_j
  for (int j = 1; j <= 40; ++j) {
    term *= t / (static_cast<double>(j) * j);
    term1 *= t / (static_cast<double>(j) * (j + 1.0));
    h += 1.0 / j;
    i0 += term;
    s0 += term * h;
    i1sum += term1;
    s1 += term1 * (2.0 * h + 1.0 / (j + 1.0));
    if (term < kEps * i0 && term1 < kEps * i1sum) break;
  }
  const double i1 = 0.5 * x * i1sum;

  k0 = -(lnh + kEulerGamma) * i0 + s0;
  k1 = 1.0 / x + lnh * i1 - 0.25 * x * (s1 - 2.0 * kEulerGamma * i1sum);
}

// Steed/Temme continued fraction (CF2) for mu = 0, valid for x > 2: yields
// the scaled values e^x K0 and e^x K1 directly.
void bessel_k01_scaled_cf2(double x, double& k0s, double& k1s) {
  const double a1 = 0.25;  // 1/4 - mu^2 at mu = 0
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double a = -a1;
  double c = a1, q = c;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  h = a1 * h;
  k0s = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  k1s = k0s * (x + 0.5 - h) / x;
}

void check_bessel_args(int n, double x) {
  if (n < 0) throw std::domain_error("bessel_k: order must be >= 0");
  if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be > 0");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: x must be > 0");
  if (x < 0.5) {
    // reflection keeps the rational part away from the pole at 0
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           ln_gamma(1.0 - x);
  }
  // Lanczos, g = 7, 9 terms
  static constexpr double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  const double t = z + 7.5;
  return 0.91893853320467274178 /* ln sqrt(2 pi) */ +
         (z + 0.5) * std::log(t) - t + std::log(a);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  // Bernoulli asymptotic series; at x >= 10 the first omitted term is ~1e-16
  const double series =
      std::log(x) - 0.5 * inv -
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0))))));
  return acc + series;
}

double upper_inc_gamma_reg(double s, double x) {
  if (!(s > 0.0)) throw std::domain_error("upper_inc_gamma_reg: s must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("upper_inc_gamma_reg: x must be >= 0");
  if (x == 0.0) return 1.0;

  // shared overflow-safe prefactor x^s e^{-x} / Gamma(s)
  const double lnpre = s * std::log(x) - x - ln_gamma(s);

  if (x < s + 1.0) {
    // series for the lower function P(s,x); Q = 1 - P
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < kMaxIter; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return 1.0 - sum * std::exp(lnpre);
  }

  // modified Lentz continued fraction for Q itself
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(lnpre) * h;
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: x must be > 0");
  if (x <= 1.0) {
    // -E0 - ln x - sum_{n>=1} (-x)^n/(n n!)
    double term = 1.0;  // (-x)^n / n!
    double sum = 0.0;
    for (int n = 1; n <= 80; ++n) {
      term *= -x / n;
      const double add = -term / n;
      sum += add;
      if (std::fabs(add) < kEps * std::fabs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  // Lentz continued fraction: E1 = e^{-x} / (x + 1 - 1/(x + 3 - 4/(...)))
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x);
}

double bessel_k_scaled(int n, double x) {
  check_bessel_args(n, x);
  double k0, k1;
  if (x <= 2.0) {
    bessel_k01_series(x, k0, k1);
    const double ex = std::exp(x);
    k0 *= ex;
    k1 *= ex;
  } else {
    bessel_k01_scaled_cf2(x, k0, k1);
  }
  if (n == 0) return k0;
  // upward recurrence K_{j+1} = K_{j-1} + (2j/x) K_j (stable for K)
  double km = k0, kc = k1;
  for (int j = 1; j < n; ++j) {
    const double kp = km + (2.0 * j / x) * kc;
    km = kc;
    kc = kp;
  }
  return kc;
}

double bessel_k(int n, double x) {
  check_bessel_args(n, x);
  if (x <= 2.0) {
    double k0, k1;
    bessel_k01_series(x, k0, k1);
    if (n == 0) return k0;
    double km = k0, kc = k1;
    for (int j = 1; j < n; ++j) {
      const double kp = km + (2.0 * j / x) * kc;
      km = kc;
      kc = kp;
    }
    return kc;
  }
  return bessel_k_scaled(n, x) * std::exp(-x);
}

}  // namespace kbest::specfun
