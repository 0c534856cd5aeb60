#pragma once

#include <cmath>
#include <cstdlib>

// Test-side reference integrator, deliberately disjoint from the library's
// Gauss-Kronrod engine: tanh-sinh (double-exponential) quadrature carried in
// long double. Disagreement between the two engines localizes bugs; agreement
// is evidence, not tautology.
//
// The (0,1) node map is evaluated through the logistic form
//   t = 1/(1+e^{-2u}),  1-t = e^{-2u}/(1+e^{-2u}),  u = (pi/2) sinh(jh),
// so nodes hug the endpoints without cancellation and integrable endpoint
// singularities are benign.

namespace oracle {

struct Result {
  long double value;
  long double err;  // |last refinement delta|, a practical error proxy
};

namespace detail {

inline constexpr long double kHalfPi = 1.57079632679489661923L;

// One full tanh-sinh pass at step h over (0,1) in the logistic variable; g is
// the integrand already mapped onto (0,1).
template <class G>
long double pass(const G& g, long double h) {
  // j = 0 term: u = 0, t = 1/2, weight h*pi*cosh(0)*t(1-t) = h*pi/4
  long double sum = h * 2.0L * kHalfPi * 0.25L * g(0.5L);
  for (int sign = -1; sign <= 1; sign += 2) {
    for (int j = 1;; ++j) {
      const long double v = sign * h * j;
      const long double u = kHalfPi * std::sinh(v);
      const long double e = std::exp(-2.0L * std::fabs(u));
      if (e == 0.0L) break;  // doubly-exponential underflow: tail is done
      const long double denom = 1.0L + e;
      const long double near = e / denom;      // min(t, 1-t)
      const long double far = 1.0L / denom;    // max(t, 1-t)
      const long double t = u > 0.0L ? far : near;
      const long double w =
          h * 2.0L * kHalfPi * std::cosh(v) * near * far;
      if (w < 1e-40L && j > 8) break;  // weight dead, decay is monotone
      sum += w * g(t);
      if (std::fabs(v) > 7.0L) break;  // u ~ 861: far past double support
    }
  }
  return sum;
}

}  // namespace detail

// integral of f over finite (a,b), endpoints approached but never evaluated
template <class F>
Result tanh_sinh(const F& f, long double a, long double b,
                 int max_level = 11, long double rel_tol = 1e-16L) {
  const long double len = b - a;
  auto g = [&](long double t) { return f(a + len * t); };
  long double h = 0.5L;
  long double prev = detail::pass(g, h) * len;
  long double err = std::fabs(prev);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5L;
    const long double cur = detail::pass(g, h) * len;
    err = std::fabs(cur - prev);
    prev = cur;
    if (err <= rel_tol * std::fabs(cur)) break;
  }
  return {prev, err};
}

// integral of f over (a, +inf): finite leg (a, a+1) plus the tail mapped by
// z = a + 1/s, ds-integral over (0,1)
template <class F>
Result tanh_sinh_semi_inf(const F& f, long double a, int max_level = 11,
                          long double rel_tol = 1e-16L) {
  const Result head = tanh_sinh(f, a, a + 1.0L, max_level, rel_tol);
  auto tail_integrand = [&](long double s) {
    const long double z = a + 1.0L / s;
    const long double fz = f(z);
    if (fz == 0.0L) return 0.0L;
    return fz / (s * s);
  };
  const Result tail = tanh_sinh(tail_integrand, 0.0L, 1.0L, max_level, rel_tol);
  return {head.value + tail.value, head.err + tail.err};
}

}  // namespace oracle
