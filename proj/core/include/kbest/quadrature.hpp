#pragma once

#include <functional>

namespace kbest {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 1000;
};

enum class QuadStatus {
  ok,
  accuracy_not_reached,  // best estimate returned, error bound honest
  bad_integrand,         // integrand produced NaN/Inf at an interior node
};

struct QuadResult {
  double value;
  double err_estimate;  // absolute error bound
  QuadStatus status;

  bool ok() const { return status == QuadStatus::ok; }
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over (a, b), bisecting the
// interval with the largest local error estimate until
// sum(err) <= max(abs_tol, rel_tol*|value|) or the subdivision budget runs
// out. b may be +infinity: the substitution u = 1/(1 + t - a) is applied
// internally, so callers never pre-transform. Nodes are strictly interior,
// which tolerates integrable endpoint singularities.
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadratureSpec& spec = {});

}  // namespace kbest
