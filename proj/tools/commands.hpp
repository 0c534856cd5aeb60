#pragma once

#include <string>

#include "config.hpp"

// Subcommand implementations. Each returns the process exit code:
//   0 success, 1 comparison failure, 2 configuration error,
//   3 quadrature failure (an asymptotic value did not converge).

namespace kbest::cli {

// One CSV row per grid point (or a single row without a sweep):
//   [<sweep>,]value,quad_err,status
int cmd_asymptotic(const RunConfig& cfg);

// [<sweep>,]mc_mean,mc_stderr,n_trials,seed  — row r uses seed cfg.seed + r.
int cmd_simulate(const RunConfig& cfg, unsigned threads);

// [<sweep>,]asymptotic,quad_err,mc_mean,mc_stderr,rel_err,tol,status
// A row fails when rel_err > max(rel_tol, 3*mc_stderr/|mc_mean|). b_scale is
// a negative-control knob: it multiplies lambda on the asymptotic side only
// (the limit laws depend on lambda solely through the scale b, linearly), so
// any value != 1 must make the comparison fail.
int cmd_compare(const RunConfig& cfg, double rel_tol, double b_scale,
                unsigned threads);

// Sweep must be n_users: n_users,ks_distance,decreasing
int cmd_convergence(const RunConfig& cfg, unsigned threads);

// Canned study: label columns + asymptotic,quad_err,mc_mean,mc_stderr.
int cmd_figure(const std::string& id, std::uint64_t trials, std::uint64_t seed,
               const std::string& out, unsigned threads);

}  // namespace kbest::cli
