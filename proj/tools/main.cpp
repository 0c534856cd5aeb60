#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

// Exit codes: 0 success, 1 comparison failure, 2 configuration error,
// 3 quadrature failure.

namespace {

struct CommonFlags {
  std::string config_path;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool wants_trials) {
  cmd->add_option("--config", f.config_path, "run configuration file")
      ->required();
  if (wants_trials) {
    f.trials_opt =
        cmd->add_option("--trials", f.trials, "Monte Carlo trials per point");
    f.seed_opt = cmd->add_option("--seed", f.seed, "base RNG seed");
    cmd->add_option("--threads", f.threads,
                    "worker threads (0 = hardware; never changes results)");
  }
  f.out_opt = cmd->add_option("--out", f.out, "output CSV path (default stdout)");
}

kbest::cli::RunConfig load(const CommonFlags& f) {
  kbest::cli::RunConfig cfg = kbest::cli::parse_config_file(f.config_path);
  if (f.trials_opt && f.trials_opt->count() > 0) cfg.n_trials = f.trials;
  if (f.seed_opt && f.seed_opt->count() > 0) cfg.seed = f.seed;
  if (f.out_opt && f.out_opt->count() > 0) cfg.out = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Asymptotic analysis and exact Monte Carlo simulation of k-th best "
      "user selection in an interference-limited spectrum-sharing network"};
  app.require_subcommand(1);

  CommonFlags fa, fs, fc, fv;
  double rel_tol = 0.05;
  double b_scale = 1.0;

  CLI::App* asym = app.add_subcommand(
      "asymptotic", "closed-form metric values over a config sweep");
  add_common(asym, fa, false);

  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo metric estimates over a config sweep");
  add_common(sim, fs, true);

  CLI::App* cmp = app.add_subcommand(
      "compare", "asymptotic vs Monte Carlo with pass/fail verdicts");
  add_common(cmp, fc, true);
  cmp->add_option("--rel-tol", rel_tol,
                  "relative error allowed before a row fails")
      ->check(CLI::PositiveNumber);
  cmp->add_option(
         "--b-scale", b_scale,
         "negative control: scales lambda on the asymptotic side only")
      ->check(CLI::PositiveNumber);

  CLI::App* conv = app.add_subcommand(
      "convergence", "KS distance of the scaled rank statistic vs its limit");
  add_common(conv, fv, true);

  std::string figure_id;
  std::uint64_t fig_trials = 100000;
  std::uint64_t fig_seed = 1;
  std::string fig_out;
  unsigned fig_threads = 0;
  CLI::App* fig = app.add_subcommand(
      "figure", "run a canned parameter study (fig2..fig9)");
  fig->add_option("id", figure_id, "study id, fig2..fig9")->required();
  fig->add_option("--trials", fig_trials, "Monte Carlo trials per point");
  fig->add_option("--seed", fig_seed, "base RNG seed");
  fig->add_option("--out", fig_out, "output CSV path (default stdout)");
  fig->add_option("--threads", fig_threads,
                  "worker threads (0 = hardware; never changes results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // all command-line mistakes are configuration errors
  }

  try {
    if (asym->parsed()) return kbest::cli::cmd_asymptotic(load(fa));
    if (sim->parsed()) return kbest::cli::cmd_simulate(load(fs), fs.threads);
    if (cmp->parsed()) {
      return kbest::cli::cmd_compare(load(fc), rel_tol, b_scale, fc.threads);
    }
    if (conv->parsed()) {
      return kbest::cli::cmd_convergence(load(fv), fv.threads);
    }
    if (fig->parsed()) {
      return kbest::cli::cmd_figure(figure_id, fig_trials, fig_seed, fig_out,
                                    fig_threads);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}
