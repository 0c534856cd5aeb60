#include "commands.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include "csv.hpp"
#include "kbest/asymptotics.hpp"
#include "kbest/montecarlo.hpp"
#include "kbest/presets.hpp"

namespace kbest::cli {
namespace {

struct PointRow {
  SystemParams params;
  std::optional<CsiParams> csi;
  double sweep_value = 0.0;
};

// Grid expansion: without a sweep the config itself is the single row.
std::vector<PointRow> expand(const RunConfig& cfg) {
  std::vector<PointRow> rows;
  if (!cfg.sweep_field) {
    rows.push_back({cfg.params, cfg.csi, 0.0});
    return rows;
  }
  for (const double g : cfg.grid) {
    PointRow row{cfg.params, cfg.csi, g};
    apply_sweep_value(row.params, row.csi, *cfg.sweep_field, g);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> header_with_sweep(const RunConfig& cfg,
                                           std::vector<std::string> tail) {
  std::vector<std::string> header;
  if (cfg.sweep_field) header.push_back(*cfg.sweep_field);
  header.insert(header.end(), tail.begin(), tail.end());
  return header;
}

}  // namespace

int cmd_asymptotic(const RunConfig& cfg) {
  CsvWriter csv(header_with_sweep(cfg, {"value", "quad_err", "status"}));
  bool quad_failed = false;
  for (const PointRow& row : expand(cfg)) {
    const AsymptoticResult r = evaluate(cfg.metric, row.params, row.csi);
    quad_failed = quad_failed || !r.converged;
    std::vector<std::string> cells;
    if (cfg.sweep_field) cells.push_back(format_double(row.sweep_value));
    cells.push_back(format_double(r.value));
    cells.push_back(format_double(r.quadrature_err));
    cells.push_back(r.converged ? "ok" : "quad_fail");
    csv.add_row(std::move(cells));
  }
  if (!write_csv(csv, cfg.out)) return 2;
  return quad_failed ? 3 : 0;
}

int cmd_simulate(const RunConfig& cfg, unsigned threads) {
  CsvWriter csv(header_with_sweep(
      cfg, {"mc_mean", "mc_stderr", "n_trials", "seed"}));
  std::uint64_t row_index = 0;
  for (const PointRow& row : expand(cfg)) {
    const std::uint64_t row_seed = cfg.seed + row_index;
    const EstimateResult e = estimate(cfg.metric, row.params, row.csi,
                                      cfg.n_trials, row_seed, threads);
    std::vector<std::string> cells;
    if (cfg.sweep_field) cells.push_back(format_double(row.sweep_value));
    cells.push_back(format_double(e.mean));
    cells.push_back(format_double(e.std_error));
    cells.push_back(format_u64(e.n_trials));
    cells.push_back(format_u64(e.seed));
    csv.add_row(std::move(cells));
    ++row_index;
  }
  if (!write_csv(csv, cfg.out)) return 2;
  return 0;
}

int cmd_compare(const RunConfig& cfg, double rel_tol, double b_scale,
                unsigned threads) {
  CsvWriter csv(header_with_sweep(
      cfg, {"asymptotic", "quad_err", "mc_mean", "mc_stderr", "rel_err",
            "tol", "status"}));
  bool quad_failed = false;
  bool mismatch = false;
  std::uint64_t row_index = 0;
  for (const PointRow& row : expand(cfg)) {
    SystemParams asym_params = row.params;
    asym_params.lambda *= b_scale;  // negative control; 1.0 in normal runs
    const AsymptoticResult a = evaluate(cfg.metric, asym_params, row.csi);
    const std::uint64_t row_seed = cfg.seed + row_index;
    const EstimateResult e = estimate(cfg.metric, row.params, row.csi,
                                      cfg.n_trials, row_seed, threads);

    double rel_err;
    if (e.mean == 0.0) {
      rel_err = a.value == 0.0 ? 0.0 : kUnlimitedPower;
    } else {
      rel_err = std::fabs(a.value - e.mean) / std::fabs(e.mean);
    }
    const double tol =
        e.mean == 0.0
            ? kUnlimitedPower
            : std::max(rel_tol, 3.0 * e.std_error / std::fabs(e.mean));
    const bool row_quad_fail = !a.converged;
    const bool row_fail = !row_quad_fail && rel_err > tol;
    quad_failed = quad_failed || row_quad_fail;
    mismatch = mismatch || row_fail;

    std::vector<std::string> cells;
    if (cfg.sweep_field) cells.push_back(format_double(row.sweep_value));
    cells.push_back(format_double(a.value));
    cells.push_back(format_double(a.quadrature_err));
    cells.push_back(format_double(e.mean));
    cells.push_back(format_double(e.std_error));
    cells.push_back(format_double(rel_err));
    cells.push_back(format_double(tol));
    cells.push_back(row_quad_fail ? "quad_fail" : (row_fail ? "fail" : "pass"));
    csv.add_row(std::move(cells));
    ++row_index;
  }
  if (!write_csv(csv, cfg.out)) return 2;
  if (quad_failed) return 3;
  return mismatch ? 1 : 0;
}

int cmd_convergence(const RunConfig& cfg, unsigned threads) {
  if (!cfg.sweep_field || *cfg.sweep_field != "n_users") {
    throw ConfigError("convergence needs 'sweep = n_users' with a grid");
  }
  CsvWriter csv({"n_users", "ks_distance", "decreasing"});
  double prev = 0.0;
  std::uint64_t row_index = 0;
  for (const PointRow& row : expand(cfg)) {
    const double d =
        ks_statistic(row.params, cfg.n_trials, cfg.seed + row_index, threads);
    const bool decreasing = row_index == 0 || d < prev;
    csv.add_row({format_double(row.sweep_value), format_double(d),
                 decreasing ? "1" : "0"});
    prev = d;
    ++row_index;
  }
  if (!write_csv(csv, cfg.out)) return 2;
  return 0;
}

int cmd_figure(const std::string& id, std::uint64_t trials, std::uint64_t seed,
               const std::string& out, unsigned threads) {
  const auto columns = presets::study_columns(id);  // throws on unknown id
  std::vector<std::string> header = columns;
  header.insert(header.end(),
                {"asymptotic", "quad_err", "mc_mean", "mc_stderr"});
  CsvWriter csv(header);

  bool quad_failed = false;
  std::uint64_t row_index = 0;
  for (const presets::StudyRow& row : presets::study_rows(id)) {
    const AsymptoticResult a = evaluate(row.metric, row.params, row.csi);
    const EstimateResult e = estimate(row.metric, row.params, row.csi, trials,
                                      seed + row_index, threads);
    quad_failed = quad_failed || !a.converged;

    std::vector<std::string> cells;
    for (const double label : row.labels) {
      cells.push_back(format_double(label));
    }
    cells.push_back(format_double(a.value));
    cells.push_back(format_double(a.quadrature_err));
    cells.push_back(format_double(e.mean));
    cells.push_back(format_double(e.std_error));
    csv.add_row(std::move(cells));
    ++row_index;
  }
  if (!write_csv(csv, out)) return 2;
  return quad_failed ? 3 : 0;
}

}  // namespace kbest::cli
