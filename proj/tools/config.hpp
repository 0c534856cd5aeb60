#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbest/model.hpp"

// Flat key=value run configuration ('#' comments). Values for t_intf, p_s,
// p_m and x0 accept a dB suffix ("-10 dB"); p_s additionally accepts "inf".
// All parameters are stored linear. Recognized keys:
//   lambda beta m eta p_m t_intf p_s n_users k_rank
//   metric (avg_throughput|eff_throughput|avg_ber|outage) a_exp ber_c ber_v x0
//   rho delta gamma0 eta_hat beta_hat          (any of these switches CSI on)
//   sweep (field name) grid (comma list, dB/inf legal when the field allows)
//   trials seed out

namespace kbest::cli {

// Configuration mistakes (bad file, bad key, bad value, inconsistent
// combination). main() maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SystemParams params;  // defaults to the shared study baseline
  std::optional<CsiParams> csi;
  Metric metric = AvgThroughput{};
  std::optional<std::string> sweep_field;  // set together with grid
  std::vector<double> grid;                // strictly increasing
  std::uint64_t n_trials = 100000;
  std::uint64_t seed = 1;
  std::string out;  // empty = stdout
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);  // same rules, in-memory

// True if `field` names a sweepable numeric parameter ("lambda".."beta_hat").
bool is_sweepable_field(const std::string& field);

// Writes one grid value into the right field of (params, csi). Integer fields
// reject non-integral values; CSI fields require csi to be configured.
void apply_sweep_value(SystemParams& params, std::optional<CsiParams>& csi,
                       const std::string& field, double value);

}  // namespace kbest::cli
