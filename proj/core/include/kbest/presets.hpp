#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbest/model.hpp"

// Canned parameter studies (ids "fig2".."fig9"): the standard curve families
// used to validate the asymptotic formulas against simulation. Each study
// expands to a flat list of curve points; the CLI `figure` subcommand runs
// both the analytic and Monte Carlo sides for every row.

namespace kbest::presets {

// Baseline network shared by all studies: lambda = 2, beta = 3, m = 2,
// eta = 20, P_M = 1 (0 dB), T = 0.1 (-10 dB). Users, rank, and peak power
// vary per study; defaults here are N = 40, k = 1, unlimited power.
SystemParams base();

struct StudyRow {
  SystemParams params;
  std::optional<CsiParams> csi;
  Metric metric;
  std::vector<double> labels;  // aligned with study_columns(id)
};

bool is_study(std::string_view id);

// Label column names for a study's CSV (e.g. {"n_users","k_rank","p_s"}).
// All label values are linear, matching the stored parameters; "inf" marks
// the uncapped-power rows.
std::vector<std::string> study_columns(std::string_view id);

// All curve points of a study, row order fixed. Throws std::invalid_argument
// for unknown ids.
std::vector<StudyRow> study_rows(std::string_view id);

}  // namespace kbest::presets
