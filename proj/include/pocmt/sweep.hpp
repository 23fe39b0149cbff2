// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pocmt/presets.hpp"
#include "pocmt/trace.hpp"

namespace pocmt {

/// Per-run aggregate used for the preset summary.
struct RunStats {
  std::string swept_value;
  std::uint64_t seed = 0;
  double nonempty_rate = 0.0;
  double adv_leader_share = -1.0;  // -1 = undefined (no non-empty epochs)
  double final_weight_share = 0.0;
  bool drift_ok = true;
  double chain_length_frac = 0.0;
  std::int64_t bootstrap_epochs = 0;
  std::int64_t evidence = 0;
  std::int64_t finality_conflicts = 0;
  std::int64_t whm_violations = 0;
  std::int64_t human_time = 0;
  std::int64_t publications = 0;
  std::vector<std::int64_t> displaced_at_least;  // depths 1..kMaxReorgDepth
  std::vector<std::int64_t> led_counts;          // honest fairness pooling
  std::vector<double> prob_sums;
  std::int64_t epochs = 0;
};

inline constexpr int kMaxReorgDepth = 6;

RunStats summarize_run(const ExperimentTrace& trace, const RunSpec& spec);

/// Executes every run of the preset (up to `jobs` in parallel), writing one
/// trace CSV and one window CSV per run plus a per-preset summary CSV, and
/// optionally an SVG chart of the summary series. File contents depend only
/// on the preset definition, never on scheduling.
void run_preset_to_dir(const Preset& preset, const std::string& out_dir,
                       int jobs, bool svg);

/// Deterministic CSV float format used across all emitted files.
std::string csv_double(double v);

}  // namespace pocmt
