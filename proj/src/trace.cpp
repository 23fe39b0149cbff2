// SPDX-License-Identifier: Apache-2.0
#include "pocmt/trace.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "pocmt/election.hpp"

namespace pocmt {

DriftCheck check_drift(const ExperimentTrace& trace, double tol) {
  DriftCheck result;
  bool have_prev = false;
  double prev_gap = 0.0;
  for (const auto& row : trace.epochs) {
    if (row.epoch % trace.epochs_per_window != 0) continue;  // window starts only
    const double gap = row.w_honest - row.w_adv;
    if (have_prev && gap < prev_gap - tol) {
      result.ok = false;
      result.first_violation = row.window;
      return result;
    }
    prev_gap = gap;
    have_prev = true;
  }
  return result;
}

std::optional<double> leader_share(const ExperimentTrace& trace,
                                   ValidatorClass cls) {
  std::int64_t led = 0;
  std::int64_t nonempty = 0;
  for (const auto& row : trace.epochs) {
    if (row.empty_epoch) continue;
    ++nonempty;
    if (row.leader_class == cls) ++led;
  }
  if (nonempty == 0) return std::nullopt;
  return static_cast<double>(led) / static_cast<double>(nonempty);
}

void FairnessAccumulator::add(const ExperimentTrace& trace) {
  if (trace.scores.size() != trace.epochs.size() || trace.epochs.empty()) {
    throw std::logic_error(
        "fairness: trace has no recorded per-epoch scores");
  }
  const auto honest = static_cast<std::size_t>(trace.honest_count);
  if (led_.empty()) {
    led_.assign(honest, 0);
    prob_sum_.assign(honest, 0.0);
  }
  if (led_.size() != honest) {
    throw std::logic_error("fairness: population shape mismatch across traces");
  }
  for (std::size_t t = 0; t < trace.epochs.size(); ++t) {
    const auto& row = trace.epochs[t];
    if (!row.empty_epoch && row.leader >= 0 &&
        static_cast<std::size_t>(row.leader) < honest) {
      ++led_[static_cast<std::size_t>(row.leader)];
    }
    const auto win = exact_win_probabilities(trace.scores[t], trace.theta);
    for (std::size_t v = 0; v < honest; ++v) prob_sum_[v] += win[v];
  }
  epochs_ += static_cast<std::int64_t>(trace.epochs.size());
}

std::vector<double> FairnessAccumulator::deviations() const {
  std::vector<double> deviation(led_.size(), 0.0);
  if (epochs_ == 0) return deviation;
  const auto T = static_cast<double>(epochs_);
  for (std::size_t v = 0; v < led_.size(); ++v) {
    deviation[v] = std::abs(static_cast<double>(led_[v]) / T - prob_sum_[v] / T);
  }
  return deviation;
}

std::vector<double> fairness_deviation(const ExperimentTrace& trace) {
  FairnessAccumulator acc;
  acc.add(trace);
  return acc.deviations();
}

std::vector<double> reorg_profile(const ExperimentTrace& trace, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("reorg_profile: bad max_depth");
  std::vector<double> profile(static_cast<std::size_t>(max_depth) + 1, 0.0);
  if (trace.reorgs.empty()) return profile;
  for (const auto& ev : trace.reorgs) {
    for (int k = 0; k <= max_depth; ++k) {
      if (ev.displaced >= k) profile[static_cast<std::size_t>(k)] += 1.0;
    }
  }
  for (double& f : profile) f /= static_cast<double>(trace.reorgs.size());
  return profile;
}

}  // namespace pocmt
