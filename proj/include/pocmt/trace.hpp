// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pocmt/adversary.hpp"
#include "pocmt/chain.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

struct EpochRow {
  Epoch epoch = 0;
  Window window = 0;
  double w_honest = 0.0;
  double w_adv = 0.0;
  ValidatorId leader = -1;  // -1 = empty epoch
  ValidatorClass leader_class = ValidatorClass::honest;
  bool empty_epoch = true;
  bool bootstrap = false;  // zero-total-score uniform election
  double head_weight = 0.0;
  std::int64_t chain_length = 0;
  std::int64_t evidence_count = 0;  // cumulative
};

struct WindowRow {
  Window window = 0;
  std::int64_t adversary_spent = 0;     // X(d)
  std::int64_t adversary_capacity = 0;  // M = m * tau_h
  std::int64_t honest_solves_total = 0;
};

/// One private-fork publication: how many public-chain blocks it displaced
/// (0 when the reveal lost fork choice) and how long the fork was.
struct ReorgEvent {
  Epoch epoch = 0;
  std::int64_t displaced = 0;
  std::int64_t fork_length = 0;
};

struct FinalizationRecord {
  std::int64_t height = 0;
  BlockId block{};
  Epoch epoch = 0;
};

struct ExperimentTrace {
  int honest_count = 0;
  int sybil_count = 0;
  std::int64_t horizon_epochs = 0;
  std::int64_t epochs_per_window = 1;
  double theta = 1.0;

  std::vector<EpochRow> epochs;
  std::vector<WindowRow> windows;
  std::vector<ReorgEvent> reorgs;
  std::vector<FinalizationRecord> finalized;
  std::int64_t finality_conflicts = 0;
  std::int64_t whm_violations = 0;  // epochs with W_A > rho * W_tot
  std::int64_t bootstrap_epochs = 0;
  CostLedger cost;

  std::int64_t final_chain_length = 0;
  double final_head_weight = 0.0;

  /// Per-epoch score vectors, only populated when sim.record_scores is set.
  std::vector<std::vector<double>> scores;
};

struct DriftCheck {
  bool ok = true;
  Window first_violation = -1;
};

/// True iff the honest-minus-adversarial weight gap, sampled at the first
/// epoch of each window, never decreases (within `tol`).
DriftCheck check_drift(const ExperimentTrace& trace, double tol = 1e-9);

/// Fraction of non-empty epochs led by the given class; nullopt when every
/// epoch was empty.
std::optional<double> leader_share(const ExperimentTrace& trace,
                                   ValidatorClass cls);

/// Per honest validator: |empirical leader frequency - mean exact win
/// probability| over the horizon. Requires recorded scores.
std::vector<double> fairness_deviation(const ExperimentTrace& trace);

/// Pools leader counts and exact win probabilities across several traces
/// (same population shape) for the pooled fairness deviation.
class FairnessAccumulator {
 public:
  void add(const ExperimentTrace& trace);
  std::vector<double> deviations() const;
  std::int64_t pooled_epochs() const { return epochs_; }
  const std::vector<std::int64_t>& led() const { return led_; }
  const std::vector<double>& probability_sums() const { return prob_sum_; }

 private:
  std::vector<std::int64_t> led_;
  std::vector<double> prob_sum_;
  std::int64_t epochs_ = 0;
};

/// profile[k] = fraction of fork publications displacing >= k public
/// blocks, for k = 0..max_depth. All zeros when nothing was published.
std::vector<double> reorg_profile(const ExperimentTrace& trace, int max_depth);

}  // namespace pocmt
