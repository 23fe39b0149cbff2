// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "pocmt/hco.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

enum class OnlinePolicy { always, rotate, offline };

/// Centralized adversary controlling `sybil_count` identities with a hard
/// per-window human-time capacity of humans * tau_h solves.
struct AdversaryConfig {
  int sybil_count = 0;  // s
  int humans = 0;       // m
  AllocationStrategy strategy = AllocationStrategy::concentrate;
  int rotate_period = 1;  // windows between allocation rotations

  OnlinePolicy online_policy = OnlinePolicy::always;
  double online_fraction = 1.0;  // rotate(f): fraction online per epoch

  bool equivocate = false;
  bool private_fork = false;
  // Private-fork publication policy: reveal once the fork leads the public
  // segment by this many blocks (while displacing at least one), abandon
  // once it trails by fork_giveup blocks.
  int fork_publish_lead = 1;
  int fork_giveup = 4;

  void validate() const;
};

/// Cumulative adversarial cost accounts. Human time is the binding one;
/// the other two are machine-coverable and tracked as plain counters.
struct CostLedger {
  std::int64_t human_time_spent = 0;    // sum over windows of X(d)
  std::int64_t node_epochs_online = 0;  // c_p proxy
  std::int64_t slash_events = 0;        // c_s proxy
};

/// Sum of per-window adversarial solves; checked against the ledger.
std::int64_t total_human_time(const CostLedger& ledger);

/// Per-epoch adversary decisions. Identity indices are 0..s-1 in creation
/// order; the simulator maps them onto global validator ids.
class Adversary {
 public:
  Adversary(AdversaryConfig config, int tau_h);

  const AdversaryConfig& config() const { return config_; }
  std::int64_t capacity() const {
    return static_cast<std::int64_t>(config_.humans) * tau_h_;
  }

  /// Window-start solve allocation (size sybil_count, each entry <= k).
  std::vector<int> allocate(Window window, int k) const;

  /// Online status of identity `index` at the given epoch/window under the
  /// configured policy. rotate(f) keeps ceil(f*s) identities online and
  /// advances the online block by its size each window.
  bool identity_online(int index, Window window) const;

  int online_count() const;

 private:
  AdversaryConfig config_;
  int tau_h_;
};

}  // namespace pocmt
