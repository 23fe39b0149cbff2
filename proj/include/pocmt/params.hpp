// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "pocmt/types.hpp"

namespace pocmt {

/// Per-window challenge rate k(d): a constant, optionally overridden by a
/// cyclic schedule (k(d) = cycle[d mod cycle.size()]).
struct RateSchedule {
  int base = 1;
  std::vector<int> cycle;

  int at(Window d) const {
    if (cycle.empty()) return base;
    return cycle[static_cast<std::size_t>(d % static_cast<Window>(cycle.size()))];
  }
  int max_rate() const;
  void validate() const;
};

/// Scoring and dynamics constants. Field names follow their roles; the
/// weights multiply (engagement, participation, availability) respectively.
struct ProtocolParams {
  double weight_engagement = 1.0;     // alpha
  double weight_participation = 0.5;  // beta
  double weight_availability = 0.1;   // gamma
  double boost_engagement = 1.0;      // kappa_h, per solved challenge
  double boost_participation = 0.5;   // kappa_p, per compliant epoch
  double boost_availability = 0.2;    // kappa_u, per online epoch
  double decay_rate = 0.05;           // lambda, offline availability decay
  double slash_factor = 0.1;          // delta, multiplicative slash on P
  double leader_scale = 1.0;          // theta
  double committee_scale = 10.0;      // c

  // Ablation knobs; defaults keep the base dynamics.
  double availability_cap = std::numeric_limits<double>::infinity();
  double engagement_decay = 0.0;  // aging rate on H at window boundaries

  void validate() const;  // throws std::invalid_argument naming the field
};

struct HcoParams {
  double honest_solve_prob = 0.98;
  double automated_solve_prob = 0.0;  // epsilon(d), outside the capacity ledger
  RateSchedule challenge_rate;
  int human_solve_cap = 1;  // tau_h, per-human solves per window

  void validate() const;
};

}  // namespace pocmt
