// SPDX-License-Identifier: Apache-2.0
#include "pocmt/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pocmt {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

int RateSchedule::max_rate() const {
  if (cycle.empty()) return base;
  return *std::max_element(cycle.begin(), cycle.end());
}

void RateSchedule::validate() const {
  require(base >= 1, "challenge_rate: must be >= 1");
  for (int k : cycle) require(k >= 1, "challenge_rate_cycle: entries must be >= 1");
}

void ProtocolParams::validate() const {
  require(weight_engagement >= 0, "alpha: must be >= 0");
  require(weight_participation >= 0, "beta: must be >= 0");
  require(weight_availability >= 0, "gamma: must be >= 0");
  require(weight_engagement + weight_participation + weight_availability > 0,
          "weights: at least one of alpha/beta/gamma must be > 0");
  require(boost_engagement > 0, "kappa_h: must be > 0");
  require(boost_participation > 0, "kappa_p: must be > 0");
  require(boost_availability > 0, "kappa_u: must be > 0");
  require(decay_rate > 0, "lambda: must be > 0");
  require(slash_factor > 0 && slash_factor < 1, "delta: must be in (0,1)");
  require(leader_scale > 0, "theta: must be > 0");
  require(committee_scale >= 0, "committee_scale: must be >= 0");
  require(availability_cap > 0, "availability_cap: must be > 0");
  require(engagement_decay >= 0, "engagement_decay: must be >= 0");
  require(std::isfinite(decay_rate) && std::isfinite(slash_factor),
          "params: values must be finite");
}

void HcoParams::validate() const {
  require(honest_solve_prob >= 0 && honest_solve_prob <= 1,
          "honest_solve_prob: must be in [0,1]");
  require(automated_solve_prob >= 0 && automated_solve_prob <= 1,
          "automated_solve_prob: must be in [0,1]");
  challenge_rate.validate();
  require(human_solve_cap >= 1, "tau_h: must be >= 1");
}

}  // namespace pocmt
