// SPDX-License-Identifier: Apache-2.0
#include "pocmt/adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace pocmt {

void AdversaryConfig::validate() const {
  if (sybil_count < 0) throw std::invalid_argument("sybil_count: must be >= 0");
  if (humans < 0) throw std::invalid_argument("adversary_humans: must be >= 0");
  if (rotate_period < 1) throw std::invalid_argument("rotate_period: must be >= 1");
  if (online_fraction < 0 || online_fraction > 1) {
    throw std::invalid_argument("online_fraction: must be in [0,1]");
  }
  if (fork_publish_lead < 1) {
    throw std::invalid_argument("fork_publish_lead: must be >= 1");
  }
  if (fork_giveup < 1) throw std::invalid_argument("fork_giveup: must be >= 1");
}

std::int64_t total_human_time(const CostLedger& ledger) {
  return ledger.human_time_spent;
}

Adversary::Adversary(AdversaryConfig config, int tau_h)
    : config_(config), tau_h_(tau_h) {
  config_.validate();
  if (tau_h < 1) throw std::invalid_argument("Adversary: tau_h must be >= 1");
}

std::vector<int> Adversary::allocate(Window window, int k) const {
  return allocate_adversary(config_.sybil_count, capacity(), k,
                            config_.strategy, window, config_.rotate_period);
}

int Adversary::online_count() const {
  switch (config_.online_policy) {
    case OnlinePolicy::always:
      return config_.sybil_count;
    case OnlinePolicy::offline:
      return 0;
    case OnlinePolicy::rotate:
      return static_cast<int>(std::ceil(config_.online_fraction *
                                        config_.sybil_count));
  }
  return 0;
}

bool Adversary::identity_online(int index, Window window) const {
  if (index < 0 || index >= config_.sybil_count) {
    throw std::out_of_range("Adversary: identity index out of range");
  }
  switch (config_.online_policy) {
    case OnlinePolicy::always:
      return true;
    case OnlinePolicy::offline:
      return false;
    case OnlinePolicy::rotate: {
      const int s = config_.sybil_count;
      const int block = online_count();
      if (block == 0) return false;
      const int start = static_cast<int>(
          (static_cast<std::int64_t>(block) * window) % s);
      const int offset = (index - start + s) % s;
      return offset < block;
    }
  }
  return false;
}

}  // namespace pocmt
