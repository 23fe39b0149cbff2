// SPDX-License-Identifier: Apache-2.0
#include "pocmt/bft_enum.hpp"

#include <stdexcept>
#include <vector>

namespace pocmt {

namespace {

// Honest votes: X, Y or abstain. Adversarial votes: X, Y, both or abstain.
enum HonestVote { kHonestX, kHonestY, kHonestAbstain };

void enumerate_weights(int n, int max_weight, std::vector<int>& weights,
                       QuorumEnumeration& out);

void enumerate_patterns(const std::vector<int>& weights,
                        QuorumEnumeration& out) {
  const int n = static_cast<int>(weights.size());
  std::int64_t total = 0;
  for (int w : weights) total += w;

  // Adversarial subsets as bitmasks.
  for (int adv_mask = 0; adv_mask < (1 << n); ++adv_mask) {
    std::int64_t adv_weight = 0;
    for (int i = 0; i < n; ++i) {
      if (adv_mask & (1 << i)) adv_weight += weights[static_cast<std::size_t>(i)];
    }
    if (3 * adv_weight >= total) continue;  // adversarial weight must stay under one third

    std::vector<int> honest_ids;
    std::vector<int> adv_ids;
    for (int i = 0; i < n; ++i) {
      if (adv_mask & (1 << i)) {
        adv_ids.push_back(i);
      } else {
        honest_ids.push_back(i);
      }
    }

    std::int64_t honest_patterns = 1;
    for (std::size_t i = 0; i < honest_ids.size(); ++i) honest_patterns *= 3;
    std::int64_t adv_patterns = 1;
    for (std::size_t i = 0; i < adv_ids.size(); ++i) adv_patterns *= 4;

    for (std::int64_t hp = 0; hp < honest_patterns; ++hp) {
      std::int64_t hx = 0, hy = 0;
      std::int64_t code = hp;
      for (int id : honest_ids) {
        switch (code % 3) {
          case kHonestX: hx += weights[static_cast<std::size_t>(id)]; break;
          case kHonestY: hy += weights[static_cast<std::size_t>(id)]; break;
          default: break;
        }
        code /= 3;
      }
      for (std::int64_t ap = 0; ap < adv_patterns; ++ap) {
        std::int64_t ax = 0, ay = 0;
        std::int64_t acode = ap;
        for (int id : adv_ids) {
          const std::int64_t w = weights[static_cast<std::size_t>(id)];
          switch (acode % 4) {
            case 0: ax += w; break;
            case 1: ay += w; break;
            case 2: ax += w; ay += w; break;  // double vote
            default: break;
          }
          acode /= 4;
        }
        ++out.cases;
        const bool x_final = 3 * (hx + ax) > 2 * total;
        const bool y_final = 3 * (hy + ay) > 2 * total;
        if (x_final && y_final) ++out.conflicts;
      }
    }
  }
}

void enumerate_weights(int n, int max_weight, std::vector<int>& weights,
                       QuorumEnumeration& out) {
  if (static_cast<int>(weights.size()) == n) {
    enumerate_patterns(weights, out);
    return;
  }
  for (int w = 1; w <= max_weight; ++w) {
    weights.push_back(w);
    enumerate_weights(n, max_weight, weights, out);
    weights.pop_back();
  }
}

}  // namespace

QuorumEnumeration enumerate_quorum_conflicts(int max_validators,
                                             int max_weight) {
  if (max_validators < 1 || max_validators > 8 || max_weight < 1) {
    throw std::invalid_argument("enumerate_quorum_conflicts: bad bounds");
  }
  QuorumEnumeration out;
  for (int n = 1; n <= max_validators; ++n) {
    std::vector<int> weights;
    enumerate_weights(n, max_weight, weights, out);
  }
  return out;
}

}  // namespace pocmt
