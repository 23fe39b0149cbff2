// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace pocmt {

struct QuorumEnumeration {
  std::int64_t cases = 0;      // voting patterns examined
  std::int64_t conflicts = 0;  // patterns finalizing two conflicting blocks
};

/// Exhaustive weighted quorum-intersection check. Enumerates validator sets
/// of size 1..max_validators with integer weights 1..max_weight, every
/// adversarial subset whose weight stays strictly below one third of the
/// total, every honest vote split across two conflicting blocks (including
/// abstention), and every adversarial double-voting pattern. Counts the
/// patterns where both blocks collect a strict 2/3 weighted quorum.
///
/// Integer arithmetic throughout, so the 2/3 boundary is exact.
QuorumEnumeration enumerate_quorum_conflicts(int max_validators,
                                             int max_weight);

}  // namespace pocmt
