// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "pocmt/hash.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

/// How a capacity-bounded adversary spreads solved challenges over its
/// identities. `concentrate` fills identities in creation order up to k
/// each; `spread` hands out one solve at a time round-robin; `rotate` is
/// concentrate with the starting identity advancing by one every
/// `rotate_period` windows.
enum class AllocationStrategy { concentrate, spread, rotate };

/// Binomial(k, p) solve count for one validator's window challenges.
int honest_solves(int k, double p, HashStream& stream);

/// Minimum humans able to solve all s*k challenges in one window at
/// `tau_h` solves per human: ceil(s*k / tau_h).
std::int64_t min_humans(std::int64_t identities, std::int64_t k,
                        std::int64_t tau_h);

/// Per-identity solve allocation under total capacity M. The result sums to
/// min(M, identities*k) and never exceeds k per identity. Deterministic in
/// identity creation order.
std::vector<int> allocate_adversary(int identities, std::int64_t capacity,
                                    int k, AllocationStrategy strategy,
                                    Window window = 0, int rotate_period = 1);

/// Per-window solve accounting. Honest solves are identity-bound counts;
/// adversarial solves additionally draw down a hard human-time capacity
/// (M = m * tau_h). Automated solves (the epsilon channel) are tracked
/// separately and never touch the capacity.
class WindowLedger {
 public:
  WindowLedger(Window window, int issued_per_validator,
               std::int64_t adversary_capacity);

  void record_honest(ValidatorId v, int solved);
  void record_adversarial(ValidatorId v, int solved);
  void record_automated(ValidatorId v, int solved);

  /// Human-attributed solves for v (0 when unrecorded).
  int solved(ValidatorId v) const;
  /// Solves credited to engagement: human + automated, clamped at issued.
  int credited(ValidatorId v) const;

  Window window() const { return window_; }
  int issued_per_validator() const { return issued_; }
  std::int64_t adversary_spent() const { return adversary_spent_; }
  std::int64_t adversary_capacity() const { return adversary_capacity_; }
  std::int64_t honest_total() const { return honest_total_; }

  /// Re-checks the ledger invariants (bounds, capacity, spent == sum of
  /// adversarial solves); throws std::logic_error on breach.
  void verify() const;

 private:
  struct Entry {
    int human = 0;
    int automated = 0;
    bool adversarial = false;
  };
  Entry& entry(ValidatorId v);
  const Entry* find(ValidatorId v) const;

  Window window_;
  int issued_;
  std::int64_t adversary_capacity_;
  std::int64_t adversary_spent_ = 0;
  std::int64_t honest_total_ = 0;
  std::vector<std::pair<ValidatorId, Entry>> entries_;  // sorted by id
};

}  // namespace pocmt
