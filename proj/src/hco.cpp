// SPDX-License-Identifier: Apache-2.0
#include "pocmt/hco.hpp"

#include <algorithm>
#include <stdexcept>

namespace pocmt {

int honest_solves(int k, double p, HashStream& stream) {
  if (k < 1) throw std::invalid_argument("honest_solves: k must be >= 1");
  if (p < 0 || p > 1) throw std::invalid_argument("honest_solves: p outside [0,1]");
  return stream.binomial(k, p);
}

std::int64_t min_humans(std::int64_t identities, std::int64_t k,
                        std::int64_t tau_h) {
  if (identities < 1 || k < 1 || tau_h < 1) {
    throw std::invalid_argument("min_humans: arguments must be >= 1");
  }
  return (identities * k + tau_h - 1) / tau_h;
}

std::vector<int> allocate_adversary(int identities, std::int64_t capacity,
                                    int k, AllocationStrategy strategy,
                                    Window window, int rotate_period) {
  if (identities < 0 || capacity < 0 || k < 1) {
    throw std::invalid_argument("allocate_adversary: bad arguments");
  }
  std::vector<int> alloc(static_cast<std::size_t>(identities), 0);
  if (identities == 0) return alloc;

  std::int64_t budget =
      std::min<std::int64_t>(capacity, static_cast<std::int64_t>(identities) * k);

  const auto n = static_cast<std::size_t>(identities);
  std::size_t start = 0;
  if (strategy == AllocationStrategy::rotate) {
    if (rotate_period < 1) {
      throw std::invalid_argument("allocate_adversary: rotate_period must be >= 1");
    }
    start = static_cast<std::size_t>((window / rotate_period) %
                                     static_cast<Window>(identities));
  }

  if (strategy == AllocationStrategy::spread) {
    std::size_t i = 0;
    while (budget > 0) {
      if (alloc[i] < k) {
        ++alloc[i];
        --budget;
      }
      i = (i + 1) % n;
    }
  } else {
    for (std::size_t step = 0; step < n && budget > 0; ++step) {
      std::size_t i = (start + step) % n;
      int give = static_cast<int>(std::min<std::int64_t>(k, budget));
      alloc[i] = give;
      budget -= give;
    }
  }
  return alloc;
}

WindowLedger::WindowLedger(Window window, int issued_per_validator,
                           std::int64_t adversary_capacity)
    : window_(window),
      issued_(issued_per_validator),
      adversary_capacity_(adversary_capacity) {
  if (issued_per_validator < 1) {
    throw std::invalid_argument("WindowLedger: issued_per_validator must be >= 1");
  }
  if (adversary_capacity < 0) {
    throw std::invalid_argument("WindowLedger: capacity must be >= 0");
  }
}

WindowLedger::Entry& WindowLedger::entry(ValidatorId v) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const auto& e, ValidatorId id) { return e.first < id; });
  if (it == entries_.end() || it->first != v) {
    it = entries_.insert(it, {v, Entry{}});
  }
  return it->second;
}

const WindowLedger::Entry* WindowLedger::find(ValidatorId v) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const auto& e, ValidatorId id) { return e.first < id; });
  if (it == entries_.end() || it->first != v) return nullptr;
  return &it->second;
}

void WindowLedger::record_honest(ValidatorId v, int solved) {
  if (solved < 0 || solved > issued_) {
    throw std::logic_error("WindowLedger: honest solve count outside [0, k]");
  }
  Entry& e = entry(v);
  if (e.human != 0) throw std::logic_error("WindowLedger: duplicate record");
  e.human = solved;
  honest_total_ += solved;
}

void WindowLedger::record_adversarial(ValidatorId v, int solved) {
  if (solved < 0 || solved > issued_) {
    throw std::logic_error("WindowLedger: adversarial solve count outside [0, k]");
  }
  if (adversary_spent_ + solved > adversary_capacity_) {
    throw std::logic_error("WindowLedger: human-time capacity exceeded");
  }
  Entry& e = entry(v);
  if (e.human != 0) throw std::logic_error("WindowLedger: duplicate record");
  e.human = solved;
  e.adversarial = true;
  adversary_spent_ += solved;
}

void WindowLedger::record_automated(ValidatorId v, int solved) {
  if (solved < 0) throw std::logic_error("WindowLedger: negative automated count");
  Entry& e = entry(v);
  e.automated += solved;
  e.adversarial = true;
}

int WindowLedger::solved(ValidatorId v) const {
  const Entry* e = find(v);
  return e ? e->human : 0;
}

int WindowLedger::credited(ValidatorId v) const {
  const Entry* e = find(v);
  if (!e) return 0;
  return std::min(issued_, e->human + e->automated);
}

void WindowLedger::verify() const {
  std::int64_t adv = 0;
  std::int64_t honest = 0;
  for (const auto& [id, e] : entries_) {
    if (e.human < 0 || e.human > issued_) {
      throw std::logic_error("WindowLedger: per-identity bound violated");
    }
    if (e.adversarial) {
      adv += e.human;
    } else {
      honest += e.human;
    }
  }
  if (adv != adversary_spent_ || honest != honest_total_) {
    throw std::logic_error("WindowLedger: totals out of sync");
  }
  if (adversary_spent_ > adversary_capacity_) {
    throw std::logic_error("WindowLedger: capacity invariant violated");
  }
}

}  // namespace pocmt
