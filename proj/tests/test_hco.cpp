// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "pocmt/hco.hpp"

using namespace pocmt;

namespace {

// Brute-force oracle: smallest m with m * tau_h >= s * k.
std::int64_t min_humans_brute(std::int64_t s, std::int64_t k, std::int64_t tau) {
  for (std::int64_t m = 0;; ++m) {
    if (m * tau >= s * k) return m;
  }
}

std::int64_t sum_of(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

}  // namespace

TEST_CASE("honest_solves degenerate probabilities") {
  HashStream rng(1, "solve-test");
  CHECK(honest_solves(1, 1.0, rng) == 1);
  CHECK(honest_solves(3, 0.0, rng) == 0);
}

TEST_CASE("honest_solves sample mean matches the solve probability") {
  HashStream rng(2, "solve-mc");
  const int draws = 100000;
  std::int64_t total = 0;
  for (int i = 0; i < draws; ++i) total += honest_solves(1, 0.98, rng);
  const double mean = static_cast<double>(total) / draws;
  CHECK(mean >= 0.975);
  CHECK(mean <= 0.985);
}

TEST_CASE("min_humans examples") {
  CHECK(min_humans(100, 1, 1) == 100);
  CHECK(min_humans(100, 2, 4) == 50);
  CHECK(min_humans(7, 3, 5) == min_humans_brute(7, 3, 5));
  CHECK(min_humans(7, 3, 5) == 5);
}

TEST_CASE("min_humans agrees with brute force on the full small grid") {
  for (std::int64_t s = 1; s <= 12; ++s) {
    for (std::int64_t k = 1; k <= 12; ++k) {
      for (std::int64_t tau = 1; tau <= 12; ++tau) {
        CHECK(min_humans(s, k, tau) == min_humans_brute(s, k, tau));
      }
    }
  }
}

TEST_CASE("concentrate fills identities in order") {
  auto alloc = allocate_adversary(100, 10, 1, AllocationStrategy::concentrate);
  for (int i = 0; i < 100; ++i) CHECK(alloc[static_cast<std::size_t>(i)] == (i < 10 ? 1 : 0));
}

TEST_CASE("spread gives everyone k when capacity exceeds demand") {
  auto alloc = allocate_adversary(4, 100, 2, AllocationStrategy::spread);
  CHECK(sum_of(alloc) == 8);
  for (int a : alloc) CHECK(a == 2);
}

TEST_CASE("zero capacity allocates nothing") {
  for (auto strategy : {AllocationStrategy::concentrate,
                        AllocationStrategy::spread, AllocationStrategy::rotate}) {
    auto alloc = allocate_adversary(100, 0, 1, strategy);
    CHECK(sum_of(alloc) == 0);
  }
}

TEST_CASE("allocation invariants hold across strategies and budgets") {
  HashStream rng(3, "alloc-prop");
  for (int trial = 0; trial < 2000; ++trial) {
    const int s = 1 + static_cast<int>(rng.uniform_below(40));
    const int k = 1 + static_cast<int>(rng.uniform_below(5));
    const auto capacity = static_cast<std::int64_t>(rng.uniform_below(
        static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(k) + 10));
    const auto strategy = static_cast<AllocationStrategy>(rng.uniform_below(3));
    const auto window = static_cast<Window>(rng.uniform_below(50));
    auto alloc = allocate_adversary(s, capacity, k, strategy, window, 1);
    CHECK(sum_of(alloc) ==
          std::min<std::int64_t>(capacity, static_cast<std::int64_t>(s) * k));
    for (int a : alloc) {
      CHECK(a >= 0);
      CHECK(a <= k);
    }
  }
}

TEST_CASE("rotate shifts the concentrate start by one identity per window") {
  auto w0 = allocate_adversary(5, 2, 1, AllocationStrategy::rotate, 0, 1);
  auto w1 = allocate_adversary(5, 2, 1, AllocationStrategy::rotate, 1, 1);
  auto w2 = allocate_adversary(5, 2, 1, AllocationStrategy::rotate, 2, 1);
  CHECK(w0 == std::vector<int>{1, 1, 0, 0, 0});
  CHECK(w1 == std::vector<int>{0, 1, 1, 0, 0});
  CHECK(w2 == std::vector<int>{0, 0, 1, 1, 0});

  // Period 2: the start index advances every other window.
  auto p0 = allocate_adversary(5, 2, 1, AllocationStrategy::rotate, 0, 2);
  auto p1 = allocate_adversary(5, 2, 1, AllocationStrategy::rotate, 1, 2);
  auto p2 = allocate_adversary(5, 2, 1, AllocationStrategy::rotate, 2, 2);
  CHECK(p0 == p1);
  CHECK(p2 == w1);
}

TEST_CASE("full capacity engages every identity at exactly k") {
  for (int s : {3, 7, 12}) {
    for (int k : {1, 2, 5}) {
      for (int tau : {1, 3, 8}) {
        const std::int64_t m = min_humans(s, k, tau);
        auto alloc = allocate_adversary(s, m * tau, k,
                                        AllocationStrategy::concentrate);
        for (int a : alloc) CHECK(a == k);
      }
    }
  }
}

TEST_CASE("ledger enforces identity binding and per-identity bounds") {
  WindowLedger ledger(0, 2, 10);
  ledger.record_honest(1, 2);
  CHECK(ledger.solved(1) == 2);
  CHECK(ledger.honest_total() == 2);
  CHECK_THROWS_AS(ledger.record_honest(2, 3), std::logic_error);
  CHECK_THROWS_AS(ledger.record_honest(1, 1), std::logic_error);  // duplicate
  ledger.verify();
}

TEST_CASE("ledger rejects solves beyond the human-time capacity") {
  WindowLedger ledger(0, 1, 2);
  ledger.record_adversarial(10, 1);
  ledger.record_adversarial(11, 1);
  CHECK(ledger.adversary_spent() == 2);
  CHECK_THROWS_AS(ledger.record_adversarial(12, 1), std::logic_error);
  ledger.verify();
  CHECK(ledger.adversary_spent() == ledger.adversary_capacity());
}

TEST_CASE("automated solves sit outside the capacity but credit is clamped") {
  WindowLedger ledger(0, 1, 0);
  ledger.record_adversarial(5, 0);
  ledger.record_automated(5, 3);
  CHECK(ledger.adversary_spent() == 0);
  CHECK(ledger.credited(5) == 1);  // clamped at issued
  ledger.verify();
}

TEST_CASE("unknown validators have zero solves") {
  WindowLedger ledger(4, 1, 1);
  CHECK(ledger.solved(99) == 0);
  CHECK(ledger.credited(99) == 0);
}
