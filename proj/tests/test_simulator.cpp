// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "pocmt/simulator.hpp"
#include "pocmt/sweep.hpp"

using namespace pocmt;
using doctest::Approx;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig c;
  c.adversary.sybil_count = 100;
  c.adversary.humans = 10;
  return c;
}

// Independent per-epoch aggregate growth rates under the standard table:
// every always-online compliant identity accrues beta*kappa_p + gamma*kappa_u
// per epoch, and alpha*kappa_h per expected solved challenge per window.
double honest_rate(const ExperimentConfig& c) {
  const auto& p = c.protocol;
  return p.weight_engagement * p.boost_engagement * c.hco.honest_solve_prob +
         p.weight_participation * p.boost_participation * c.honest.online_prob +
         p.weight_availability * p.boost_availability * c.honest.online_prob;
}

double adversary_rate(const ExperimentConfig& c, double solves_per_window) {
  const auto& p = c.protocol;
  return p.weight_engagement * p.boost_engagement * solves_per_window /
             static_cast<double>(c.adversary.sybil_count) +
         p.weight_participation * p.boost_participation +
         p.weight_availability * p.boost_availability;
}

}  // namespace

TEST_CASE("degenerate run: one honest validator, no adversary") {
  ExperimentConfig c;
  c.honest.count = 1;
  c.adversary.sybil_count = 0;
  c.horizon_epochs = 10;
  c.honest.online_prob = 1.0;
  c.hco.honest_solve_prob = 1.0;
  auto trace = run(c);
  REQUIRE(trace.epochs.size() == 10);
  for (const auto& row : trace.epochs) {
    CHECK(row.w_adv == 0.0);
    if (!row.empty_epoch) {
      CHECK(row.leader == 0);
      CHECK(row.leader_class == ValidatorClass::honest);
    }
  }
  CHECK(trace.cost.human_time_spent == 0);
}

TEST_CASE("identical config and seed give identical traces") {
  ExperimentConfig c = base_config();
  c.horizon_epochs = 300;
  auto a = run(c);
  auto b = run(c);
  REQUIRE(a.epochs.size() == b.epochs.size());
  for (std::size_t i = 0; i < a.epochs.size(); ++i) {
    CHECK(a.epochs[i].w_honest == b.epochs[i].w_honest);
    CHECK(a.epochs[i].w_adv == b.epochs[i].w_adv);
    CHECK(a.epochs[i].leader == b.epochs[i].leader);
    CHECK(a.epochs[i].head_weight == b.epochs[i].head_weight);
  }
  REQUIRE(a.windows.size() == b.windows.size());
  for (std::size_t i = 0; i < a.windows.size(); ++i) {
    CHECK(a.windows[i].adversary_spent == b.windows[i].adversary_spent);
  }

  c.sim.seed = 2;
  auto other = run(c);
  bool differs = false;
  for (std::size_t i = 0; i < a.epochs.size(); ++i) {
    differs = differs || a.epochs[i].leader != other.epochs[i].leader;
  }
  CHECK(differs);
}

TEST_CASE("capacity ledger holds in every simulated window") {
  ExperimentConfig c = base_config();
  c.horizon_epochs = 200;
  c.adversary.humans = 7;
  c.hco.human_solve_cap = 3;
  auto trace = run(c);
  REQUIRE_FALSE(trace.windows.empty());
  for (const auto& w : trace.windows) {
    CHECK(w.adversary_spent <= w.adversary_capacity);
    CHECK(w.adversary_capacity == 21);
  }
}

TEST_CASE("m=0 weight share settles near the rate-ratio prediction") {
  ExperimentConfig c = base_config();
  c.adversary.humans = 0;
  auto trace = run(c);
  const auto& last = trace.epochs.back();
  const double share = last.w_adv / (last.w_honest + last.w_adv);

  // Oracle: per-epoch growth-rate ratio, E=1 so windows are epochs.
  const double wh = honest_rate(c) * c.honest.count;
  const double wa = adversary_rate(c, 0) * c.adversary.sybil_count;
  const double predicted = wa / (wa + wh);
  CHECK(predicted == Approx(0.302).epsilon(0.01));
  CHECK(share == Approx(predicted).epsilon(0.02));
}

TEST_CASE("drift holds for m=0 and fails on a constructed counterexample") {
  ExperimentConfig c = base_config();
  c.adversary.humans = 0;
  c.horizon_epochs = 1500;
  auto trace = run(c);
  auto drift = check_drift(trace);
  CHECK(drift.ok);

  // counterexample: honest weight flat, adversarial growing
  ExperimentTrace fake;
  fake.epochs_per_window = 1;
  for (int t = 0; t < 5; ++t) {
    EpochRow row;
    row.epoch = t;
    row.window = t;
    row.w_honest = 10.0;
    row.w_adv = t;
    fake.epochs.push_back(row);
  }
  auto bad = check_drift(fake);
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_violation == 1);

  ExperimentTrace empty;
  CHECK(check_drift(empty).ok);  // vacuous
}

TEST_CASE("leader share degenerate cases") {
  ExperimentConfig c = base_config();
  c.adversary.sybil_count = 0;
  c.adversary.humans = 0;
  c.horizon_epochs = 200;
  auto honest_only = run(c);
  auto share = leader_share(honest_only, ValidatorClass::adversarial);
  REQUIRE(share.has_value());
  CHECK(*share == 0.0);

  ExperimentConfig all_adv = base_config();
  all_adv.honest.count = 1;  // minimum population; effectively all-adversarial
  all_adv.adversary.sybil_count = 100;
  all_adv.adversary.humans = 100;
  all_adv.honest.online_prob = 0.0;
  all_adv.hco.honest_solve_prob = 0.0;
  all_adv.horizon_epochs = 300;
  auto trace = run(all_adv);
  auto adv_share = leader_share(trace, ValidatorClass::adversarial);
  REQUIRE(adv_share.has_value());
  CHECK(*adv_share > 0.99);
}

TEST_CASE("weight conservation and monitors") {
  ExperimentConfig c = base_config();
  c.horizon_epochs = 500;
  c.sim.rho = 0.5;
  auto trace = run(c);  // would throw on a conservation breach
  // Before the first window's solves land, per-capita scores are equal and
  // the 100 sybils hold two thirds of the weight: epoch 0 is flagged, after
  // which engagement pushes the share under rho for good.
  CHECK(trace.whm_violations == 1);
  c.sim.rho = 0.7;
  auto relaxed = run(c);
  CHECK(relaxed.whm_violations == 0);

  // every epoch appears exactly once
  std::set<Epoch> seen;
  for (const auto& row : trace.epochs) seen.insert(row.epoch);
  CHECK(seen.size() == static_cast<std::size_t>(c.horizon_epochs));
}

TEST_CASE("equivocating adversarial leaders are slashed exactly once") {
  ExperimentConfig c = base_config();
  c.adversary.equivocate = true;
  c.adversary.humans = 30;  // give the adversary meaningful weight
  c.horizon_epochs = 400;
  auto trace = run(c);
  const auto evidence = trace.epochs.back().evidence_count;
  CHECK(evidence > 0);
  CHECK(trace.cost.slash_events == evidence);
  // adversarial-led epochs exist but weight share stays bounded by slashing
  auto share = leader_share(trace, ValidatorClass::adversarial);
  REQUIRE(share.has_value());
  CHECK(*share > 0.0);
}

TEST_CASE("offline adversary decays toward zero availability") {
  ExperimentConfig c = base_config();
  c.adversary.online_policy = OnlinePolicy::offline;
  c.adversary.humans = 0;
  c.horizon_epochs = 300;
  auto trace = run(c);
  // P frozen (default policy), U decays from zero: adversarial weight stays 0
  for (const auto& row : trace.epochs) CHECK(row.w_adv == Approx(0.0));
}

TEST_CASE("two-timescale run: engagement moves only at window boundaries") {
  ExperimentConfig c = base_config();
  c.epochs_per_window = 5;
  c.horizon_epochs = 40;
  c.honest.online_prob = 1.0;
  c.hco.honest_solve_prob = 1.0;
  c.adversary.sybil_count = 0;
  c.sim.record_scores = true;
  auto trace = run(c);
  // W_H jumps by the engagement boost only after each boundary epoch;
  // within a window the per-epoch increment is exactly the P/U accrual.
  const double per_epoch = (0.5 * 0.5 + 0.1 * 0.2) * 50;  // beta*kp + gamma*ku
  for (std::size_t t = 1; t < trace.epochs.size(); ++t) {
    const double diff = trace.epochs[t].w_honest - trace.epochs[t - 1].w_honest;
    const bool after_boundary = trace.epochs[t - 1].epoch % 5 == 4;
    if (after_boundary) {
      CHECK(diff == Approx(per_epoch + 50.0).epsilon(1e-9));  // + alpha*kh*k*N
    } else {
      CHECK(diff == Approx(per_epoch).epsilon(1e-9));
    }
  }
  CHECK(trace.windows.size() == 8);
}

TEST_CASE("private fork adversary publishes and reorg profile is monotone") {
  ExperimentConfig c = base_config();
  c.adversary.sybil_count = 21;
  c.adversary.humans = 21;
  c.adversary.strategy = AllocationStrategy::spread;
  c.adversary.private_fork = true;
  c.horizon_epochs = 2000;
  auto trace = run(c);
  CHECK_FALSE(trace.reorgs.empty());
  auto profile = reorg_profile(trace, 6);
  CHECK(profile[0] == Approx(1.0));
  for (std::size_t k = 1; k < profile.size(); ++k) {
    CHECK(profile[k] <= profile[k - 1]);
  }

  // weight share stays near 0.30 for this population
  const auto& last = trace.epochs.back();
  const double share = last.w_adv / (last.w_honest + last.w_adv);
  CHECK(share == Approx(0.30).epsilon(0.1));
}

TEST_CASE("no reorgs without adversarial weight") {
  ExperimentConfig c = base_config();
  c.adversary.sybil_count = 0;
  c.adversary.humans = 0;
  c.adversary.private_fork = true;
  c.horizon_epochs = 300;
  auto trace = run(c);
  CHECK(trace.reorgs.empty());
  auto profile = reorg_profile(trace, 4);
  for (double f : profile) CHECK(f == 0.0);
}

TEST_CASE("BFT mode: no conflicting finalizations under honest supermajority") {
  ExperimentConfig c = base_config();
  c.adversary.sybil_count = 20;
  c.adversary.humans = 5;
  c.adversary.equivocate = true;
  c.sim.finality = true;
  c.horizon_epochs = 600;
  auto trace = run(c);
  CHECK(trace.finality_conflicts == 0);
  CHECK_FALSE(trace.finalized.empty());
  // the 1/3 condition held throughout (rho monitor at 1/3)
  ExperimentConfig strict = c;
  strict.sim.rho = 1.0 / 3.0;
  auto monitored = run(strict);
  CHECK(monitored.whm_violations == 0);
}

TEST_CASE("fairness deviations shrink for symmetric honest populations") {
  ExperimentConfig c;
  c.honest.count = 2;
  c.adversary.sybil_count = 0;
  c.horizon_epochs = 3000;
  c.honest.online_prob = 1.0;
  c.hco.honest_solve_prob = 1.0;
  c.sim.record_scores = true;
  auto trace = run(c);
  auto dev = fairness_deviation(trace);
  REQUIRE(dev.size() == 2);
  CHECK(dev[0] < 0.02);
  CHECK(dev[1] < 0.02);

  ExperimentConfig single = c;
  single.honest.count = 1;
  single.horizon_epochs = 500;
  auto strace = run(single);
  auto sdev = fairness_deviation(strace);
  REQUIRE(sdev.size() == 1);
  CHECK(sdev[0] == Approx(0.0).epsilon(1e-9));
}

TEST_CASE("eligibility is piecewise constant within windows on H-only scoring") {
  // With participation and availability weights zeroed, scores reduce to
  // alpha * H, which moves only at window boundaries.
  ExperimentConfig c;
  c.honest.count = 8;
  c.adversary.sybil_count = 0;
  c.epochs_per_window = 5;
  c.horizon_epochs = 40;
  c.protocol.weight_participation = 0.0;
  c.protocol.weight_availability = 0.0;
  c.sim.record_scores = true;
  auto trace = run(c);
  REQUIRE(trace.scores.size() == trace.epochs.size());
  for (std::size_t t = 1; t < trace.epochs.size(); ++t) {
    if (trace.epochs[t].window == trace.epochs[t - 1].window) {
      CHECK(trace.scores[t] == trace.scores[t - 1]);
    }
  }
}

TEST_CASE("offline participation policies order the final honest weight") {
  auto final_weight = [](OfflineParticipation policy) {
    ExperimentConfig c;
    c.honest.count = 5;
    c.adversary.sybil_count = 0;
    c.honest.online_prob = 0.5;
    c.horizon_epochs = 300;
    c.sim.offline_participation = policy;
    return run(c).epochs.back().w_honest;
  };
  const double accrue = final_weight(OfflineParticipation::accrue);
  const double frozen = final_weight(OfflineParticipation::frozen);
  const double slash = final_weight(OfflineParticipation::slash);
  CHECK(accrue > frozen);
  CHECK(frozen > slash);
}

TEST_CASE("expected honest-leader delay matches the geometric prediction") {
  ExperimentConfig c = base_config();
  c.horizon_epochs = 3000;
  auto trace = run(c);

  // p_min over the post-warmup trace
  double p_min = 1.0;
  const auto warmup = static_cast<std::size_t>(0.1 * trace.epochs.size());
  for (std::size_t t = warmup; t < trace.epochs.size(); ++t) {
    const auto& row = trace.epochs[t];
    p_min = std::min(p_min, row.w_honest / (row.w_honest + row.w_adv));
  }
  // mean gap between honest-led epochs
  std::int64_t prev = -1, gaps = 0, gap_sum = 0;
  for (const auto& row : trace.epochs) {
    if (row.empty_epoch || row.leader_class != ValidatorClass::honest) continue;
    if (prev >= 0) {
      gap_sum += row.epoch - prev;
      ++gaps;
    }
    prev = row.epoch;
  }
  REQUIRE(gaps > 100);
  const double mean_gap = static_cast<double>(gap_sum) / static_cast<double>(gaps);
  const double nonempty = 1.0 - std::exp(-c.protocol.leader_scale);
  const double predicted = 1.0 / (p_min * nonempty);
  CHECK(mean_gap == Approx(predicted).epsilon(0.25));
}

TEST_CASE("cyclic challenge-rate schedules drive per-window issuance") {
  ExperimentConfig c;
  c.honest.count = 4;
  c.adversary.sybil_count = 2;
  c.adversary.humans = 2;
  c.hco.challenge_rate.cycle = {1, 3};
  c.hco.honest_solve_prob = 1.0;
  c.honest.online_prob = 1.0;
  c.horizon_epochs = 6;
  auto trace = run(c);
  REQUIRE(trace.windows.size() == 6);
  for (const auto& w : trace.windows) {
    const int k = w.window % 2 == 0 ? 1 : 3;
    CHECK(w.honest_solves_total == 4 * k);  // p = 1, everyone solves all
    CHECK(w.adversary_spent <= w.adversary_capacity);
    CHECK(w.adversary_capacity == 2);
  }
}

TEST_CASE("summarize_run captures the headline metrics") {
  ExperimentConfig c = base_config();
  c.horizon_epochs = 200;
  auto trace = run(c);
  RunSpec spec;
  spec.config = c;
  spec.seed = c.sim.seed;
  auto stats = summarize_run(trace, spec);
  CHECK(stats.nonempty_rate > 0.5);
  CHECK(stats.adv_leader_share >= 0.0);
  CHECK(stats.final_weight_share > 0.0);
  CHECK(stats.drift_ok);
  CHECK(stats.chain_length_frac > 0.5);
}
