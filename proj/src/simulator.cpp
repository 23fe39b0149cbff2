// SPDX-License-Identifier: Apache-2.0
#include "pocmt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "pocmt/election.hpp"
#include "pocmt/hash.hpp"
#include "pocmt/hco.hpp"
#include "pocmt/state.hpp"
#include "pocmt/timeline.hpp"

namespace pocmt {

namespace {

struct PrivateFork {
  BlockId branch;  // public head when the fork started
  BlockId tip;
  std::vector<BlockId> blocks;
};

class Engine {
 public:
  explicit Engine(const ExperimentConfig& config)
      : cfg_(config),
        timeline_(config.epochs_per_window, config.horizon_epochs),
        adversary_(config.adversary, config.hco.human_solve_cap) {
    cfg_.validate();
    const int n = cfg_.validator_count();
    states_.resize(static_cast<std::size_t>(n));
    scores_.resize(static_cast<std::size_t>(n), 0.0);
    keys_.reserve(static_cast<std::size_t>(n));
    online_streams_.reserve(static_cast<std::size_t>(n));
    solve_streams_.reserve(static_cast<std::size_t>(n));
    for (ValidatorId v = 0; v < n; ++v) {
      keys_.push_back(derive_sortition_key(cfg_.sim.seed, v));
      online_streams_.emplace_back(cfg_.sim.seed, "honest-online",
                                   static_cast<std::uint64_t>(v));
      solve_streams_.emplace_back(cfg_.sim.seed, "honest-solve",
                                  static_cast<std::uint64_t>(v));
    }
    if (cfg_.hco.automated_solve_prob > 0) {
      for (int a = 0; a < cfg_.adversary.sybil_count; ++a) {
        auto_streams_.emplace_back(cfg_.sim.seed, "auto-solve",
                                   static_cast<std::uint64_t>(a));
      }
    }
    public_head_ = store_.genesis();

    trace_.honest_count = cfg_.honest.count;
    trace_.sybil_count = cfg_.adversary.sybil_count;
    trace_.horizon_epochs = cfg_.horizon_epochs;
    trace_.epochs_per_window = cfg_.epochs_per_window;
    trace_.theta = cfg_.protocol.leader_scale;
    trace_.epochs.reserve(static_cast<std::size_t>(cfg_.horizon_epochs));
  }

  ExperimentTrace run() {
    for (Epoch t = 0; t < cfg_.horizon_epochs; ++t) {
      try {
        step(t);
      } catch (const std::logic_error& e) {
        const std::string what = e.what();
        if (what.rfind("simulator:", 0) == 0) throw;
        fail(t, what);
      }
    }
    trace_.final_chain_length = store_.chain_length(public_head_);
    trace_.final_head_weight = store_.chain_weight(public_head_);
    return std::move(trace_);
  }

 private:
  bool is_honest(ValidatorId v) const { return v < cfg_.honest.count; }
  int adversary_index(ValidatorId v) const { return v - cfg_.honest.count; }
  ValidatorId adversary_id(int index) const { return cfg_.honest.count + index; }

  [[noreturn]] void fail(Epoch t, const std::string& what) const {
    throw std::logic_error("simulator: epoch " + std::to_string(t) + ": " + what);
  }

  void step(Epoch t) {
    const Window d = timeline_.window_of(t);

    // (1) adversary step: commit the window's solve allocation at its first
    // epoch; the online set is evaluated per epoch below.
    if (t == timeline_.window_start(d)) {
      const int k = cfg_.hco.challenge_rate.at(d);
      ledger_.emplace(d, k, adversary_.capacity());
      allocation_ = adversary_.allocate(d, k);
    }

    // (2) availability and participation updates.
    for (ValidatorId v = 0; v < cfg_.validator_count(); ++v) {
      bool online;
      if (is_honest(v)) {
        online = online_streams_[static_cast<std::size_t>(v)].bernoulli(
            cfg_.honest.online_prob);
      } else {
        online = adversary_.identity_online(adversary_index(v), d);
        if (online) ++trace_.cost.node_epochs_online;
      }
      ParticipationEvent event = ParticipationEvent::frozen;
      if (online) {
        event = ParticipationEvent::accrued;
      } else {
        switch (cfg_.sim.offline_participation) {
          case OfflineParticipation::frozen:
            event = ParticipationEvent::frozen;
            break;
          case OfflineParticipation::accrue:
            event = ParticipationEvent::accrued;
            break;
          case OfflineParticipation::slash:
            event = ParticipationEvent::slashed;
            break;
        }
      }
      auto& s = states_[static_cast<std::size_t>(v)];
      s = epoch_update(s, online, event, cfg_.protocol);
    }

    // (3) score recomputation; class totals in extended precision so the
    // conservation check holds at 1e-9.
    long double w_honest = 0, w_adv = 0, w_all = 0;
    for (ValidatorId v = 0; v < cfg_.validator_count(); ++v) {
      const double s = compute_score(states_[static_cast<std::size_t>(v)],
                                     cfg_.protocol);
      scores_[static_cast<std::size_t>(v)] = s;
      w_all += s;
      (is_honest(v) ? w_honest : w_adv) += s;
    }
    if (std::abs(static_cast<double>(w_honest + w_adv - w_all)) > 1e-9) {
      fail(t, "weight conservation violated");
    }
    const double W_H = static_cast<double>(w_honest);
    const double W_A = static_cast<double>(w_adv);
    const double W_tot = W_H + W_A;
    if (W_tot > 0 && W_A > cfg_.sim.rho * W_tot + 1e-12) {
      ++trace_.whm_violations;
    }
    if (cfg_.sim.record_scores) trace_.scores.push_back(scores_);

    // (4) leader election.
    const EpochRandomness beacon =
        make_beacon(cfg_.sim.seed, cfg_.sim.beacon_domain_tag, t);
    const ElectionResult elected = elect_leader(
        scores_, t, beacon, keys_, cfg_.protocol.leader_scale);
    if (elected.bootstrap) ++trace_.bootstrap_epochs;

    // (5) proposal + fork choice, (6) equivocation detection + slashing.
    if (elected.leader) {
      propose(t, *elected.leader, elected.winning_value);
    }
    if (fork_) {
      maybe_publish_fork(t);
    }

    // Finality voting over any newly reached public heights.
    if (cfg_.sim.finality) {
      vote_heights(t, W_H, W_A);
    }

    // (7) window boundary: solve accounting and engagement updates.
    if (timeline_.fires_window_update(t)) {
      close_window(d);
    }

    EpochRow row;
    row.epoch = t;
    row.window = d;
    row.w_honest = W_H;
    row.w_adv = W_A;
    row.empty_epoch = !elected.leader.has_value();
    row.bootstrap = elected.bootstrap;
    if (elected.leader) {
      row.leader = *elected.leader;
      row.leader_class = is_honest(*elected.leader) ? ValidatorClass::honest
                                                    : ValidatorClass::adversarial;
    }
    row.head_weight = store_.chain_weight(public_head_);
    row.chain_length = store_.chain_length(public_head_);
    row.evidence_count = evidence_count_;
    trace_.epochs.push_back(row);
  }

  void propose(Epoch t, ValidatorId leader, double winning_value) {
    const double snapshot = scores_[static_cast<std::size_t>(leader)];
    const bool adversarial = !is_honest(leader);

    if (adversarial && cfg_.adversary.private_fork) {
      // Withheld extension of the private fork (started at the current head).
      if (!fork_) {
        fork_ = PrivateFork{};
        fork_->branch = public_head_;
      }
      Block b;
      b.parent = fork_->blocks.empty() ? fork_->branch : fork_->tip;
      b.epoch = t;
      b.leader = leader;
      b.leader_score_snapshot = snapshot;
      b.sortition_value = winning_value;
      const BlockId id = store_.insert(b, /*published=*/false);
      fork_->tip = id;
      fork_->blocks.push_back(id);
      return;
    }

    Block b;
    b.parent = public_head_;
    b.epoch = t;
    b.leader = leader;
    b.leader_score_snapshot = snapshot;
    b.sortition_value = winning_value;
    const BlockId id = store_.insert(b, /*published=*/true);
    if (cfg_.sim.finality) index_published(id);
    if (auto ev = store_.note_equivocation(store_.block(id))) {
      apply_slash(ev->leader);
    }

    if (adversarial && cfg_.adversary.equivocate) {
      Block sibling = b;
      sibling.payload_tag = 1;
      const BlockId sid = store_.insert(sibling, /*published=*/true);
      if (cfg_.sim.finality) index_published(sid);
      if (auto ev = store_.note_equivocation(store_.block(sid))) {
        apply_slash(ev->leader);
      }
    }
    public_head_ = store_.head();
  }

  void apply_slash(ValidatorId offender) {
    auto& s = states_[static_cast<std::size_t>(offender)];
    s.participation *= cfg_.protocol.slash_factor;
    ++trace_.cost.slash_events;
    ++evidence_count_;
  }

  void maybe_publish_fork(Epoch t) {
    const std::int64_t branch_len = store_.chain_length(fork_->branch);
    const double branch_weight = store_.chain_weight(fork_->branch);
    const std::int64_t fork_len = store_.chain_length(fork_->tip) - branch_len;
    const double fork_weight = store_.chain_weight(fork_->tip) - branch_weight;
    const std::int64_t seg_len = store_.chain_length(public_head_) - branch_len;
    const double seg_weight = store_.chain_weight(public_head_) - branch_weight;
    if (seg_len < 0 || !store_.is_ancestor(fork_->branch, public_head_)) {
      fail(t, "public head left the fork branch point");
    }

    const bool wins = fork_weight > seg_weight &&
                      fork_len - seg_len >= cfg_.adversary.fork_publish_lead &&
                      seg_len >= 1;
    const bool hopeless = seg_len - fork_len >= cfg_.adversary.fork_giveup;
    const bool flush = t == cfg_.horizon_epochs - 1;
    if (!wins && !hopeless && !flush) return;

    for (const auto& id : fork_->blocks) store_.publish(id);
    if (cfg_.sim.finality) {
      for (const auto& id : fork_->blocks) index_published(id);
    }
    const BlockId new_head = store_.head();
    ReorgEvent ev;
    ev.epoch = t;
    ev.fork_length = fork_len;
    ev.displaced =
        (new_head == fork_->tip || store_.is_ancestor(fork_->tip, new_head))
            ? seg_len
            : 0;
    trace_.reorgs.push_back(ev);
    public_head_ = new_head;
    fork_.reset();
  }

  void index_published(const BlockId& id) {
    published_by_height_[store_.chain_length(id)].push_back(id);
  }

  void vote_heights(Epoch t, double W_H, double W_A) {
    const std::int64_t head_len = store_.chain_length(public_head_);
    for (std::int64_t h = last_voted_height_ + 1; h <= head_len; ++h) {
      auto& cands = published_by_height_[h];
      // The honest candidate: the block at height h on the head chain.
      BlockId honest_candidate = public_head_;
      for (std::int64_t l = head_len; l > h; --l) {
        honest_candidate = store_.block(honest_candidate).parent;
      }
      bool listed = false;
      for (const auto& c : cands) listed = listed || c == honest_candidate;
      if (!listed) cands.push_back(honest_candidate);

      const double total = W_H + W_A;
      if (total <= 0) continue;
      int finalized_here = 0;
      for (const auto& c : cands) {
        // Honest validators vote for their fork-choice chain's block at this
        // height; the adversary votes for every candidate.
        double vote_weight = W_A;
        if (c == honest_candidate) vote_weight += W_H;
        if (3.0 * vote_weight > 2.0 * total) {
          trace_.finalized.push_back({h, c, t});
          ++finalized_here;
        }
      }
      if (finalized_here > 1) {
        trace_.finality_conflicts += finalized_here - 1;
      }
      last_voted_height_ = h;
    }
  }

  void close_window(Window d) {
    WindowLedger& ledger = *ledger_;
    const int k = ledger.issued_per_validator();
    for (ValidatorId v = 0; v < cfg_.honest.count; ++v) {
      const int x = honest_solves(
          k, cfg_.hco.honest_solve_prob, solve_streams_[static_cast<std::size_t>(v)]);
      ledger.record_honest(v, x);
    }
    for (int a = 0; a < cfg_.adversary.sybil_count; ++a) {
      ledger.record_adversarial(adversary_id(a),
                                allocation_[static_cast<std::size_t>(a)]);
      if (cfg_.hco.automated_solve_prob > 0) {
        const int extra = auto_streams_[static_cast<std::size_t>(a)].binomial(
            k, cfg_.hco.automated_solve_prob);
        if (extra > 0) ledger.record_automated(adversary_id(a), extra);
      }
    }
    ledger.verify();

    for (ValidatorId v = 0; v < cfg_.validator_count(); ++v) {
      auto& s = states_[static_cast<std::size_t>(v)];
      s = window_update(s, ledger.credited(v), k, cfg_.protocol);
    }
    trace_.cost.human_time_spent += ledger.adversary_spent();

    WindowRow row;
    row.window = d;
    row.adversary_spent = ledger.adversary_spent();
    row.adversary_capacity = ledger.adversary_capacity();
    row.honest_solves_total = ledger.honest_total();
    trace_.windows.push_back(row);
    ledger_.reset();
  }

  ExperimentConfig cfg_;
  Timeline timeline_;
  Adversary adversary_;
  BlockStore store_;
  BlockId public_head_{};
  std::vector<CommitmentState> states_;
  std::vector<double> scores_;
  std::vector<SortitionKey> keys_;
  std::vector<HashStream> online_streams_;
  std::vector<HashStream> solve_streams_;
  std::vector<HashStream> auto_streams_;
  std::optional<WindowLedger> ledger_;
  std::vector<int> allocation_;
  std::optional<PrivateFork> fork_;
  std::int64_t evidence_count_ = 0;
  std::int64_t last_voted_height_ = 0;
  std::map<std::int64_t, std::vector<BlockId>> published_by_height_;
  ExperimentTrace trace_;
};

}  // namespace

ExperimentTrace run(const ExperimentConfig& config) {
  Engine engine(config);
  return engine.run();
}

}  // namespace pocmt
