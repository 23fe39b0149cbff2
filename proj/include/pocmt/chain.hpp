// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pocmt/hash.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

using BlockId = Digest;

struct Block {
  BlockId id{};
  BlockId parent{};
  Epoch epoch = 0;
  ValidatorId leader = -1;
  double leader_score_snapshot = 0.0;  // frozen at proposal, never recomputed
  double sortition_value = 0.0;
  std::uint64_t payload_tag = 0;  // stands in for the transaction set
};

struct EquivocationEvidence {
  ValidatorId leader = -1;
  Epoch epoch = 0;
  BlockId block_a{};
  BlockId block_b{};
};

struct FinalityVote {
  ValidatorId voter = -1;
  BlockId block{};
  double weight = 0.0;
};

/// Block identity: digest of (parent, epoch, leader, payload_tag).
BlockId block_digest(const BlockId& parent, Epoch epoch, ValidatorId leader,
                     std::uint64_t payload_tag);

/// Strict 2/3 weighted quorum: true iff 3 * sum(vote weights) > 2 * total.
/// All votes must reference the same block.
bool finalize(std::span<const FinalityVote> votes, double total_weight);

/// Parent-linked block DAG rooted at a genesis marker. Tracks cumulative
/// chain weight and length per block, publication status (withheld blocks
/// do not count as public tips), and equivocation bookkeeping.
///
/// Cumulative weights are fixed at insertion from the proposer's score
/// snapshot, so fork choice over a given block set is stable regardless of
/// later score changes.
class BlockStore {
 public:
  BlockStore();

  const BlockId& genesis() const { return genesis_; }

  /// Validates the parent link and epoch ordering, assigns the block id,
  /// and stores the block. Returns the stored id.
  BlockId insert(Block block, bool published = true);

  /// Reveals a withheld block (and does nothing for published ones).
  void publish(const BlockId& id);

  bool contains(const BlockId& id) const;
  const Block& block(const BlockId& id) const;
  bool is_published(const BlockId& id) const;

  /// Root-to-tip sum of leader score snapshots (genesis contributes 0).
  double chain_weight(const BlockId& tip) const;
  /// Number of non-genesis blocks from genesis to tip.
  std::int64_t chain_length(const BlockId& tip) const;

  /// Published blocks without published children; genesis when empty.
  std::vector<BlockId> public_tips() const;

  /// Maximum-weight tip; ties broken by greater length, then lower id.
  BlockId fork_choice(std::span<const BlockId> tips) const;
  /// fork_choice over the current public tips.
  BlockId head() const;

  /// Evidence if the store already holds a different block with the same
  /// (leader, epoch). Emitted at most once per offending pair.
  std::optional<EquivocationEvidence> note_equivocation(const Block& incoming);

  /// True iff `ancestor` lies on the path from genesis to `tip`.
  bool is_ancestor(const BlockId& ancestor, const BlockId& tip) const;

  std::int64_t block_count() const {
    return static_cast<std::int64_t>(blocks_.size()) - 1;
  }

 private:
  struct Meta {
    Block block;
    double cum_weight = 0.0;
    std::int64_t length = 0;
    bool published = true;
  };
  const Meta& meta(const BlockId& id) const;
  bool better_tip(const Meta& a, const BlockId& a_id, const Meta& b,
                  const BlockId& b_id) const;
  void tip_became_public(const BlockId& id);

  BlockId genesis_{};
  std::map<BlockId, Meta> blocks_;
  std::map<BlockId, std::vector<BlockId>> children_;
  std::map<std::pair<ValidatorId, Epoch>, BlockId> first_by_slot_;
  std::set<std::pair<ValidatorId, Epoch>> evidence_emitted_;
  // Published leaves, maintained incrementally; best_tip_ caches the fork
  // choice winner (a published child always outranks its parent, so the
  // cache never needs a rescan).
  std::set<BlockId> tips_;
  BlockId best_tip_{};
};

}  // namespace pocmt
