// SPDX-License-Identifier: Apache-2.0
#include "pocmt/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace pocmt {

BlockId block_digest(const BlockId& parent, Epoch epoch, ValidatorId leader,
                     std::uint64_t payload_tag) {
  return HashInput{}
      .tag("block")
      .bytes(parent)
      .i64(epoch)
      .i64(leader)
      .u64(payload_tag)
      .digest();
}

bool finalize(std::span<const FinalityVote> votes, double total_weight) {
  if (total_weight <= 0) {
    throw std::invalid_argument("finalize: total_weight must be > 0");
  }
  if (votes.empty()) return false;
  double sum = 0;
  for (const auto& v : votes) {
    if (v.block != votes.front().block) {
      throw std::invalid_argument("finalize: votes reference multiple blocks");
    }
    if (v.weight < 0) throw std::invalid_argument("finalize: negative weight");
    sum += v.weight;
  }
  // 3*sum > 2*total keeps the strict boundary exact for rational weights.
  return 3.0 * sum > 2.0 * total_weight;
}

BlockStore::BlockStore() {
  genesis_ = HashInput{}.tag("genesis").digest();
  Meta g;
  g.block.id = genesis_;
  g.block.parent = genesis_;
  g.block.epoch = -1;
  g.block.leader = -1;
  g.cum_weight = 0.0;
  g.length = 0;
  blocks_.emplace(genesis_, g);
  tips_.insert(genesis_);
  best_tip_ = genesis_;
}

bool BlockStore::better_tip(const Meta& a, const BlockId& a_id, const Meta& b,
                            const BlockId& b_id) const {
  if (a.cum_weight != b.cum_weight) return a.cum_weight > b.cum_weight;
  if (a.length != b.length) return a.length > b.length;
  return a_id < b_id;
}

void BlockStore::tip_became_public(const BlockId& id) {
  const Meta& m = blocks_.at(id);
  tips_.erase(m.block.parent);
  bool has_published_child = false;
  auto it = children_.find(id);
  if (it != children_.end()) {
    for (const auto& c : it->second) {
      if (blocks_.at(c).published) {
        has_published_child = true;
        break;
      }
    }
  }
  if (!has_published_child) {
    tips_.insert(id);
    if (better_tip(m, id, blocks_.at(best_tip_), best_tip_)) {
      best_tip_ = id;
    }
  } else if (!tips_.count(best_tip_)) {
    // Out-of-order reveal: the erased parent was the cached best. Rescan.
    best_tip_ = fork_choice(public_tips());
  }
}

const BlockStore::Meta& BlockStore::meta(const BlockId& id) const {
  auto it = blocks_.find(id);
  if (it == blocks_.end()) {
    throw std::out_of_range("BlockStore: unknown block id");
  }
  return it->second;
}

BlockId BlockStore::insert(Block block, bool published) {
  auto parent_it = blocks_.find(block.parent);
  if (parent_it == blocks_.end()) {
    throw std::logic_error("BlockStore: parent not in store");
  }
  if (block.epoch <= parent_it->second.block.epoch) {
    throw std::logic_error("BlockStore: epoch must increase along the chain");
  }
  if (block.leader_score_snapshot < 0) {
    throw std::logic_error("BlockStore: negative score snapshot");
  }
  block.id = block_digest(block.parent, block.epoch, block.leader,
                          block.payload_tag);
  if (blocks_.count(block.id)) return block.id;  // identical re-submission

  Meta m;
  m.block = block;
  m.cum_weight = parent_it->second.cum_weight + block.leader_score_snapshot;
  m.length = parent_it->second.length + 1;
  m.published = published;
  blocks_.emplace(block.id, m);
  children_[block.parent].push_back(block.id);
  first_by_slot_.emplace(std::make_pair(block.leader, block.epoch), block.id);
  if (published) tip_became_public(block.id);
  return block.id;
}

void BlockStore::publish(const BlockId& id) {
  auto it = blocks_.find(id);
  if (it == blocks_.end()) throw std::out_of_range("BlockStore: unknown block id");
  if (it->second.published) return;
  it->second.published = true;
  tip_became_public(id);
}

bool BlockStore::contains(const BlockId& id) const { return blocks_.count(id) > 0; }

const Block& BlockStore::block(const BlockId& id) const { return meta(id).block; }

bool BlockStore::is_published(const BlockId& id) const { return meta(id).published; }

double BlockStore::chain_weight(const BlockId& tip) const {
  return meta(tip).cum_weight;
}

std::int64_t BlockStore::chain_length(const BlockId& tip) const {
  return meta(tip).length;
}

std::vector<BlockId> BlockStore::public_tips() const {
  return {tips_.begin(), tips_.end()};
}

BlockId BlockStore::fork_choice(std::span<const BlockId> tips) const {
  if (tips.empty()) throw std::invalid_argument("fork_choice: empty tip set");
  const BlockId* best = nullptr;
  const Meta* best_meta = nullptr;
  for (const auto& tip : tips) {
    const Meta& m = meta(tip);
    if (!best || better_tip(m, tip, *best_meta, *best)) {
      best = &tip;
      best_meta = &m;
    }
  }
  return *best;
}

BlockId BlockStore::head() const { return best_tip_; }

std::optional<EquivocationEvidence> BlockStore::note_equivocation(
    const Block& incoming) {
  const auto slot = std::make_pair(incoming.leader, incoming.epoch);
  auto it = first_by_slot_.find(slot);
  if (it == first_by_slot_.end() || it->second == incoming.id) {
    return std::nullopt;
  }
  if (evidence_emitted_.count(slot)) return std::nullopt;
  evidence_emitted_.insert(slot);
  EquivocationEvidence ev;
  ev.leader = incoming.leader;
  ev.epoch = incoming.epoch;
  ev.block_a = it->second;
  ev.block_b = incoming.id;
  return ev;
}

bool BlockStore::is_ancestor(const BlockId& ancestor, const BlockId& tip) const {
  const Meta* a = &meta(ancestor);
  const Meta* cur = &meta(tip);
  while (cur->length > a->length) {
    cur = &meta(cur->block.parent);
  }
  return cur->block.id == a->block.id;
}

}  // namespace pocmt
