// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pocmt/hash.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

/// Simulation stand-in for a VRF key: a per-validator secret derived from
/// the run seed. Unique per validator, fixed for the run.
struct SortitionKey {
  Digest secret{};
  ValidatorId validator = -1;
};

/// Per-epoch public randomness, derived from (run seed, domain tag, epoch).
struct EpochRandomness {
  Epoch epoch = 0;
  Digest beacon{};
};

SortitionKey derive_sortition_key(std::uint64_t seed, ValidatorId v);
EpochRandomness make_beacon(std::uint64_t seed, std::string_view domain_tag,
                            Epoch epoch);

inline constexpr std::string_view kLeaderDomain = "leader";
inline constexpr std::string_view kCommitteeDomain = "committee";

/// Keyed hash of (secret, epoch, beacon) mapped to [0, 1). Distinct `domain`
/// strings give statistically independent values for the same inputs.
double sortition_value(const SortitionKey& key, Epoch epoch,
                       const EpochRandomness& beacon,
                       std::string_view domain = kLeaderDomain);

/// min(1, theta * score / total_score). total_score must be > 0.
double leader_threshold(double score, double total_score, double theta);

struct ElectionResult {
  std::optional<ValidatorId> leader;  // nullopt = empty epoch
  bool bootstrap = false;             // total score was zero, uniform pick
  double winning_value = 0.0;         // raw sortition value of the winner
};

/// Eligible set = { v : r_v < tau_v }; the winner is the eligible validator
/// with the lowest threshold-normalized value r_v / tau_v (ties by lowest
/// id), which keeps the winner distribution score-proportional across
/// heterogeneous weights. Zero total score falls back to a uniform
/// beacon-derived choice.
ElectionResult elect_leader(std::span<const double> scores, Epoch epoch,
                            const EpochRandomness& beacon,
                            std::span<const SortitionKey> keys, double theta);

/// Independent per-validator inclusion with probability min(1, c * share),
/// using committee-domain sortition. Zero total score includes everyone.
std::vector<ValidatorId> sample_committee(std::span<const double> scores,
                                          Epoch epoch,
                                          const EpochRandomness& beacon,
                                          std::span<const SortitionKey> keys,
                                          double committee_scale);

/// Exact per-validator win probabilities for one epoch with frozen scores:
/// P(v wins) = tau_v * Int_0^1 prod_{u != v} (1 - tau_u z) dz, evaluated by
/// Gauss-Legendre quadrature with enough nodes to integrate the polynomial
/// integrand exactly. Sums to 1 - P(empty epoch). Zero total score returns
/// the uniform bootstrap distribution.
std::vector<double> exact_win_probabilities(std::span<const double> scores,
                                            double theta);

/// Monte-Carlo estimate of the same distribution from independent uniform
/// draws; the sampling route is deliberately separate from the keyed-hash
/// election path.
std::vector<double> mc_win_probabilities(std::span<const double> scores,
                                         double theta, std::int64_t samples,
                                         std::uint64_t seed);

}  // namespace pocmt
