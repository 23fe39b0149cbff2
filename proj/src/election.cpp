// SPDX-License-Identifier: Apache-2.0
#include "pocmt/election.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pocmt {

namespace {

double total_of(std::span<const double> scores) {
  double total = 0;
  for (double s : scores) {
    if (s < 0 || !std::isfinite(s)) {
      throw std::invalid_argument("election: scores must be finite and >= 0");
    }
    total += s;
  }
  return total;
}

std::uint64_t beacon_word(const EpochRandomness& beacon) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | beacon.beacon[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

SortitionKey derive_sortition_key(std::uint64_t seed, ValidatorId v) {
  SortitionKey key;
  key.validator = v;
  key.secret = HashInput{}.tag("sk").u64(seed).i64(v).digest();
  return key;
}

EpochRandomness make_beacon(std::uint64_t seed, std::string_view domain_tag,
                            Epoch epoch) {
  EpochRandomness r;
  r.epoch = epoch;
  r.beacon = HashInput{}.tag(domain_tag).u64(seed).i64(epoch).digest();
  return r;
}

double sortition_value(const SortitionKey& key, Epoch epoch,
                       const EpochRandomness& beacon, std::string_view domain) {
  if (beacon.epoch != epoch) {
    throw std::logic_error("sortition_value: beacon epoch mismatch");
  }
  std::uint64_t u = HashInput{}
                        .tag(domain)
                        .bytes(key.secret)
                        .i64(epoch)
                        .bytes(beacon.beacon)
                        .digest64();
  return unit_interval(u);
}

double leader_threshold(double score, double total_score, double theta) {
  if (total_score <= 0) {
    throw std::invalid_argument("leader_threshold: total_score must be > 0");
  }
  if (score < 0 || score > total_score) {
    throw std::invalid_argument("leader_threshold: score outside [0, total]");
  }
  return std::min(1.0, theta * score / total_score);
}

ElectionResult elect_leader(std::span<const double> scores, Epoch epoch,
                            const EpochRandomness& beacon,
                            std::span<const SortitionKey> keys, double theta) {
  if (scores.size() != keys.size() || scores.empty()) {
    throw std::invalid_argument("elect_leader: scores/keys size mismatch");
  }
  const double total = total_of(scores);

  ElectionResult result;
  if (total == 0) {
    // Bootstrap: every score is zero, pick uniformly from the beacon.
    HashStream pick(beacon_word(beacon), "bootstrap",
                    static_cast<std::uint64_t>(epoch));
    const auto idx = static_cast<std::size_t>(pick.uniform_below(scores.size()));
    result.leader = keys[idx].validator;
    result.bootstrap = true;
    result.winning_value = 0.0;
    return result;
  }

  double best = 2.0;
  double best_raw = 0.0;
  std::optional<std::size_t> best_idx;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == 0) continue;  // tau = 0, never eligible
    const double tau = std::min(1.0, theta * scores[i] / total);
    const double r = sortition_value(keys[i], epoch, beacon, kLeaderDomain);
    if (r >= tau) continue;
    const double normalized = r / tau;
    if (normalized < best) {
      best = normalized;
      best_raw = r;
      best_idx = i;
    }
  }
  if (best_idx) {
    result.leader = keys[*best_idx].validator;
    result.winning_value = best_raw;
  }
  return result;
}

std::vector<ValidatorId> sample_committee(std::span<const double> scores,
                                          Epoch epoch,
                                          const EpochRandomness& beacon,
                                          std::span<const SortitionKey> keys,
                                          double committee_scale) {
  if (scores.size() != keys.size()) {
    throw std::invalid_argument("sample_committee: scores/keys size mismatch");
  }
  const double total = total_of(scores);
  std::vector<ValidatorId> committee;
  if (total == 0) {
    for (const auto& k : keys) committee.push_back(k.validator);
    return committee;
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = std::min(1.0, committee_scale * scores[i] / total);
    const double r = sortition_value(keys[i], epoch, beacon, kCommitteeDomain);
    if (r < p) committee.push_back(keys[i].validator);
  }
  return committee;
}

namespace {

struct GaussLegendre {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // summing to 1
};

// Nodes and weights by Newton iteration on the Legendre recurrence; cached
// per order. An n-point rule integrates polynomials of degree 2n-1 exactly.
const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // map from [-1, 1] to [0, 1]
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

std::vector<double> exact_win_probabilities(std::span<const double> scores,
                                            double theta) {
  const std::size_t n = scores.size();
  const double total = total_of(scores);
  std::vector<double> probs(n, 0.0);
  if (n == 0) return probs;
  if (total == 0) {
    for (double& p : probs) p = 1.0 / static_cast<double>(n);
    return probs;
  }

  std::vector<double> tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    tau[i] = std::min(1.0, theta * scores[i] / total);
  }

  // P(v wins) = tau_v * Int_0^1 prod_{u != v} (1 - tau_u z) dz. The shared
  // product Q(z) has degree n, so n/2 + 1 quadrature nodes are exact.
  const auto& rule =
      gauss_legendre(std::max<int>(16, static_cast<int>(n) / 2 + 2));
  std::vector<double> q(rule.nodes.size());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    double prod = 1.0;
    for (std::size_t u = 0; u < n; ++u) prod *= 1.0 - tau[u] * rule.nodes[j];
    q[j] = prod;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (tau[v] == 0) continue;
    double integral = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      integral += rule.weights[j] * q[j] / (1.0 - tau[v] * rule.nodes[j]);
    }
    probs[v] = tau[v] * integral;
  }
  return probs;
}

std::vector<double> mc_win_probabilities(std::span<const double> scores,
                                         double theta, std::int64_t samples,
                                         std::uint64_t seed) {
  const std::size_t n = scores.size();
  const double total = total_of(scores);
  std::vector<double> probs(n, 0.0);
  if (n == 0 || samples <= 0) return probs;
  if (total == 0) {
    for (double& p : probs) p = 1.0 / static_cast<double>(n);
    return probs;
  }
  std::vector<double> tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    tau[i] = std::min(1.0, theta * scores[i] / total);
  }
  std::vector<std::int64_t> wins(n, 0);
  HashStream stream(seed, "win-prob-mc");
  for (std::int64_t s = 0; s < samples; ++s) {
    double best = 2.0;
    std::size_t best_idx = n;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = stream.next_unit();
      if (tau[i] == 0 || r >= tau[i]) continue;
      const double normalized = r / tau[i];
      if (normalized < best) {
        best = normalized;
        best_idx = i;
      }
    }
    if (best_idx < n) ++wins[best_idx];
  }
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = static_cast<double>(wins[i]) / static_cast<double>(samples);
  }
  return probs;
}

}  // namespace pocmt
