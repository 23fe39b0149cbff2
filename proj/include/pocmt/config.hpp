// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "pocmt/adversary.hpp"
#include "pocmt/params.hpp"
#include "pocmt/types.hpp"

namespace pocmt {

/// Participation handling for offline validators: freeze P, keep accruing,
/// or treat absence as a violation and slash.
enum class OfflineParticipation { frozen, accrue, slash };

struct HonestConfig {
  int count = 50;
  double online_prob = 0.995;
  void validate() const;
};

struct SimConfig {
  std::uint64_t seed = 1;
  OfflineParticipation offline_participation = OfflineParticipation::frozen;
  bool finality = false;      // weighted BFT finality gadget
  double rho = 0.5;           // weighted-honest-majority monitor threshold
  bool record_scores = false; // retain per-epoch scores (fairness analysis)
  std::string beacon_domain_tag = "beacon";
  void validate() const;
};

struct ExperimentConfig {
  std::int64_t epochs_per_window = 1;
  std::int64_t horizon_epochs = 3000;
  ProtocolParams protocol;
  HcoParams hco;
  HonestConfig honest;
  AdversaryConfig adversary;
  SimConfig sim;

  void validate() const;
  int validator_count() const { return honest.count + adversary.sybil_count; }
};

/// Config error carrying the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat `section.key=value` text, one pair per line, `#` comments. Unknown
/// keys are rejected. Does not run validate().
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Sets a single key; throws ConfigError for unknown keys or bad values.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace pocmt
