// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pocmt/config.hpp"

namespace pocmt {

/// A named experiment: base config, optionally one swept key with a value
/// list, and a seed list. Every preset fully determines its run set.
struct Preset {
  std::string name;
  ExperimentConfig base;
  std::string swept_key;    // empty = single configuration
  std::string swept_label;  // short tag used in file names
  std::vector<std::string> swept_values;
  std::vector<std::uint64_t> seeds;
};

/// One concrete run derived from a preset.
struct RunSpec {
  ExperimentConfig config;
  std::string swept_value;  // empty when the preset has no sweep
  std::string tag;          // e.g. "m5" or "base"
  std::uint64_t seed = 0;
};

std::vector<std::string> preset_names();
Preset make_preset(const std::string& name);  // throws ConfigError if unknown

/// Expands the sweep x seed grid in deterministic order.
std::vector<RunSpec> expand_preset(const Preset& preset);

}  // namespace pocmt
