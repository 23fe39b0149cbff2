// SPDX-License-Identifier: Apache-2.0
#include "pocmt/presets.hpp"

namespace pocmt {

namespace {

std::vector<std::uint64_t> seed_range(int count) {
  std::vector<std::uint64_t> seeds;
  for (int i = 1; i <= count; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
  return seeds;
}

// Baseline population and dynamics shared by every preset: 50 honest
// validators against 100 sybil identities over 3000 epochs, one epoch per
// human window.
ExperimentConfig baseline() {
  ExperimentConfig c;
  c.adversary.sybil_count = 100;
  c.adversary.humans = 10;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"drift",        "capacity-sweep", "fairness",
          "decay-ablation", "common-prefix", "bft-safety"};
}

Preset make_preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "drift") {
    p.base = baseline();
    p.seeds = seed_range(10);
  } else if (name == "capacity-sweep") {
    p.base = baseline();
    p.swept_key = "adversary.humans";
    p.swept_label = "m";
    for (int m = 0; m <= 50; m += 5) p.swept_values.push_back(std::to_string(m));
    p.seeds = seed_range(20);
  } else if (name == "fairness") {
    p.base = baseline();
    p.base.adversary.sybil_count = 0;
    p.base.adversary.humans = 0;
    p.base.sim.record_scores = true;
    p.seeds = seed_range(20);
  } else if (name == "decay-ablation") {
    // Honest validators pinned online so the decay rate acts on the
    // rotating sybils alone; otherwise the honest side's own rare offline
    // decays (on a much larger availability stock) drown out the effect
    // being measured.
    p.base = baseline();
    p.base.adversary.online_policy = OnlinePolicy::rotate;
    p.base.adversary.online_fraction = 0.5;
    p.base.honest.online_prob = 1.0;
    p.swept_key = "protocol.decay_rate";
    p.swept_label = "lambda";
    p.swept_values = {"0.01", "0.05", "0.2"};
    p.seeds = seed_range(10);
  } else if (name == "common-prefix") {
    // Full-engagement adversary sized for a ~0.30 steady-state weight share
    // with per-identity scores comparable to honest ones, so fork races are
    // decided by leader-election runs rather than by per-block weight gaps.
    p.base = baseline();
    p.base.adversary.sybil_count = 21;
    p.base.adversary.humans = 21;
    p.base.adversary.strategy = AllocationStrategy::spread;
    p.base.adversary.private_fork = true;
    p.seeds = seed_range(200);
  } else if (name == "bft-safety") {
    p.base = baseline();
    p.base.adversary.sybil_count = 20;
    p.base.adversary.humans = 5;
    p.base.adversary.equivocate = true;
    p.base.sim.finality = true;
    p.seeds = seed_range(50);
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "'");
  }
  return p;
}

std::vector<RunSpec> expand_preset(const Preset& preset) {
  std::vector<RunSpec> specs;
  std::vector<std::string> values = preset.swept_values;
  if (values.empty()) values.push_back("");
  for (const auto& value : values) {
    for (std::uint64_t seed : preset.seeds) {
      RunSpec spec;
      spec.config = preset.base;
      spec.swept_value = value;
      if (value.empty()) {
        spec.tag = "base";
      } else {
        apply_override(spec.config, preset.swept_key, value);
        spec.tag = preset.swept_label + value;
      }
      spec.config.sim.seed = seed;
      spec.seed = seed;
      specs.push_back(std::move(spec));
    }
  }
  return specs;
}

}  // namespace pocmt
