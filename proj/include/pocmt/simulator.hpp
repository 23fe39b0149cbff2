// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pocmt/config.hpp"
#include "pocmt/trace.hpp"

namespace pocmt {

/// Runs one deterministic experiment. Per epoch, in order: adversary step,
/// availability/participation updates, score recomputation, leader election,
/// block proposal + fork choice, equivocation detection + slashing, and (at
/// window boundaries) HCO solve accounting plus engagement updates.
///
/// Identical configs produce identical traces. Internal invariant breaches
/// throw std::logic_error annotated with the epoch.
ExperimentTrace run(const ExperimentConfig& config);

}  // namespace pocmt
