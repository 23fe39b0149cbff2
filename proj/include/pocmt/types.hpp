// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace pocmt {

using ValidatorId = std::int32_t;
using Epoch = std::int64_t;
using Window = std::int64_t;

/// 256-bit digest; used for hashes, block ids, beacons and sortition keys.
using Digest = std::array<std::uint8_t, 32>;

enum class ValidatorClass : std::uint8_t { honest, adversarial };

}  // namespace pocmt
