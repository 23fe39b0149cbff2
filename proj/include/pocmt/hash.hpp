// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pocmt/types.hpp"

namespace pocmt {

/// One-shot SHA-256.
Digest sha256(std::span<const std::uint8_t> data);

/// Builder for domain-separated hash inputs. Every field is length- or
/// width-prefixed so distinct field sequences can never collide. Backed by
/// a fixed inline buffer: hash inputs here are short and the simulator
/// builds hundreds of thousands per run.
class HashInput {
 public:
  HashInput& tag(std::string_view s);
  HashInput& u64(std::uint64_t v);
  HashInput& i64(std::int64_t v);
  HashInput& bytes(std::span<const std::uint8_t> b);

  Digest digest() const;
  /// Leading 64 bits of the digest, big-endian.
  std::uint64_t digest64() const;

 private:
  void append(const std::uint8_t* data, std::size_t len);

  std::array<std::uint8_t, 256> buf_{};
  std::size_t size_ = 0;
};

/// Maps a 64-bit word to [0, 1). Uses the leading 53 bits so the result is
/// exactly representable and strictly below 1.
double unit_interval(std::uint64_t u);

/// Deterministic random stream. The stream key is derived by keyed hashing
/// of (seed, domain, id0, id1); the body expands the key counter-mode, four
/// 64-bit words per SHA-256 block. Streams with distinct domains or ids are
/// independent regardless of draw order elsewhere.
class HashStream {
 public:
  HashStream(std::uint64_t seed, std::string_view domain, std::uint64_t id0 = 0,
             std::uint64_t id1 = 0);

  std::uint64_t next_u64();
  double next_unit();
  bool bernoulli(double p);
  /// Binomial(trials, p) by summing Bernoulli draws; trials is expected to
  /// stay small (challenge counts), so this is exact and cheap.
  int binomial(int trials, double p);
  /// Uniform draw in [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  void refill();

  Digest key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  int pos_ = 4;
};

}  // namespace pocmt
