// SPDX-License-Identifier: Apache-2.0
#include "pocmt/hash.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace pocmt {

namespace {

// One explicitly fetched digest and one context per thread; the implicit
// per-call fetch in OpenSSL 3 dominates short-input hashing otherwise, and
// the simulator computes millions of sortition values per run.
struct ThreadDigest {
  EVP_MD* md = EVP_MD_fetch(nullptr, "SHA256", nullptr);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~ThreadDigest() {
    EVP_MD_CTX_free(ctx);
    EVP_MD_free(md);
  }
};

Digest sha256_raw(const std::uint8_t* data, std::size_t len) {
  thread_local ThreadDigest td;
  Digest out{};
  unsigned int out_len = 0;
  if (EVP_DigestInit_ex(td.ctx, td.md, nullptr) != 1 ||
      EVP_DigestUpdate(td.ctx, data, len) != 1 ||
      EVP_DigestFinal_ex(td.ctx, out.data(), &out_len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  return sha256_raw(data.data(), data.size());
}

void HashInput::append(const std::uint8_t* data, std::size_t len) {
  if (size_ + len > buf_.size()) {
    throw std::length_error("HashInput: input exceeds inline buffer");
  }
  std::memcpy(buf_.data() + size_, data, len);
  size_ += len;
}

HashInput& HashInput::tag(std::string_view s) {
  u64(s.size());
  append(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
  return *this;
}

HashInput& HashInput::u64(std::uint64_t v) {
  std::uint8_t be[8];
  for (int i = 0; i < 8; ++i) be[i] = static_cast<std::uint8_t>(v >> (8 * (7 - i)));
  append(be, 8);
  return *this;
}

HashInput& HashInput::i64(std::int64_t v) {
  return u64(static_cast<std::uint64_t>(v));
}

HashInput& HashInput::bytes(std::span<const std::uint8_t> b) {
  u64(b.size());
  append(b.data(), b.size());
  return *this;
}

Digest HashInput::digest() const { return sha256_raw(buf_.data(), size_); }

std::uint64_t HashInput::digest64() const {
  Digest d = digest();
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
  return v;
}

double unit_interval(std::uint64_t u) {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

HashStream::HashStream(std::uint64_t seed, std::string_view domain,
                       std::uint64_t id0, std::uint64_t id1) {
  key_ = HashInput{}.tag("stream").u64(seed).tag(domain).u64(id0).u64(id1).digest();
}

void HashStream::refill() {
  Digest d = HashInput{}.bytes(key_).u64(counter_++).digest();
  for (int w = 0; w < 4; ++w) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(w * 8 + i)];
    block_[static_cast<std::size_t>(w)] = v;
  }
  pos_ = 0;
}

std::uint64_t HashStream::next_u64() {
  if (pos_ == 4) refill();
  return block_[static_cast<std::size_t>(pos_++)];
}

double HashStream::next_unit() { return unit_interval(next_u64()); }

bool HashStream::bernoulli(double p) { return next_unit() < p; }

int HashStream::binomial(int trials, double p) {
  int hits = 0;
  for (int i = 0; i < trials; ++i) {
    if (bernoulli(p)) ++hits;
  }
  return hits;
}

std::uint64_t HashStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be > 0");
  // Rejection sampling over the largest multiple of n below 2^64.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

}  // namespace pocmt
