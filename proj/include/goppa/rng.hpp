#pragma once

// Deterministic byte stream: ChaCha20 keyed by SHA-256(label || 0x00 || seed).

#include <sodium.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goppa/errors.hpp"

namespace goppa {

using Bytes = std::vector<std::uint8_t>;

inline void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw InternalError("libsodium initialisation failed");
}

inline Bytes bytes_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParameterError("hex string has odd length");
  Bytes out(hex.size() / 2);
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ParameterError("invalid hex digit");
  };
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) * 16 + nibble(hex[2 * i + 1]));
  return out;
}

inline std::string bytes_to_hex(std::span<const std::uint8_t> b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (auto x : b) {
    s.push_back(kDigits[x >> 4]);
    s.push_back(kDigits[x & 15]);
  }
  return s;
}

/// Seed with a 4-byte big-endian counter appended.
inline Bytes derive_seed(std::span<const std::uint8_t> seed, std::uint32_t counter) {
  Bytes out(seed.begin(), seed.end());
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(counter >> s));
  return out;
}

class SeededStream {
 public:
  SeededStream(std::span<const std::uint8_t> seed, std::string_view label) {
    if (seed.empty()) throw ParameterError("seed must be nonempty");
    ensure_sodium();
    Bytes msg(label.begin(), label.end());
    msg.push_back(0);
    msg.insert(msg.end(), seed.begin(), seed.end());
    crypto_hash_sha256(key_.data(), msg.data(), msg.size());
  }

  std::uint8_t byte() {
    if (pos_ == block_.size()) refill();
    ++consumed_;
    return block_[pos_++];
  }

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) b = byte();
  }

  /// Four bytes, little-endian.
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
    return v;
  }

  /// Uniform in [0, bound) by rejection on u32 draws.
  std::uint32_t uniform(std::uint32_t bound) {
    if (bound == 0) throw ParameterError("uniform bound must be positive");
    const std::uint64_t span = std::uint64_t{1} << 32;
    const std::uint64_t limit = span - span % bound;
    while (true) {
      const std::uint32_t x = u32();
      if (x < limit) return x % bound;
    }
  }

  std::size_t consumed() const noexcept { return consumed_; }

 private:
  void refill() {
    static const std::array<std::uint8_t, 64> zeros{};
    std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
    crypto_stream_chacha20_xor_ic(block_.data(), zeros.data(), zeros.size(), nonce.data(), counter_++, key_.data());
    pos_ = 0;
  }

  std::array<std::uint8_t, crypto_hash_sha256_BYTES> key_{};
  std::array<std::uint8_t, 64> block_{};
  std::size_t pos_ = 64;
  std::uint64_t counter_ = 0;
  std::size_t consumed_ = 0;
};

/// First w entries of a partial Fisher-Yates shuffle of 0..n-1.
inline std::vector<std::size_t> sample_positions(SeededStream& rng, std::size_t n, std::size_t w) {
  if (w > n) throw ParameterError("cannot choose more positions than available");
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = 0; i < w; ++i) {
    const std::size_t j = i + rng.uniform(static_cast<std::uint32_t>(n - i));
    std::swap(p[i], p[j]);
  }
  p.resize(w);
  return p;
}

}  // namespace goppa
