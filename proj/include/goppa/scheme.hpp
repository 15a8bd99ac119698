#pragma once

// McEliece keygen, encryption and decryption with unique or list decoding.

#include <zlib.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goppa/binmat.hpp"
#include "goppa/decode.hpp"
#include "goppa/dyadic.hpp"
#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/goppa_code.hpp"
#include "goppa/rng.hpp"
#include "goppa/security.hpp"

namespace goppa {

struct SchemeParams {
  Variant variant = Variant::generic;
  Decoder decoder = Decoder::ud;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t w_enc = 0;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Encryption key: the redundancy part A of the public generator [I | A].
struct PublicKey {
  SchemeParams params;
  BinMatrix redundancy;
};

struct KeyPair {
  SchemeParams params;
  std::vector<Elem> support;
  Poly gpoly;
  BinMatrix redundancy;
  std::shared_ptr<const GoppaCode> code;

  PublicKey public_key() const { return {params, redundancy}; }
  std::uint32_t modulus() const { return code->field().modulus(); }
};

struct Cryptogram {
  BitVec vector;
  std::size_t declared_weight = 0;

  friend bool operator==(const Cryptogram&, const Cryptogram&) = default;
};

// ---------------------------------------------------------------------------
// Tag: payload region, then a 4-bit descriptor, then a checksum.

struct TagLayout {
  std::size_t k = 0;
  std::size_t capacity = 0;  // payload region in bits
  std::size_t checksum_bits = 0;
};

inline constexpr std::size_t kDescriptorBits = 4;
inline constexpr std::size_t kFullChecksumBits = 32;

/// 32-bit checksum when k leaves room for it, else a short checksum of (k-4)/2 bits.
inline TagLayout tag_layout(std::size_t k) {
  if (k <= kDescriptorBits + 1) throw ParameterError("code dimension too small for a tagged block");
  TagLayout t;
  t.k = k;
  if (k >= kDescriptorBits + kFullChecksumBits + 1) {
    t.checksum_bits = kFullChecksumBits;
  } else {
    t.checksum_bits = (k - kDescriptorBits) / 2;
  }
  t.capacity = k - kDescriptorBits - t.checksum_bits;
  return t;
}

inline std::vector<std::uint8_t> pack_bits(const BitVec& v) {
  std::vector<std::uint8_t> out((v.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.get(i)) out[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  return out;
}

inline BitVec unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() * 8 < nbits) throw FormatError("not enough bytes for the bit vector");
  BitVec v(nbits);
  for (std::size_t i = 0; i < nbits; ++i)
    if ((bytes[i / 8] >> (i % 8)) & 1U) v.set(i);
  return v;
}

inline std::uint32_t payload_crc(const BitVec& payload) {
  const auto bytes = pack_bits(payload);
  return static_cast<std::uint32_t>(crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

inline BitVec tag_encode(const BitVec& payload, std::size_t k) {
  const TagLayout t = tag_layout(k);
  if (payload.size() > t.capacity) throw PayloadTooLong("payload exceeds " + std::to_string(t.capacity) + " bits");
  BitVec block(k);
  for (std::size_t i = 0; i < payload.size(); ++i)
    if (payload.get(i)) block.set(i);
  const bool padded = payload.size() < t.capacity;
  if (padded) {
    block.set(payload.size());
    block.set(t.capacity);
  }
  const std::uint32_t crc = payload_crc(payload);
  for (std::size_t i = 0; i < t.checksum_bits; ++i)
    if ((crc >> i) & 1U) block.set(t.capacity + kDescriptorBits + i);
  return block;
}

/// The payload if the block's descriptor and checksum are consistent.
inline std::optional<BitVec> tag_decode(const BitVec& block) {
  const TagLayout t = tag_layout(block.size());
  unsigned desc = 0;
  for (std::size_t i = 0; i < kDescriptorBits; ++i)
    if (block.get(t.capacity + i)) desc |= 1U << i;
  std::size_t len = t.capacity;
  if (desc == 1) {
    while (len > 0 && !block.get(len - 1)) --len;
    if (len == 0) return std::nullopt;
    --len;
  } else if (desc != 0) {
    return std::nullopt;
  }
  BitVec payload(len);
  for (std::size_t i = 0; i < len; ++i)
    if (block.get(i)) payload.set(i);
  const std::uint32_t crc = payload_crc(payload);
  for (std::size_t i = 0; i < t.checksum_bits; ++i)
    if (((crc >> i) & 1U) != static_cast<unsigned>(block.get(t.capacity + kDescriptorBits + i))) return std::nullopt;
  return payload;
}

inline std::size_t payload_capacity(std::size_t k) { return tag_layout(k).capacity; }

// ---------------------------------------------------------------------------

struct KeygenRequest {
  Variant variant = Variant::generic;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  Decoder decoder = Decoder::ud;
};

inline std::size_t encryption_weight(std::size_t n, std::size_t r, Decoder d) {
  if (d == Decoder::ud) return r;
  return static_cast<std::size_t>(ld_radius(static_cast<long long>(n), static_cast<long long>(r)));
}

/// Rejects parameters keygen cannot honour. Dyadic parameters must satisfy
/// r(r+1) > n or m >= 16.
inline void check_keygen_params(const KeygenRequest& q) {
  if (q.m < 2 || q.m > 16) throw ParameterError("extension degree must be in [2, 16]");
  if (q.r < 1) throw ParameterError("r must be positive");
  if (q.n > (std::size_t{1} << q.m)) throw ParameterError("n exceeds the field size");
  if (q.n <= q.m * q.r) throw ParameterError("n - m r must be positive");
  if (q.decoder == Decoder::ld && 4 * q.r + 2 > q.n) throw ParameterError("list decoding needs 4r + 2 <= n");
  if (q.variant == Variant::dyadic) {
    const auto cm = check_countermeasures(static_cast<long long>(q.m), static_cast<long long>(q.n),
                                          static_cast<long long>(q.r));
    if (!cm.cm1 && !cm.cm2) throw CountermeasureViolation("dyadic parameters need r(r+1) > n or m >= 16");
    make_dyadic_params(q.m, q.n, q.r);
  }
}

namespace detail {

inline BinMatrix public_redundancy(const GoppaCode& code) {
  const std::vector<std::size_t> cols(code.colperm().begin() + static_cast<std::ptrdiff_t>(code.k()), code.colperm().end());
  return code.gen().select_columns(cols);
}

inline KeyPair finish_keypair(const KeygenRequest& q, GoppaCode code) {
  KeyPair kp;
  kp.params = {q.variant, q.decoder, q.m, q.n, q.r, code.k(), encryption_weight(q.n, q.r, q.decoder)};
  tag_layout(code.k());
  kp.support = code.support();
  kp.gpoly = code.gpoly();
  kp.redundancy = public_redundancy(code);
  kp.code = std::make_shared<const GoppaCode>(std::move(code));
  return kp;
}

}  // namespace detail

inline KeyPair keygen(const KeygenRequest& q, std::span<const std::uint8_t> seed) {
  check_keygen_params(q);
  if (q.variant == Variant::dyadic) {
    auto qd = make_quasi_dyadic(q.m, q.n, q.r, seed);
    return detail::finish_keypair(q, std::move(qd.code));
  }
  const Field f(static_cast<int>(q.m));
  SeededStream rng(seed, "goppa/keygen");
  Poly g;
  do {
    std::vector<Elem> c(q.r + 1);
    for (std::size_t i = 0; i < q.r; ++i) c[i] = Elem{rng.uniform(f.order())};
    c[q.r] = Elem{1};
    g = Poly(std::move(c));
  } while (!poly_is_irreducible(f, g));
  std::vector<std::uint32_t> perm(f.order());
  for (std::uint32_t i = 0; i < f.order(); ++i) perm[i] = i;
  std::vector<Elem> support;
  for (std::uint32_t i = 0; i < f.order() && support.size() < q.n; ++i) {
    const std::uint32_t j = i + rng.uniform(f.order() - i);
    std::swap(perm[i], perm[j]);
    const Elem a{perm[i]};
    if (!poly_eval(f, g, a).is_zero()) support.push_back(a);
  }
  if (support.size() < q.n) throw ConstructionError("not enough non-roots of G for the support");
  return detail::finish_keypair(q, build_code(f, std::move(support), g));
}

inline std::size_t keysize_bits(const SchemeParams& p) {
  return p.variant == Variant::generic ? p.k * (p.n - p.k) : compact_payload_bits(p.m, p.k, p.r);
}

inline Cryptogram encrypt(const PublicKey& pk, const BitVec& payload, std::span<const std::uint8_t> seed) {
  const auto& p = pk.params;
  const BitVec block = tag_encode(payload, p.k);
  const BitVec red = pk.redundancy.left_mul(block);
  BitVec ct(p.n);
  for (std::size_t i = 0; i < p.k; ++i)
    if (block.get(i)) ct.set(i);
  for (std::size_t i = 0; i < p.n - p.k; ++i)
    if (red.get(i)) ct.set(p.k + i);
  SeededStream rng(seed, "goppa/encrypt");
  for (auto j : sample_positions(rng, p.n, p.w_enc)) ct.flip(j);
  return {std::move(ct), p.w_enc};
}

inline Cryptogram encrypt(const KeyPair& kp, const BitVec& payload, std::span<const std::uint8_t> seed) {
  return encrypt(kp.public_key(), payload, seed);
}

/// Candidate payloads whose tag verifies, before disambiguation.
inline std::vector<BitVec> decrypt_candidates(const KeyPair& kp, const Cryptogram& ct) {
  const GoppaCode& code = *kp.code;
  const auto& p = kp.params;
  if (ct.vector.size() != p.n) throw ParameterError("ciphertext length does not match the key");
  BitVec y(p.n);
  for (std::size_t c = 0; c < p.n; ++c)
    if (ct.vector.get(c)) y.set(code.colperm()[c]);
  DecodeResult res;
  try {
    res = p.decoder == Decoder::ud ? unique_decode(code, y) : list_decode(code, y, p.w_enc);
  } catch (const DecodingFailure&) {
    return {};
  }
  std::vector<BitVec> out;
  for (const auto& c : res.candidates) {
    auto payload = tag_decode(extract_message(code, c.codeword));
    if (!payload) continue;
    if (std::find(out.begin(), out.end(), *payload) == out.end()) out.push_back(std::move(*payload));
  }
  return out;
}

inline BitVec decrypt(const KeyPair& kp, const Cryptogram& ct) {
  auto c = decrypt_candidates(kp, ct);
  if (c.empty()) throw NoCandidate("no decoding candidate carries a valid tag");
  if (c.size() > 1) throw AmbiguousCandidates(c.size());
  return std::move(c.front());
}

// ---------------------------------------------------------------------------
// Serialization.

namespace detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  /// Values of `width` bits each, packed LSB first, padded to a byte.
  void packed(const std::vector<std::uint32_t>& vals, std::size_t width) {
    BitVec v(vals.size() * width);
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t b = 0; b < width; ++b)
        if ((vals[i] >> b) & 1U) v.set(i * width + b);
    raw(pack_bits(v));
  }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }
  std::span<const std::uint8_t> raw(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::span<const std::uint8_t> rest() { return raw(in_.size() - pos_); }
  std::vector<std::uint32_t> packed(std::size_t count, std::size_t width) {
    const BitVec v = unpack_bits(raw((count * width + 7) / 8), count * width);
    std::vector<std::uint32_t> vals(count, 0);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t b = 0; b < width; ++b)
        if (v.get(i * width + b)) vals[i] |= 1U << b;
    return vals;
  }
  bool done() const noexcept { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw FormatError("truncated input");
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Bytes serialize_key(const KeyPair& kp) {
  const auto& p = kp.params;
  detail::ByteWriter w;
  w.raw(std::vector<std::uint8_t>{'G', 'P', 'P', 'A'});
  w.u8(0x01);
  w.u8(p.variant == Variant::generic ? 0 : 1);
  w.u8(static_cast<std::uint8_t>(p.m));
  w.u8(p.decoder == Decoder::ud ? 0 : 1);
  w.u32(static_cast<std::uint32_t>(p.n));
  w.u32(static_cast<std::uint32_t>(p.r));
  w.u32(static_cast<std::uint32_t>(p.k));
  w.u32(static_cast<std::uint32_t>(p.w_enc));
  w.u32(kp.modulus());
  std::vector<std::uint32_t> vals;
  for (auto a : kp.support) vals.push_back(a.v);
  w.packed(vals, p.m);
  vals.clear();
  for (std::size_t i = 0; i <= p.r; ++i) vals.push_back(kp.gpoly[i].v);
  w.packed(vals, p.m);
  if (p.variant == Variant::generic) {
    BitVec bits(p.k * (p.n - p.k));
    for (std::size_t i = 0; i < p.k; ++i)
      for (std::size_t j = 0; j < p.n - p.k; ++j)
        if (kp.redundancy.get(i, j)) bits.set(i * (p.n - p.k) + j);
    w.raw(pack_bits(bits));
  } else {
    w.raw(compact_pubkey(kp.redundancy, p.m, p.r));
  }
  return w.take();
}

/// Parses a key file and rebuilds the code; the public part must agree with it.
inline KeyPair parse_key(std::span<const std::uint8_t> bytes) {
  detail::ByteReader rd(bytes);
  const auto magic = rd.raw(4);
  if (!std::equal(magic.begin(), magic.end(), "GPPA")) throw FormatError("not a key file");
  if (rd.u8() != 0x01) throw FormatError("unsupported key file version");
  const std::uint8_t variant = rd.u8();
  if (variant > 1) throw FormatError("unknown variant");
  SchemeParams p;
  p.variant = variant == 0 ? Variant::generic : Variant::dyadic;
  p.m = rd.u8();
  const std::uint8_t dec = rd.u8();
  if (dec > 1) throw FormatError("unknown decoder");
  p.decoder = dec == 0 ? Decoder::ud : Decoder::ld;
  p.n = rd.u32();
  p.r = rd.u32();
  p.k = rd.u32();
  p.w_enc = rd.u32();
  const std::uint32_t modulus = rd.u32();
  if (p.m < 2 || p.m > 16) throw FormatError("extension degree out of range");
  if (p.n == 0 || p.n > (std::size_t{1} << p.m) || p.r == 0 || p.r >= p.n || p.k == 0 || p.k >= p.n)
    throw FormatError("inconsistent key dimensions");
  const Field f(static_cast<int>(p.m));
  if (f.modulus() != modulus) throw FormatError("field modulus mismatch");

  std::vector<Elem> support;
  for (auto v : rd.packed(p.n, p.m)) support.push_back(Elem{v});
  std::vector<Elem> gc;
  for (auto v : rd.packed(p.r + 1, p.m)) gc.push_back(Elem{v});
  const Poly g(gc);
  if (g.degree() != static_cast<int>(p.r)) throw FormatError("Goppa polynomial degree mismatch");

  BinMatrix red;
  if (p.variant == Variant::generic) {
    const BitVec bits = unpack_bits(rd.raw((p.k * (p.n - p.k) + 7) / 8), p.k * (p.n - p.k));
    red = BinMatrix(p.k, p.n - p.k);
    for (std::size_t i = 0; i < p.k; ++i)
      for (std::size_t j = 0; j < p.n - p.k; ++j)
        if (bits.get(i * (p.n - p.k) + j)) red.set(i, j);
  } else {
    const CompactKey ck = expand_pubkey(rd.rest());
    if (ck.m != p.m || ck.r != p.r || ck.k != p.k) throw FormatError("compact key header disagrees with the key file");
    red = ck.redundancy;
  }
  if (!rd.done()) throw FormatError("trailing bytes in key file");

  GoppaCode code = build_code(f, std::move(support), g);
  if (code.k() != p.k) throw FormatError("code dimension disagrees with the key file");
  if (!(detail::public_redundancy(code) == red)) throw FormatError("public key does not match the private key");
  const KeygenRequest q{p.variant, p.m, p.n, p.r, p.decoder};
  if (encryption_weight(p.n, p.r, p.decoder) != p.w_enc) throw FormatError("encryption weight mismatch");
  return detail::finish_keypair(q, std::move(code));
}

inline Bytes serialize_ciphertext(const Cryptogram& ct) {
  detail::ByteWriter w;
  w.raw(std::vector<std::uint8_t>{'G', 'C', 'T', 'X'});
  w.u32(static_cast<std::uint32_t>(ct.vector.size()));
  w.u32(static_cast<std::uint32_t>(ct.declared_weight));
  w.raw(pack_bits(ct.vector));
  return w.take();
}

inline Cryptogram parse_ciphertext(std::span<const std::uint8_t> bytes) {
  detail::ByteReader rd(bytes);
  const auto magic = rd.raw(4);
  if (!std::equal(magic.begin(), magic.end(), "GCTX")) throw FormatError("not a ciphertext file");
  const std::size_t n = rd.u32();
  const std::size_t w = rd.u32();
  Cryptogram ct{unpack_bits(rd.raw((n + 7) / 8), n), w};
  if (!rd.done()) throw FormatError("trailing bytes in ciphertext file");
  return ct;
}

/// Bytes to bits, least significant bit of each byte first.
inline BitVec bits_from_bytes(std::span<const std::uint8_t> bytes) { return unpack_bits(bytes, bytes.size() * 8); }

inline Bytes bytes_from_bits(const BitVec& bits) {
  if (bits.size() % 8 != 0) throw FormatError("payload is not a whole number of bytes");
  return pack_bits(bits);
}

}  // namespace goppa
