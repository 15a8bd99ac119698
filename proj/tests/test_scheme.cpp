#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace goppa;
using testing_support::random_bits;
using testing_support::random_error;

namespace {

Bytes seed_of(std::uint32_t i) { return derive_seed(bytes_from_hex("a11ce5"), i); }

// Reflected CRC-32 (polynomial 0x04C11DB7), bit by bit.
std::uint32_t crc32_bitwise(const std::vector<std::uint8_t>& data) {
  std::uint32_t c = 0xFFFFFFFFU;
  for (auto b : data) {
    c ^= b;
    for (int i = 0; i < 8; ++i) c = (c >> 1) ^ (0xEDB88320U & (0U - (c & 1U)));
  }
  return ~c;
}

struct Shape {
  Variant variant;
  std::size_t m, n, r;
};

}  // namespace

TEST(Rng, SeededStreamIsDeterministicAndLabelled) {
  const Bytes seed = bytes_from_hex("0001020304");
  SeededStream a(seed, "x"), b(seed, "x"), c(seed, "y");
  std::vector<std::uint8_t> ba(200), bb(200), bc(200);
  a.fill(ba);
  b.fill(bb);
  c.fill(bc);
  EXPECT_EQ(ba, bb);
  EXPECT_NE(ba, bc);
  EXPECT_EQ(a.consumed(), 200U);
  EXPECT_EQ(bytes_to_hex(bytes_from_hex("00ff7a")), "00ff7a");
  EXPECT_THROW(bytes_from_hex("abc"), ParameterError);
  EXPECT_THROW(SeededStream(Bytes{}, "x"), ParameterError);
}

TEST(Rng, UniformStaysInRange) {
  SeededStream s(Bytes{1}, "u");
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) ++hist[s.uniform(7)];
  for (int h : hist) EXPECT_GT(h, 800);
  const auto pos = sample_positions(s, 64, 64);
  EXPECT_EQ(std::set<std::size_t>(pos.begin(), pos.end()).size(), 64U);
}

TEST(Tag, ChecksumIsStandardCrc32) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const BitVec p = random_bits(8 * (1 + rng() % 20), rng);
    EXPECT_EQ(payload_crc(p), crc32_bitwise(pack_bits(p)));
  }
  EXPECT_EQ(crc32_bitwise({'1', '2', '3', '4', '5', '6', '7', '8', '9'}), 0xCBF43926U);
}

TEST(Tag, LayoutAndRoundTrip) {
  EXPECT_EQ(tag_layout(100).checksum_bits, 32U);
  EXPECT_EQ(tag_layout(100).capacity, 64U);
  EXPECT_EQ(tag_layout(12).checksum_bits, 4U);
  EXPECT_EQ(tag_layout(12).capacity, 4U);
  EXPECT_THROW(tag_layout(5), ParameterError);
  std::mt19937_64 rng(2);
  for (std::size_t k : {12U, 28U, 40U, 104U}) {
    const std::size_t cap = payload_capacity(k);
    for (std::size_t len = 0; len <= cap; ++len) {
      const BitVec p = random_bits(len, rng);
      const auto back = tag_decode(tag_encode(p, k));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, p);
    }
    EXPECT_THROW(tag_encode(BitVec(cap + 1), k), PayloadTooLong);
  }
  BitVec block = tag_encode(BitVec::from_string("1011"), 104);
  block.flip(block.size() - 1);
  EXPECT_FALSE(tag_decode(block).has_value());
}

TEST(Keygen, WeightsAndKeySizes) {
  const auto ld = keygen({Variant::generic, 6, 64, 6, Decoder::ld}, seed_of(1));
  EXPECT_EQ(ld.params.w_enc, static_cast<std::size_t>(radii(64, 6).ld_errors));
  const auto ud = keygen({Variant::generic, 6, 64, 6, Decoder::ud}, seed_of(1));
  EXPECT_EQ(ud.params.w_enc, 6U);
  EXPECT_EQ(keysize_bits(ud.params), 6U * ud.params.k * 6U);
}

TEST(Keygen, DyadicTableRowAccepted) {
  const auto kp = keygen({Variant::dyadic, 11, 1792, 64, Decoder::ud}, seed_of(2));
  EXPECT_EQ(kp.params.k, 1088U);
  EXPECT_EQ(keysize_bits(kp.params), 11968U);
}

TEST(Keygen, CountermeasureGate) {
  EXPECT_THROW(keygen({Variant::dyadic, 10, 512, 16, Decoder::ud}, seed_of(3)), CountermeasureViolation);
  EXPECT_THROW(check_keygen_params({Variant::dyadic, 12, 3840, 32, Decoder::ud}), CountermeasureViolation);
  EXPECT_NO_THROW(check_keygen_params({Variant::dyadic, 16, 5120, 64, Decoder::ud}));
  EXPECT_THROW(check_keygen_params({Variant::generic, 6, 80, 6, Decoder::ud}), ParameterError);
}

TEST(Keygen, DeterministicFromSeed) {
  for (const Shape s : {Shape{Variant::generic, 6, 64, 6}, Shape{Variant::dyadic, 8, 144, 16}}) {
    const auto a = serialize_key(keygen({s.variant, s.m, s.n, s.r, Decoder::ld}, seed_of(4)));
    const auto b = serialize_key(keygen({s.variant, s.m, s.n, s.r, Decoder::ld}, seed_of(4)));
    const auto c = serialize_key(keygen({s.variant, s.m, s.n, s.r, Decoder::ld}, seed_of(5)));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
  }
}

TEST(Encrypt, ErrorWeightAndDeterminism) {
  const auto kp = keygen({Variant::generic, 6, 64, 6, Decoder::ud}, seed_of(6));
  const BitVec msg = BitVec::from_string("1100101");
  const Cryptogram ct = encrypt(kp, msg, seed_of(7));
  EXPECT_EQ(ct, encrypt(kp, msg, seed_of(7)));
  BitVec clean = encrypt(PublicKey{kp.params, kp.redundancy}, msg, seed_of(7)).vector;
  const BitVec block = tag_encode(msg, kp.params.k);
  const BitVec red = kp.redundancy.left_mul(block);
  BitVec cw(64);
  for (std::size_t i = 0; i < kp.params.k; ++i) cw.set(i, block.get(i));
  for (std::size_t i = 0; i < 64 - kp.params.k; ++i) cw.set(kp.params.k + i, red.get(i));
  EXPECT_EQ(distance(clean, cw), 6U);
  EXPECT_EQ(ct.declared_weight, 6U);
}

TEST(Encrypt, ErrorPatternsDifferAcrossSeeds) {
  const auto kp = keygen({Variant::generic, 6, 64, 6, Decoder::ud}, seed_of(8));
  const BitVec msg(0);
  std::set<std::string> seen;
  int collisions = 0;
  for (std::uint32_t i = 0; i < 1000; ++i)
    if (!seen.insert(encrypt(kp, msg, seed_of(100 + i)).vector.to_string()).second) ++collisions;
  EXPECT_LE(collisions, 1);
  EXPECT_THROW(encrypt(kp, BitVec(payload_capacity(kp.params.k) + 1), seed_of(1)), PayloadTooLong);
}

TEST(Decrypt, RoundTripAllVariants) {
  const Shape shapes[] = {{Variant::generic, 5, 32, 4},   {Variant::generic, 6, 64, 6},  {Variant::generic, 8, 200, 12},
                          {Variant::dyadic, 6, 56, 8},    {Variant::dyadic, 8, 240, 16}};
  std::mt19937_64 rng(9);
  for (const Shape& s : shapes)
    for (Decoder d : {Decoder::ud, Decoder::ld}) {
      const auto kp = keygen({s.variant, s.m, s.n, s.r, d}, seed_of(10));
      const std::size_t cap = payload_capacity(kp.params.k);
      int ok = 0;
      for (std::uint32_t i = 0; i < 500; ++i) {
        const BitVec msg = random_bits(rng() % (cap + 1), rng);
        const auto ct = encrypt(kp, msg, seed_of(1000 + i));
        const auto cands = decrypt_candidates(kp, ct);
        EXPECT_NE(std::find(cands.begin(), cands.end(), msg), cands.end());
        if (cands.size() == 1 && decrypt(kp, ct) == msg) ++ok;
      }
      EXPECT_EQ(ok, 500) << to_string(s.variant) << " m=" << s.m << " " << to_string(d);
    }
}

TEST(Decrypt, ListDecryptionBeyondUniqueRadius) {
  const auto kp = keygen({Variant::generic, 5, 32, 4, Decoder::ld}, seed_of(11));
  ASSERT_EQ(kp.params.w_enc, 5U);
  const GoppaCode& code = *kp.code;
  int witnesses = 0;
  for (std::uint32_t i = 0; i < 100; ++i) {
    const BitVec msg = BitVec::from_string(i % 2 ? "1011" : "01");
    const auto ct = encrypt(kp, msg, seed_of(2000 + i));
    BitVec y(32);
    for (std::size_t c = 0; c < 32; ++c)
      if (ct.vector.get(c)) y.set(code.colperm()[c]);
    EXPECT_EQ(list_decode(code, y, 5), sphere_oracle(code, y, 5));
    bool unique_ok = false;
    try {
      const auto u = unique_decode(code, y);
      unique_ok = !u.empty() && tag_decode(extract_message(code, u.candidates[0].codeword)) == msg;
    } catch (const DecodingFailure&) {
    }
    const auto cands = decrypt_candidates(kp, ct);
    if (!unique_ok && cands.size() == 1 && cands[0] == msg) ++witnesses;
  }
  EXPECT_GT(witnesses, 0);
}

TEST(Decrypt, HeavyTamperingHasNoCandidate) {
  for (Decoder d : {Decoder::ud, Decoder::ld}) {
    const auto kp = keygen({Variant::generic, 8, 200, 12, d}, seed_of(12));
    std::mt19937_64 rng(13);
    for (std::uint32_t i = 0; i < 20; ++i) {
      const BitVec msg = random_bits(32, rng);
      auto ct = encrypt(kp, msg, seed_of(3000 + i));
      // Flip r + 1 more positions so the word is w_enc + r + 1 away from the sent codeword.
      const auto clean = encrypt(kp, msg, seed_of(3000 + i));
      std::size_t flipped = 0;
      for (std::size_t j = 0; flipped < kp.params.r + 1; j = (j + 37) % 200) {
        BitVec probe = ct.vector;
        probe.flip(j);
        if (distance(probe, clean.vector) > distance(ct.vector, clean.vector)) {
          ct.vector = probe;
          ++flipped;
        }
      }
      EXPECT_THROW(decrypt(kp, ct), NoCandidate);
    }
  }
}

TEST(Serialization, KeyRoundTripPreservesCiphertexts) {
  for (const Shape s : {Shape{Variant::generic, 6, 64, 6}, Shape{Variant::dyadic, 8, 144, 16}})
    for (Decoder d : {Decoder::ud, Decoder::ld}) {
      const auto kp = keygen({s.variant, s.m, s.n, s.r, d}, seed_of(14));
      const Bytes file = serialize_key(kp);
      const auto back = parse_key(file);
      EXPECT_EQ(serialize_key(back), file);
      EXPECT_EQ(back.params, kp.params);
      const BitVec msg = BitVec::from_string("101");
      EXPECT_EQ(encrypt(back, msg, seed_of(15)), encrypt(kp, msg, seed_of(15)));
      EXPECT_EQ(decrypt(back, encrypt(kp, msg, seed_of(15))), msg);
    }
}

TEST(Serialization, HeadersAndCorruption) {
  const auto kp = keygen({Variant::generic, 6, 64, 6, Decoder::ud}, seed_of(16));
  Bytes file = serialize_key(kp);
  EXPECT_EQ(std::string(file.begin(), file.begin() + 4), "GPPA");
  EXPECT_EQ(file[4], 0x01);
  Bytes bad = file;
  bad.back() ^= 1;
  EXPECT_THROW(parse_key(bad), FormatError);
  bad = file;
  bad.push_back(0);
  EXPECT_THROW(parse_key(bad), FormatError);
  const auto ct = encrypt(kp, BitVec::from_string("11"), seed_of(17));
  const Bytes cfile = serialize_ciphertext(ct);
  EXPECT_EQ(std::string(cfile.begin(), cfile.begin() + 4), "GCTX");
  EXPECT_EQ(cfile.size(), 12U + 8U);
  EXPECT_EQ(parse_ciphertext(cfile), ct);
  EXPECT_THROW(parse_ciphertext(Bytes(cfile.begin(), cfile.end() - 1)), FormatError);
}
