#include <iostream>
#include <string>

#include "goppa/goppa.hpp"

using namespace goppa;

int main() {
  const Bytes seed = bytes_from_hex("00112233445566778899aabbccddeeff");
  for (const Decoder dec : {Decoder::ud, Decoder::ld}) {
    const KeyPair kp = keygen({Variant::generic, 6, 64, 6, dec}, seed);
    const auto& p = kp.params;
    BitVec msg(8);
    for (std::size_t i = 0; i < 8; i += 3) msg.set(i);
    const Cryptogram ct = encrypt(kp, msg, derive_seed(seed, 1));
    const BitVec out = decrypt(kp, ct);
    std::cout << to_string(dec) << ": n=" << p.n << " k=" << p.k << " r=" << p.r << " errors=" << p.w_enc
              << " payload " << msg.to_string() << " -> " << out.to_string() << (out == msg ? " ok" : " FAILED") << "\n";
  }

  const KeyPair qd = keygen({Variant::dyadic, 10, 256, 16, Decoder::ud}, seed);
  const Bytes blob = compact_pubkey(qd.redundancy, qd.params.m, qd.params.r);
  std::cout << "dyadic: n=" << qd.params.n << " k=" << qd.params.k << " compact key " << blob.size() << " bytes, "
            << keysize_bits(qd.params) << " payload bits\n";
  return 0;
}
