#pragma once

// Quasi-dyadic Goppa codes and their compact public keys.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goppa/binmat.hpp"
#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/goppa_code.hpp"
#include "goppa/rng.hpp"

namespace goppa {

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// h_0..h_{N-1} stored as their inverses, with 1/h_{i^j} = 1/h_i + 1/h_j + 1/h_0.
/// When N = 2^m exactly one inverse is zero (h infinite); its index is the pole.
struct DyadicSignature {
  Field field{2};
  std::vector<Elem> inv_h;
  Elem omega{};
  std::optional<std::size_t> pole;

  std::size_t size() const noexcept { return inv_h.size(); }
  Elem h(std::size_t i) const { return field.inv(inv_h[i]); }
  /// z_i = 1/h_i + omega.
  Elem root(std::size_t i) const { return inv_h[i] + omega; }
  /// u_j = 1/h_j + 1/h_0 + omega.
  Elem point(std::size_t j) const { return inv_h[j] + inv_h[0] + omega; }
};

inline constexpr std::size_t kSignatureRejections = 1000;

inline DyadicSignature gen_signature(const Field& field, std::size_t N, std::span<const std::uint8_t> seed) {
  if (!is_power_of_two(N) || N > field.order()) throw ParameterError("N must be a power of two not above 2^m");
  SeededStream rng(seed, "goppa/signature");
  const bool allow_pole = N == field.order();
  auto draw_nonzero = [&] { return Elem{1 + rng.uniform(field.order() - 1)}; };

  DyadicSignature sig;
  sig.field = field;
  sig.inv_h.assign(N, Elem{});
  std::vector<bool> used(field.order(), false);
  std::size_t rejections = 0;

  sig.inv_h[0] = field.inv(draw_nonzero());
  used[sig.inv_h[0].v] = true;
  for (std::size_t s = 1; s < N; s <<= 1) {
    while (true) {
      const Elem inv_s = field.inv(draw_nonzero());
      std::vector<Elem> fresh(s);
      bool ok = true;
      std::optional<std::size_t> pole;
      for (std::size_t j = 0; j < s && ok; ++j) {
        fresh[j] = inv_s + sig.inv_h[j] + sig.inv_h[0];
        if (used[fresh[j].v]) ok = false;
        if (fresh[j].is_zero()) {
          if (!allow_pole) ok = false;
          pole = s + j;
        }
        for (std::size_t q = 0; q < j && ok; ++q)
          if (fresh[q] == fresh[j]) ok = false;
      }
      if (ok) {
        for (std::size_t j = 0; j < s; ++j) {
          sig.inv_h[s + j] = fresh[j];
          used[fresh[j].v] = true;
        }
        if (pole) sig.pole = pole;
        break;
      }
      if (++rejections > kSignatureRejections) throw ExhaustionError("signature generation exhausted its rejections");
    }
  }
  sig.omega = Elem{rng.uniform(field.order())};
  return sig;
}

/// True iff 1/h_{i^j} = 1/h_i + 1/h_j + 1/h_0 for every pair.
inline bool signature_identity_holds(const DyadicSignature& sig) {
  const std::size_t N = sig.size();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (sig.inv_h[i ^ j] != sig.inv_h[i] + sig.inv_h[j] + sig.inv_h[0]) return false;
  return true;
}

struct DyadicCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

/// M_{ij} = M_{0, i^j} for all i, j.
inline DyadicCheck dyadic_check(const std::vector<std::vector<Elem>>& M) {
  const std::size_t r = M.size();
  if (!is_power_of_two(r)) throw ParameterError("dyadic matrices have power-of-two order");
  for (std::size_t i = 0; i < r; ++i) {
    if (M[i].size() != r) throw ParameterError("matrix is not square");
    for (std::size_t j = 0; j < r; ++j)
      if (M[i][j] != M[0][i ^ j]) return {false, std::make_pair(i, j)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Binary dyadic blocks as elements of GF(2)[Z_2^v].

using Block = BitVec;

inline Block block_mul(const Block& a, const Block& b) {
  const std::size_t r = a.size();
  Block p(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (!a.get(i)) continue;
    for (std::size_t j = 0; j < r; ++j)
      if (b.get(j)) p.flip(i ^ j);
  }
  return p;
}

/// a^2 = (sum a_i) * 1, so a unit is its own inverse.
inline bool block_is_unit(const Block& a) { return a.weight() % 2 == 1; }

inline Block block_from_matrix(const BinMatrix& m, std::size_t row0, std::size_t col0, std::size_t r) {
  Block b(r);
  for (std::size_t j = 0; j < r; ++j)
    if (m.get(row0, col0 + j)) b.set(j);
  return b;
}

inline bool block_is_dyadic(const BinMatrix& m, std::size_t row0, std::size_t col0, std::size_t r) {
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (m.get(row0 + i, col0 + j) != m.get(row0, col0 + (i ^ j))) return false;
  return true;
}

inline void write_block(BinMatrix& m, std::size_t row0, std::size_t col0, const Block& b) {
  const std::size_t r = b.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m.set(row0 + i, col0 + j, b.get(i ^ j));
}

// ---------------------------------------------------------------------------

struct DyadicParams {
  std::size_t m = 0;
  std::size_t N = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r = 0;
};

/// Smallest signature length with enough admissible blocks for (m, n, r).
inline std::size_t signature_length(std::size_t m, std::size_t n, std::size_t r) {
  const std::size_t order = std::size_t{1} << m;
  for (std::size_t N = std::max<std::size_t>(r, 2); N <= order; N <<= 1) {
    const std::size_t blocks = N / r - (N == order ? 1 : 0);
    if (N >= r && blocks * r >= n) return N;
  }
  throw ParameterError("support does not fit in the field");
}

/// Structural validity of quasi-dyadic parameters; returns N.
inline DyadicParams make_dyadic_params(std::size_t m, std::size_t n, std::size_t r) {
  if (m < 2 || m > 16) throw ParameterError("extension degree must be in [2, 16]");
  if (!is_power_of_two(r)) throw ParameterError("r must be a power of two");
  if (n % r != 0) throw ParameterError("r must divide n");
  if (n + r > (std::size_t{1} << m)) throw ParameterError("n must not exceed 2^m - r");
  if (n <= m * r) throw ParameterError("n - m r must be positive");
  return {m, signature_length(m, n, r), n, n - m * r, r};
}

struct QuasiDyadicCode {
  GoppaCode code;
  DyadicParams params;
  BinMatrix redundancy;  // A in gen = [I | A], block dyadic
};

namespace detail {

// Block Gaussian elimination of an m x nb matrix of blocks to [P | I].
// Returns the pivot block column of each block row.
inline std::optional<std::vector<std::size_t>> block_eliminate(std::vector<std::vector<Block>>& M) {
  const std::size_t rows = M.size();
  const std::size_t cols = M[0].size();
  std::vector<bool> is_pivot(cols, false);
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows; ++i) {
    std::optional<std::pair<std::size_t, std::size_t>> hit;
    for (std::size_t c = 0; c < cols && !hit; ++c) {
      if (is_pivot[c]) continue;
      for (std::size_t p = i; p < rows; ++p)
        if (block_is_unit(M[p][c])) {
          hit = std::make_pair(p, c);
          break;
        }
    }
    if (!hit) return std::nullopt;
    const auto [p, c] = *hit;
    std::swap(M[i], M[p]);
    const Block inv = M[i][c];
    for (auto& b : M[i]) b = block_mul(inv, b);
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == i || M[q][c].is_zero()) continue;
      const Block f = M[q][c];
      for (std::size_t cc = 0; cc < cols; ++cc) M[q][cc] ^= block_mul(f, M[i][cc]);
    }
    is_pivot[c] = true;
    pivots.push_back(c);
  }
  return pivots;
}

}  // namespace detail

/// Goppa code with G = prod (x - z_i) over n/r seeded dyadic support blocks.
/// Throws ConstructionError when block elimination does not reach full rank.
inline QuasiDyadicCode signature_to_code(const DyadicSignature& sig, const DyadicParams& params,
                                         std::span<const std::uint8_t> seed) {
  const std::size_t r = params.r;
  const std::size_t m = params.m;
  const std::size_t N = sig.size();
  const Field& f = sig.field;
  if (static_cast<std::size_t>(f.degree()) != m || N != params.N) throw ParameterError("signature does not match parameters");
  if (!is_power_of_two(r) || N % r != 0 || params.n % r != 0) throw ParameterError("inconsistent dyadic parameters");

  std::vector<std::size_t> admissible;
  for (std::size_t b = 0; b < N / r; ++b)
    if (!sig.pole || *sig.pole / r != b) admissible.push_back(b);
  const std::size_t nb = params.n / r;
  if (admissible.size() < nb) throw ConstructionError("not enough admissible dyadic blocks");

  SeededStream rng(seed, "goppa/blocks");
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t j = i + rng.uniform(static_cast<std::uint32_t>(admissible.size() - i));
    std::swap(admissible[i], admissible[j]);
  }
  std::vector<std::size_t> offsets(nb);
  for (std::size_t i = 0; i < nb; ++i) offsets[i] = (admissible[i] * r) ^ rng.uniform(static_cast<std::uint32_t>(r));

  // Cauchy parity 1/(z_i + u_{c ^ j}) = h_{c ^ i ^ j}: one dyadic block per bit and block column.
  std::vector<std::vector<Block>> M(m, std::vector<Block>(nb, Block(r)));
  for (std::size_t bc = 0; bc < nb; ++bc)
    for (std::size_t l = 0; l < r; ++l) {
      const Elem h = sig.h(offsets[bc] ^ l);
      for (std::size_t b = 0; b < m; ++b)
        if ((h.v >> b) & 1U) M[b][bc].set(l);
    }
  if (nb <= m) throw ConstructionError("code would have dimension zero");
  const auto pivots = detail::block_eliminate(M);
  if (!pivots) throw ConstructionError("dyadic parity is not block full rank");

  std::vector<bool> is_pivot(nb, false);
  for (auto p : *pivots) is_pivot[p] = true;
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < nb; ++c)
    if (!is_pivot[c]) order.push_back(c);
  const std::size_t kb = order.size();
  order.insert(order.end(), pivots->begin(), pivots->end());

  std::vector<Elem> support;
  support.reserve(params.n);
  for (auto c : order)
    for (std::size_t j = 0; j < r; ++j) support.push_back(sig.point(offsets[c] ^ j));
  Poly g = Poly::constant(Elem{1});
  for (std::size_t i = 0; i < r; ++i) g = poly_mul(f, g, Poly(std::vector<Elem>{sig.root(i), Elem{1}}));

  const std::size_t k = kb * r;
  BinMatrix a(k, m * r);
  for (std::size_t ib = 0; ib < kb; ++ib)
    for (std::size_t b = 0; b < m; ++b) write_block(a, ib * r, b * r, M[b][order[ib]]);

  QuasiDyadicCode out{build_code(f, std::move(support), g), params, std::move(a)};
  out.params.k = k;
  const GoppaCode& code = out.code;
  if (code.k() != k) throw InternalError("dyadic dimension disagrees with the binary rank");
  for (std::size_t i = 0; i < k; ++i)
    if (code.colperm()[i] != i) throw InternalError("dyadic information set is not leading");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m * r; ++j)
      if (code.gen().get(i, k + j) != out.redundancy.get(i, j)) throw InternalError("dyadic generator mismatch");
  return out;
}

inline constexpr std::uint32_t kDyadicAttempts = 64;

/// Signature and code from one seed, retrying with derived seeds on rank failure.
inline QuasiDyadicCode make_quasi_dyadic(std::size_t m, std::size_t n, std::size_t r, std::span<const std::uint8_t> seed) {
  const DyadicParams params = make_dyadic_params(m, n, r);
  const Field f(static_cast<int>(m));
  for (std::uint32_t attempt = 0; attempt < kDyadicAttempts; ++attempt) {
    const Bytes s = derive_seed(seed, attempt);
    try {
      const DyadicSignature sig = gen_signature(f, params.N, s);
      return signature_to_code(sig, params, s);
    } catch (const ConstructionError&) {
    } catch (const ExhaustionError&) {
    }
  }
  throw ConstructionError("no full-rank quasi-dyadic code after retries");
}

// ---------------------------------------------------------------------------
// Compact key: "QDGK" 0x01 m log2(r) k/r(be16), then the first row of each
// dyadic block of A, row-major over blocks, ceil(r/8) bytes LSB first.

struct CompactKey {
  std::size_t m = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  BinMatrix redundancy;
};

inline constexpr std::size_t kCompactHeaderBytes = 9;

inline Bytes compact_pubkey(const BinMatrix& a, std::size_t m, std::size_t r) {
  if (!is_power_of_two(r) || r > (std::size_t{1} << 15)) throw ParameterError("r must be a power of two");
  const std::size_t k = a.rows();
  if (k % r != 0 || a.cols() != m * r) throw StructureError("redundancy part is not an array of r x r blocks");
  if (k / r > 0xFFFF) throw StructureError("too many block rows for the compact layout");
  Bytes out{'Q', 'D', 'G', 'K', 0x01, static_cast<std::uint8_t>(m),
            static_cast<std::uint8_t>(std::countr_zero(r)), static_cast<std::uint8_t>((k / r) >> 8),
            static_cast<std::uint8_t>(k / r)};
  const std::size_t bytes_per = (r + 7) / 8;
  for (std::size_t ib = 0; ib < k / r; ++ib)
    for (std::size_t b = 0; b < m; ++b) {
      if (!block_is_dyadic(a, ib * r, b * r, r)) throw StructureError("block is not dyadic");
      std::vector<std::uint8_t> sig(bytes_per, 0);
      for (std::size_t j = 0; j < r; ++j)
        if (a.get(ib * r, b * r + j)) sig[j / 8] |= static_cast<std::uint8_t>(1U << (j % 8));
      out.insert(out.end(), sig.begin(), sig.end());
    }
  return out;
}

inline Bytes compact_pubkey(const QuasiDyadicCode& qd) { return compact_pubkey(qd.redundancy, qd.params.m, qd.params.r); }

/// Payload size in bits (excluding the header).
inline std::size_t compact_payload_bits(std::size_t m, std::size_t k, std::size_t r) {
  return (k / r) * m * ((r + 7) / 8) * 8;
}

inline CompactKey expand_pubkey(std::span<const std::uint8_t> blob) {
  if (blob.size() < kCompactHeaderBytes || blob[0] != 'Q' || blob[1] != 'D' || blob[2] != 'G' || blob[3] != 'K')
    throw FormatError("missing compact key header");
  if (blob[4] != 0x01) throw FormatError("unsupported compact key version");
  CompactKey key;
  key.m = blob[5];
  if (blob[6] > 15) throw FormatError("block order out of range");
  key.r = std::size_t{1} << blob[6];
  const std::size_t kb = (std::size_t{blob[7]} << 8) | blob[8];
  key.k = kb * key.r;
  if (key.m < 2 || key.m > 16) throw FormatError("extension degree out of range");
  const std::size_t bytes_per = (key.r + 7) / 8;
  if (blob.size() != kCompactHeaderBytes + kb * key.m * bytes_per) throw FormatError("compact key has wrong length");
  key.redundancy = BinMatrix(key.k, key.m * key.r);
  std::size_t off = kCompactHeaderBytes;
  for (std::size_t ib = 0; ib < kb; ++ib)
    for (std::size_t b = 0; b < key.m; ++b) {
      Block sig(key.r);
      for (std::size_t j = 0; j < key.r; ++j)
        if ((blob[off + j / 8] >> (j % 8)) & 1U) sig.set(j);
      if (key.r % 8 != 0 && (blob[off + bytes_per - 1] >> (key.r % 8)) != 0) throw FormatError("nonzero padding bits");
      write_block(key.redundancy, ib * key.r, b * key.r, sig);
      off += bytes_per;
    }
  return key;
}

}  // namespace goppa
