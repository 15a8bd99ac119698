#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace goppa;

namespace {

BinMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  BinMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1U) m.set(i, j);
  return m;
}

// Every combination of the rows of a, by exhaustive enumeration.
std::vector<BitVec> span_of(const BinMatrix& a) {
  std::vector<BitVec> out;
  for (std::uint32_t mask = 0; mask < (1U << a.rows()); ++mask) {
    BitVec v(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      if ((mask >> i) & 1U) v ^= a.row_vec(i);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](const BitVec& x, const BitVec& y) { return lex_less(x, y); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST(BitVec, StringRoundTripAndWeight) {
  const BitVec v = BitVec::from_string("1011000001");
  EXPECT_EQ(v.size(), 10U);
  EXPECT_EQ(v.weight(), 4U);
  EXPECT_EQ(v.to_string(), "1011000001");
  BitVec w(130);
  w.set(0);
  w.set(129);
  EXPECT_EQ(w.weight(), 2U);
  EXPECT_EQ(distance(w, BitVec(130)), 2U);
}

TEST(Rref, IdentityAndZero) {
  const auto id = rref(BinMatrix::identity(9));
  EXPECT_EQ(id.rank, 9U);
  EXPECT_EQ(id.reduced, BinMatrix::identity(9));
  const auto z = rref(BinMatrix(4, 7));
  EXPECT_EQ(z.rank, 0U);
  EXPECT_TRUE(z.reduced.is_zero());
}

TEST(Rref, PreservesRowSpaceExhaustively) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const BinMatrix m = random_matrix(10, 20, rng);
    const auto r = rref(m);
    EXPECT_EQ(span_of(m), span_of(r.reduced));
    EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < m.rows(); ++j) EXPECT_EQ(r.reduced.get(j, r.pivots[i]), i == j);
  }
}

TEST(Rref, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 90;
    const BinMatrix m = random_matrix(rows, cols, rng);
    const BinMatrix ns = null_space(m);
    EXPECT_EQ(rank(m) + ns.rows(), cols);
    for (std::size_t i = 0; i < ns.rows(); ++i) EXPECT_TRUE(m.mul(ns.row_vec(i)).is_zero());
    EXPECT_EQ(rank(ns), ns.rows());
  }
  EXPECT_EQ(null_space(BinMatrix::identity(6)).rows(), 0U);
  EXPECT_EQ(null_space(BinMatrix(3, 5)).rows(), 5U);
}

TEST(SystematicForm, IdentityPrefixIsUnchanged) {
  std::mt19937_64 rng(3);
  BinMatrix m(5, 12);
  for (std::size_t i = 0; i < 5; ++i) m.set(i, i);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 5; j < 12; ++j)
      if (rng() & 1U) m.set(i, j);
  const auto s = systematic_form(m);
  EXPECT_EQ(s.matrix, m);
  for (std::size_t c = 0; c < 12; ++c) EXPECT_EQ(s.colperm[c], c);
}

TEST(SystematicForm, RankDeficientThrows) {
  BinMatrix m(3, 6);
  m.set(0, 1);
  m.set(1, 1);
  m.set(2, 4);
  try {
    systematic_form(m);
    FAIL() << "expected RankDeficiency";
  } catch (const RankDeficiency& e) {
    EXPECT_EQ(e.rank(), 2U);
  }
}

TEST(SystematicForm, GeneratesTheSameCode) {
  std::mt19937_64 rng(4);
  int tested = 0;
  while (tested < 30) {
    const BinMatrix m = random_matrix(8, 16, rng);
    if (rank(m) < 8) continue;
    ++tested;
    const auto s = systematic_form(m);
    const BinMatrix permuted = m.select_columns(s.colperm);
    // Independent parity: null space of the permuted input.
    const BinMatrix h = null_space(permuted);
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_TRUE(h.mul(s.matrix.row_vec(i)).is_zero());
      for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(s.matrix.get(i, j), i == j);
    }
    EXPECT_EQ(span_of(permuted), span_of(s.matrix));
  }
}

TEST(Solve, FindsPreimagesAndMembership) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const BinMatrix m = random_matrix(12, 20, rng);
    const BitVec x = testing_support::random_bits(20, rng);
    const BitVec b = m.mul(x);
    const auto sol = solve(m, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.mul(*sol), b);
    const BitVec coeffs = testing_support::random_bits(12, rng);
    EXPECT_TRUE(in_row_space(m, m.left_mul(coeffs)));
  }
  BinMatrix z(2, 3);
  BitVec b(2);
  b.set(0);
  EXPECT_FALSE(solve(z, b).has_value());
}

TEST(BinMatrix, TransposeAndProduct) {
  std::mt19937_64 rng(6);
  const BinMatrix a = random_matrix(7, 70, rng);
  const BinMatrix b = random_matrix(70, 9, rng);
  EXPECT_EQ(a.transpose().transpose(), a);
  const BinMatrix ab = a * b;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      bool s = false;
      for (std::size_t l = 0; l < 70; ++l) s ^= a.get(i, l) && b.get(l, j);
      EXPECT_EQ(ab.get(i, j), s);
    }
}
