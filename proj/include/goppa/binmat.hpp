#pragma once

// Dense linear algebra over GF(2) on bit-packed rows.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "goppa/errors.hpp"

namespace goppa {

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// A fixed-length vector over GF(2). Bits past size() are kept at zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

  std::size_t size() const noexcept { return n_; }

  bool get(std::size_t i) const noexcept { return (w_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (v) {
      w_[i / kWordBits] |= mask;
    } else {
      w_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { w_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  std::size_t weight() const noexcept {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool is_zero() const noexcept {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
  }

  BitVec& operator^=(const BitVec& o) {
    if (o.n_ != n_) throw ParameterError("bit vector length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  std::span<std::uint64_t> words() noexcept { return w_; }
  std::span<const std::uint64_t> words() const noexcept { return w_; }

  /// Hamming distance.
  friend std::size_t distance(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) throw ParameterError("bit vector length mismatch");
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(a.w_[i] ^ b.w_[i]));
    return c;
  }

  friend bool operator==(const BitVec&, const BitVec&) = default;

  /// Lexicographic order on the bit sequence (index 0 is most significant).
  friend bool lex_less(const BitVec& a, const BitVec& b) {
    const std::size_t n = std::min(a.n_, b.n_);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.get(i) != b.get(i)) return b.get(i);
    }
    return a.n_ < b.n_;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) s[i] = get(i) ? '1' : '0';
    return s;
  }

  static BitVec from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i);
      } else if (s[i] != '0') {
        throw ParameterError("bit string may only contain 0 and 1");
      }
    }
    return v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Row-major bit-packed matrix over GF(2); bit j of row i is entry (i, j).
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), bits_(rows * words_for(cols), 0) {}

  static BinMatrix identity(std::size_t n) {
    BinMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool v = true) noexcept {
    auto& w = bits_[i * stride_ + j / kWordBits];
    const std::uint64_t mask = std::uint64_t{1} << (j % kWordBits);
    w = v ? (w | mask) : (w & ~mask);
  }

  std::span<std::uint64_t> row(std::size_t i) noexcept { return {bits_.data() + i * stride_, stride_}; }
  std::span<const std::uint64_t> row(std::size_t i) const noexcept { return {bits_.data() + i * stride_, stride_}; }

  void xor_row_into(std::size_t dst, std::size_t src) noexcept {
    auto* d = bits_.data() + dst * stride_;
    const auto* s = bits_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
  }
  void swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }

  BitVec row_vec(std::size_t i) const {
    BitVec v(cols_);
    std::copy(row(i).begin(), row(i).end(), v.words().begin());
    return v;
  }
  void set_row(std::size_t i, const BitVec& v) {
    if (v.size() != cols_) throw ParameterError("row length mismatch");
    std::copy(v.words().begin(), v.words().end(), row(i).begin());
  }

  bool is_zero_row(std::size_t i) const noexcept {
    const auto r = row(i);
    return std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
  }

  BinMatrix transpose() const {
    BinMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j)) t.set(j, i);
    return t;
  }

  /// Columns in the given order: result column c is this column cols[c].
  BinMatrix select_columns(std::span<const std::size_t> cols) const {
    BinMatrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (get(i, cols[c])) out.set(i, c);
    return out;
  }

  /// Row vector times matrix: XOR of the rows selected by v.
  BitVec left_mul(const BitVec& v) const {
    if (v.size() != rows_) throw ParameterError("vector length does not match matrix rows");
    BitVec out(cols_);
    auto o = out.words();
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!v.get(i)) continue;
      const auto r = row(i);
      for (std::size_t w = 0; w < stride_; ++w) o[w] ^= r[w];
    }
    return out;
  }

  /// Matrix times column vector.
  BitVec mul(const BitVec& v) const {
    if (v.size() != cols_) throw ParameterError("vector length does not match matrix columns");
    BitVec out(rows_);
    const auto x = v.words();
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto r = row(i);
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < stride_; ++w) acc ^= r[w] & x[w];
      if (std::popcount(acc) & 1) out.set(i);
    }
    return out;
  }

  BinMatrix operator*(const BinMatrix& o) const {
    if (cols_ != o.rows_) throw ParameterError("matrix dimension mismatch");
    BinMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto d = out.row(i);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!get(i, j)) continue;
        const auto s = o.row(j);
        for (std::size_t w = 0; w < out.stride_; ++w) d[w] ^= s[w];
      }
    }
    return out;
  }

  bool is_zero() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t x) { return x == 0; });
  }

  friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct RrefResult {
  BinMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Columns are scanned left to right and the pivot
/// row is the smallest remaining row index with a one in that column.
inline RrefResult rref(BinMatrix m) {
  RrefResult res;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(rank, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != rank && m.get(i, c)) m.xor_row_into(i, rank);
    res.pivots.push_back(c);
    ++rank;
  }
  res.rank = rank;
  res.reduced = std::move(m);
  return res;
}

inline std::size_t rank(const BinMatrix& m) { return rref(m).rank; }

struct SystematicForm {
  BinMatrix matrix;                  // [I | A]
  std::vector<std::size_t> colperm;  // column c of matrix is input column colperm[c]
};

/// Brings a full-row-rank matrix to [I | A]. Pivot columns move to the front
/// in pivot order; the remaining columns keep their relative order.
inline SystematicForm systematic_form(const BinMatrix& m) {
  auto r = rref(m);
  if (r.rank != m.rows()) throw RankDeficiency(r.rank, m.rows());
  std::vector<std::size_t> perm = r.pivots;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) perm.push_back(c);
  return {r.reduced.select_columns(perm), std::move(perm)};
}

/// Basis (as rows) of the right null space {x : M x^T = 0}.
inline BinMatrix null_space(const BinMatrix& m) {
  const auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  BinMatrix basis(m.cols() - r.rank, m.cols());
  std::size_t row = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    basis.set(row, f);
    for (std::size_t i = 0; i < r.rank; ++i)
      if (r.reduced.get(i, f)) basis.set(row, r.pivots[i]);
    ++row;
  }
  return basis;
}

/// Some x with M x^T = b, if the system is consistent.
inline std::optional<BitVec> solve(const BinMatrix& m, const BitVec& b) {
  if (b.size() != m.rows()) throw ParameterError("right-hand side length mismatch");
  BinMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) aug.set(i, j);
    if (b.get(i)) aug.set(i, m.cols());
  }
  const auto r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  BitVec x(m.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    if (r.reduced.get(i, m.cols())) x.set(r.pivots[i]);
  return x;
}

/// True iff v lies in the row space of m.
inline bool in_row_space(const BinMatrix& m, const BitVec& v) { return solve(m.transpose(), v).has_value(); }

}  // namespace goppa
