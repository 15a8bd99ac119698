#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "goppa/binmat.hpp"
#include "goppa/errors.hpp"
#include "goppa/field.hpp"

namespace goppa {

/// Binary Goppa code Gamma(L, G) with its parity and generator matrices.
class GoppaCode {
 public:
  const Field& field() const noexcept { return field_; }
  const std::vector<Elem>& support() const noexcept { return support_; }
  const Poly& gpoly() const noexcept { return g_; }
  const Poly& gpoly_squared() const noexcept { return g2_; }

  std::size_t m() const noexcept { return static_cast<std::size_t>(field_.degree()); }
  std::size_t n() const noexcept { return support_.size(); }
  std::size_t k() const noexcept { return k_; }
  std::size_t r() const noexcept { return static_cast<std::size_t>(g_.degree()); }

  /// Entry (i, j) of the r x n alternant parity matrix, L_j^i / G(L_j).
  Elem parity_ext(std::size_t i, std::size_t j) const noexcept { return parity_ext_[i * n() + j]; }
  const BinMatrix& parity_bin() const noexcept { return parity_bin_; }

  /// k x n generator with an identity on the columns colperm()[0..k).
  const BinMatrix& gen() const noexcept { return gen_; }
  const std::vector<std::size_t>& colperm() const noexcept { return colperm_; }

  /// 1 / G(L_j).
  Elem inv_g_at(std::size_t j) const noexcept { return inv_g_at_[j]; }

  bool squarefree() const noexcept { return squarefree_; }
  /// sqrt(x) mod G, available when G is square-free.
  const Poly& sqrt_x() const {
    if (!squarefree_) throw ParameterError("square root of x needs a square-free Goppa polynomial");
    return sqrt_x_;
  }

  friend GoppaCode build_code(const Field& field, std::vector<Elem> support, const Poly& g);
  friend GoppaCode build_code_unchecked(const Field& field, std::vector<Elem> support, const Poly& g);

 private:
  explicit GoppaCode(const Field& f) : field_(f) {}

  Field field_;
  std::vector<Elem> support_;
  Poly g_;
  Poly g2_;
  std::vector<Elem> parity_ext_;
  std::vector<Elem> inv_g_at_;
  BinMatrix parity_bin_;
  BinMatrix gen_;
  std::size_t k_ = 0;
  std::vector<std::size_t> colperm_;
  bool squarefree_ = false;
  Poly sqrt_x_;
};

/// Builds the code without checking square-freeness. Used for Gamma(L, G^2).
inline GoppaCode build_code_unchecked(const Field& field, std::vector<Elem> support, const Poly& g) {
  if (g.degree() < 1) throw ConstructionError("Goppa polynomial must have degree at least 1");
  if (support.empty()) throw ConstructionError("support is empty");
  if (support.size() > field.order()) throw ConstructionError("support longer than the field");
  std::unordered_set<std::uint32_t> seen;
  for (auto a : support) {
    if (!field.contains(a)) throw ConstructionError("support element outside the field");
    if (!seen.insert(a.v).second) throw ConstructionError("repeated support element");
  }

  GoppaCode c(field);
  c.support_ = std::move(support);
  c.g_ = g;
  c.g2_ = poly_sqr(field, g);
  const std::size_t n = c.support_.size();
  const auto r = static_cast<std::size_t>(g.degree());
  const auto m = static_cast<std::size_t>(field.degree());

  c.inv_g_at_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem v = poly_eval(field, g, c.support_[j]);
    if (v.is_zero()) throw ConstructionError("support element is a root of the Goppa polynomial");
    c.inv_g_at_[j] = field.inv(v);
  }

  c.parity_ext_.resize(r * n);
  c.parity_bin_ = BinMatrix(m * r, n);
  for (std::size_t j = 0; j < n; ++j) {
    Elem e = c.inv_g_at_[j];
    for (std::size_t i = 0; i < r; ++i) {
      c.parity_ext_[i * n + j] = e;
      for (std::size_t b = 0; b < m; ++b)
        if ((e.v >> b) & 1U) c.parity_bin_.set(i * m + b, j);
      e = field.mul(e, c.support_[j]);
    }
  }

  auto red = rref(null_space(c.parity_bin_));
  c.k_ = red.rank;
  if (c.k_ == 0) throw ConstructionError("code has dimension zero");
  c.gen_ = std::move(red.reduced);
  c.colperm_ = red.pivots;
  std::vector<bool> info(n, false);
  for (auto p : red.pivots) info[p] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!info[j]) c.colperm_.push_back(j);
  return c;
}

/// Gamma(L, G) for square-free G. The support order is preserved.
inline GoppaCode build_code(const Field& field, std::vector<Elem> support, const Poly& g) {
  if (!poly_is_squarefree(field, g)) throw ConstructionError("Goppa polynomial is not square-free");
  GoppaCode c = build_code_unchecked(field, std::move(support), g);
  c.squarefree_ = true;
  c.sqrt_x_ = poly_sqrt_x_mod(field, g);
  return c;
}

inline BitVec encode(const GoppaCode& code, const BitVec& msg) {
  if (msg.size() != code.k()) throw ParameterError("message length must equal the code dimension");
  return code.gen().left_mul(msg);
}

/// Information bits of a codeword, read from the systematic positions.
inline BitVec extract_message(const GoppaCode& code, const BitVec& cw) {
  if (cw.size() != code.n()) throw ParameterError("word length must equal the code length");
  BitVec msg(code.k());
  for (std::size_t i = 0; i < code.k(); ++i)
    if (cw.get(code.colperm()[i])) msg.set(i);
  return msg;
}

/// Binary syndrome parity_bin * y^T.
inline BitVec syndrome_bin(const GoppaCode& code, const BitVec& y) { return code.parity_bin().mul(y); }

inline bool is_codeword(const GoppaCode& code, const BitVec& y) { return syndrome_bin(code, y).is_zero(); }

/// sum over y_j = 1 of 1/(x - L_j), reduced modulo `modulus`.
inline Poly syndrome_poly(const GoppaCode& code, const BitVec& y, const Poly& modulus) {
  if (y.size() != code.n()) throw ParameterError("word length must equal the code length");
  const Field& f = code.field();
  const int d = modulus.degree();
  if (d < 1) throw ParameterError("syndrome modulus must have positive degree");
  std::vector<Elem> acc(static_cast<std::size_t>(d));
  std::vector<Elem> q(static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < code.n(); ++j) {
    if (!y.get(j)) continue;
    const Elem a = code.support()[j];
    // (M(x) - M(a)) / (x - a) by synthetic division.
    q[static_cast<std::size_t>(d - 1)] = modulus[static_cast<std::size_t>(d)];
    for (int i = d - 1; i >= 1; --i)
      q[static_cast<std::size_t>(i - 1)] = modulus[static_cast<std::size_t>(i)] + f.mul(a, q[static_cast<std::size_t>(i)]);
    const Elem ma = f.mul(a, q[0]) + modulus[0];
    const Elem s = f.inv(ma);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += f.mul(q[i], s);
  }
  return Poly(std::move(acc));
}

inline Poly syndrome_poly(const GoppaCode& code, const BitVec& y) { return syndrome_poly(code, y, code.gpoly()); }

/// True iff Gamma(L, G) and Gamma(L, G^2) have equal dimension and each
/// generator is orthogonal to the other's parity matrix.
inline bool verify_prop1(const Field& field, const std::vector<Elem>& support, const Poly& g) {
  const GoppaCode c1 = build_code(field, support, g);
  const GoppaCode c2 = build_code_unchecked(field, support, poly_sqr(field, g));
  if (c1.k() != c2.k()) return false;
  for (std::size_t i = 0; i < c1.k(); ++i)
    if (!c2.parity_bin().mul(c1.gen().row_vec(i)).is_zero()) return false;
  for (std::size_t i = 0; i < c2.k(); ++i)
    if (!c1.parity_bin().mul(c2.gen().row_vec(i)).is_zero()) return false;
  return true;
}

inline constexpr std::size_t kMaxExhaustiveDim = 20;

/// Minimum nonzero weight by Gray-code enumeration of all 2^k codewords.
inline std::size_t min_distance_exhaustive(const GoppaCode& code) {
  const std::size_t k = code.k();
  if (k > kMaxExhaustiveDim) throw CapacityError("dimension too large for exhaustive enumeration");
  BitVec cw(code.n());
  std::size_t best = code.n() + 1;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    cw ^= code.gen().row_vec(static_cast<std::size_t>(std::countr_zero(i)));
    best = std::min(best, cw.weight());
  }
  return best;
}

}  // namespace goppa
