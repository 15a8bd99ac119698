#pragma once

// Arithmetic in GF(2^m), 2 <= m <= 16, and in GF(2^m)[x].

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "goppa/binmat.hpp"
#include "goppa/errors.hpp"

namespace goppa {

/// Element of GF(2^m) in polynomial basis: bit i is the coefficient of alpha^i.
struct Elem {
  std::uint32_t v = 0;

  constexpr bool is_zero() const noexcept { return v == 0; }
  friend constexpr Elem operator+(Elem a, Elem b) noexcept { return Elem{a.v ^ b.v}; }
  constexpr Elem& operator+=(Elem b) noexcept {
    v ^= b.v;
    return *this;
  }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

// Degree of a GF(2)[x] polynomial packed into an integer; -1 for zero.
constexpr int gf2_degree(std::uint64_t p) noexcept {
  int d = -1;
  while (p) {
    p >>= 1;
    ++d;
  }
  return d;
}

constexpr std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t b) noexcept {
  const int db = gf2_degree(b);
  for (int da = gf2_degree(a); da >= db; da = gf2_degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace detail

/// True iff the GF(2)[x] polynomial p (bit i = coefficient of x^i) is irreducible.
/// Trial division by every polynomial of degree 1..deg/2.
constexpr bool gf2_is_irreducible(std::uint64_t p) noexcept {
  const int d = detail::gf2_degree(p);
  if (d < 1) return false;
  for (std::uint64_t q = 2; detail::gf2_degree(q) <= d / 2; ++q)
    if (detail::gf2_mod(p, q) == 0) return false;
  return true;
}

class Field {
 public:
  static constexpr int kMinDegree = 2;
  static constexpr int kMaxDegree = 16;

  /// GF(2^m) with the lexicographically smallest irreducible modulus of degree m.
  explicit Field(int m) : m_(m) {
    if (m < kMinDegree || m > kMaxDegree) throw ParameterError("extension degree must be in [2, 16]");
    const std::uint32_t lo = 1U << m;
    for (std::uint32_t p = lo; p < (lo << 1); ++p) {
      if (gf2_is_irreducible(p)) {
        modulus_ = p;
        break;
      }
    }
  }

  int degree() const noexcept { return m_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t order() const noexcept { return 1U << m_; }
  std::uint32_t mask() const noexcept { return order() - 1; }

  bool contains(Elem a) const noexcept { return a.v < order(); }
  Elem element(std::uint32_t v) const {
    if (v >= order()) throw ParameterError("value outside the field");
    return Elem{v};
  }

  Elem add(Elem a, Elem b) const noexcept { return a + b; }

  /// Shift-and-add multiplication with reduction by the modulus.
  Elem mul(Elem a, Elem b) const noexcept {
    std::uint32_t x = a.v;
    std::uint32_t y = b.v;
    std::uint32_t r = 0;
    const std::uint32_t top = 1U << (m_ - 1);
    const std::uint32_t red = modulus_ & mask();
    while (y) {
      r ^= x & (0U - (y & 1U));
      y >>= 1;
      const std::uint32_t carry = x & top;
      x = (x << 1) & mask();
      x ^= red & (0U - static_cast<std::uint32_t>(carry != 0));
    }
    return Elem{r};
  }

  Elem sqr(Elem a) const noexcept { return mul(a, a); }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r{1};
    while (e) {
      if (e & 1U) r = mul(r, a);
      a = sqr(a);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a.is_zero()) throw DivisionByZero("inverse of zero in GF(2^m)");
    return pow(a, order() - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Square root: a^(2^(m-1)).
  Elem sqrt(Elem a) const noexcept {
    for (int i = 1; i < m_; ++i) a = sqr(a);
    return a;
  }

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.modulus_ == b.modulus_; }

 private:
  int m_ = 0;
  std::uint32_t modulus_ = 0;
};

inline Field make_field(int m) { return Field(m); }

/// Degree of the zero polynomial.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

/// Univariate polynomial over GF(2^m), lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(Elem a) { return Poly(std::vector<Elem>{a}); }
  static Poly monomial(int d, Elem a = Elem{1}) {
    std::vector<Elem> c(static_cast<std::size_t>(d) + 1);
    c.back() = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(1); }

  int degree() const noexcept { return c_.empty() ? kMinusInfinity : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Elem{}; }
  Elem lead() const noexcept { return c_.empty() ? Elem{} : c_.back(); }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }

  void set(std::size_t i, Elem a) {
    if (i >= c_.size()) c_.resize(i + 1);
    c_[i] = a;
    trim();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Elem> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Elem> c_;
};

inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }

inline Poly poly_scale(const Field& f, const Poly& a, Elem s) {
  std::vector<Elem> c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.mul(a[i], s);
  return Poly(std::move(c));
}

inline Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += f.mul(a[i], b[j]);
  }
  return Poly(std::move(c));
}

/// Squaring is coefficient-wise in characteristic 2.
inline Poly poly_sqr(const Field& f, const Poly& a) {
  if (a.is_zero()) return {};
  std::vector<Elem> c(2 * a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) c[2 * i] = f.sqr(a[i]);
  return Poly(std::move(c));
}

struct DivMod {
  Poly quotient;
  Poly remainder;
};

inline DivMod poly_divmod(const Field& f, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> r = a.coeffs();
  const int db = b.degree();
  const Elem inv_lead = f.inv(b.lead());
  std::vector<Elem> q(static_cast<std::size_t>(a.degree() - db) + 1);
  for (int i = a.degree(); i >= db; --i) {
    const Elem c = r[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const Elem t = f.mul(c, inv_lead);
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] += f.mul(t, b[static_cast<std::size_t>(j)]);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly poly_mod(const Field& f, const Poly& a, const Poly& m) { return poly_divmod(f, a, m).remainder; }

inline Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(f, poly_mul(f, a, b), m);
}

inline Poly poly_monic(const Field& f, const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(f, a, f.inv(a.lead()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(const Field& f, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, a);
}

inline Elem poly_eval(const Field& f, const Poly& p, Elem x) {
  Elem r{};
  for (std::size_t i = p.size(); i-- > 0;) r = f.mul(r, x) + p[i];
  return r;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() < 2) return {};
  std::vector<Elem> c(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); i += 2) c[i - 1] = p[i];
  return Poly(std::move(c));
}

/// True iff gcd(p, p') is a nonzero constant. The zero polynomial is not square-free.
inline bool poly_is_squarefree(const Field& f, const Poly& p) {
  if (p.is_zero()) return false;
  return poly_gcd(f, p, poly_derivative(p)).degree() == 0;
}

/// Inverse of a modulo m; throws DivisionByZero if gcd(a, m) is not constant.
inline Poly poly_inv_mod(const Field& f, const Poly& a, const Poly& m) {
  Poly r0 = m;
  Poly r1 = poly_mod(f, a, m);
  Poly t0;
  Poly t1 = Poly::constant(Elem{1});
  while (!r1.is_zero() && r1.degree() > 0) {
    auto [q, r] = poly_divmod(f, r0, r1);
    Poly t = t0 + poly_mul(f, q, t1);
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r1.is_zero()) throw DivisionByZero("polynomial is not invertible modulo the given modulus");
  return poly_mod(f, poly_scale(f, t1, f.inv(r1[0])), m);
}

struct EeaPair {
  Poly a;
  Poly b;
};

/// Extended Euclid on (g, t), stopped at the first remainder of degree <= dstop.
/// Returns (a, b) with a = b * t (mod g).
inline EeaPair eea_stop(const Field& f, const Poly& g, const Poly& t, int dstop) {
  Poly r0 = g;
  Poly r1 = t;
  Poly b0;
  Poly b1 = Poly::constant(Elem{1});
  while (r1.degree() > dstop) {
    auto [q, r] = poly_divmod(f, r0, r1);
    Poly b = b0 + poly_mul(f, q, b1);
    r0 = std::move(r1);
    r1 = std::move(r);
    b0 = std::move(b1);
    b1 = std::move(b);
  }
  return {std::move(r1), std::move(b1)};
}

namespace detail {

// Expansion of a residue modulo g (degree d) into m*d bits, coefficient-major.
inline BitVec residue_bits(const Field& f, const Poly& p, int d) {
  const int m = f.degree();
  BitVec v(static_cast<std::size_t>(m * d));
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < m; ++b)
      if ((p[static_cast<std::size_t>(i)].v >> b) & 1U) v.set(static_cast<std::size_t>(i * m + b));
  return v;
}

}  // namespace detail

/// sqrt(x) modulo a square-free g. Squaring is GF(2)-linear and bijective on
/// GF(2^m)[x]/(g), so the root is the solution of one linear system.
inline Poly poly_sqrt_x_mod(const Field& f, const Poly& g) {
  const int d = g.degree();
  if (d < 1) throw ParameterError("modulus must have positive degree");
  const int m = f.degree();
  const auto dim = static_cast<std::size_t>(m * d);
  BinMatrix sq(dim, dim);
  for (int i = 0; i < d; ++i) {
    for (int b = 0; b < m; ++b) {
      const Poly e = Poly::monomial(i, Elem{1U << b});
      const BitVec col = detail::residue_bits(f, poly_mod(f, poly_sqr(f, e), g), d);
      const auto c = static_cast<std::size_t>(i * m + b);
      for (std::size_t r = 0; r < dim; ++r)
        if (col.get(r)) sq.set(r, c);
    }
  }
  const auto sol = solve(sq, detail::residue_bits(f, poly_mod(f, Poly::x(), g), d));
  if (!sol) throw InternalError("squaring modulo g is not surjective; g is not square-free");
  std::vector<Elem> c(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < m; ++b)
      if (sol->get(static_cast<std::size_t>(i * m + b))) c[static_cast<std::size_t>(i)].v |= 1U << b;
  return Poly(std::move(c));
}

/// R with R^2 = t (mod g), deg R < deg g, given sqrt(x) mod g.
inline Poly poly_sqrt_mod(const Field& f, const Poly& t, const Poly& g, const Poly& sqrt_x) {
  const Poly tr = poly_mod(f, t, g);
  std::vector<Elem> even;
  std::vector<Elem> odd;
  for (std::size_t i = 0; i < tr.size(); ++i) (i % 2 == 0 ? even : odd).push_back(f.sqrt(tr[i]));
  Poly r = poly_mod(f, Poly(std::move(even)) + poly_mul(f, sqrt_x, Poly(std::move(odd))), g);
  if (poly_mulmod(f, r, r, g) != tr) throw InternalError("square root modulo g failed verification");
  return r;
}

inline Poly poly_sqrt_mod(const Field& f, const Poly& t, const Poly& g) {
  return poly_sqrt_mod(f, t, g, poly_sqrt_x_mod(f, g));
}

/// Rabin's test: g of degree d is irreducible over GF(q), q = 2^m, iff
/// x^(q^d) = x mod g and gcd(x^(q^(d/p)) - x, g) = 1 for every prime p | d.
inline bool poly_is_irreducible(const Field& f, const Poly& g) {
  const int d = g.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  auto frob = [&](const Poly& h) {
    Poly r = h;
    for (int i = 0; i < f.degree(); ++i) r = poly_mod(f, poly_sqr(f, r), g);
    return r;
  };
  std::vector<int> primes;
  for (int p = 2, rest = d; rest > 1; ++p) {
    if (rest % p != 0) continue;
    primes.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  const Poly x = poly_mod(f, Poly::x(), g);
  std::vector<Poly> powers{x};
  for (int i = 1; i <= d; ++i) powers.push_back(frob(powers.back()));
  if (powers[static_cast<std::size_t>(d)] != x) return false;
  for (int p : primes)
    if (poly_gcd(f, g, powers[static_cast<std::size_t>(d / p)] + x).degree() != 0) return false;
  return true;
}

/// Roots of p among the given points, as indices into points.
inline std::vector<std::size_t> poly_roots_among(const Field& f, const Poly& p, const std::vector<Elem>& points) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (poly_eval(f, p, points[j]).is_zero()) idx.push_back(j);
  return idx;
}

}  // namespace goppa
