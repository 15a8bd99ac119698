#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace goppa;
using testing_support::random_poly;
using testing_support::random_squarefree;

namespace {

// Carry-less product and remainder on integers as GF(2) polynomials.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1U) r ^= a << i;
  return r;
}

int deg2(std::uint64_t a) { return a ? 63 - __builtin_clzll(a) : -1; }

std::uint64_t rem2(std::uint64_t a, std::uint64_t b) {
  while (deg2(a) >= deg2(b)) a ^= b << (deg2(a) - deg2(b));
  return a;
}

bool irreducible_by_trial_division(std::uint64_t p) {
  for (std::uint64_t d = 2; deg2(d) <= deg2(p) / 2; ++d)
    if (rem2(p, d) == 0) return false;
  return true;
}

}  // namespace

TEST(Field, SmallestModulusMatchesExhaustiveScan) {
  for (int m = 2; m <= 16; ++m) {
    std::uint64_t expect = 0;
    for (std::uint64_t p = 1ULL << m; p < (2ULL << m); ++p)
      if (irreducible_by_trial_division(p)) {
        expect = p;
        break;
      }
    EXPECT_EQ(make_field(m).modulus(), expect) << "m=" << m;
  }
  EXPECT_EQ(make_field(4).modulus(), 0b10011U);
  EXPECT_EQ(make_field(11).order(), 2048U);
}

TEST(Field, RejectsOutOfRangeDegree) {
  EXPECT_THROW(make_field(1), ParameterError);
  EXPECT_THROW(make_field(17), ParameterError);
}

TEST(Field, MultiplicationAgreesWithLogTables) {
  const Field f(4);
  std::vector<std::uint32_t> exp(15), log(16);
  std::uint32_t a = 1;
  for (std::uint32_t i = 0; i < 15; ++i) {
    exp[i] = a;
    log[a] = i;
    a <<= 1;
    if (a & 16U) a ^= 0b10011U;
  }
  for (std::uint32_t x = 1; x < 16; ++x)
    for (std::uint32_t y = 1; y < 16; ++y) EXPECT_EQ(f.mul(Elem{x}, Elem{y}).v, exp[(log[x] + log[y]) % 15]);
  EXPECT_EQ(f.mul(Elem{8}, Elem{2}).v, 3U);
}

TEST(Field, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int m = 2; m <= 16; ++m) {
    const Field f(m);
    for (int i = 0; i < 300; ++i) {
      const Elem a{static_cast<std::uint32_t>(rng() & f.mask())};
      const Elem b{static_cast<std::uint32_t>(rng() & f.mask())};
      const Elem c{static_cast<std::uint32_t>(rng() & f.mask())};
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
      EXPECT_EQ(f.sqr(a + b), f.sqr(a) + f.sqr(b));
      EXPECT_TRUE((a + a).is_zero());
      EXPECT_EQ(f.sqr(f.sqrt(a)), a);
      if (!a.is_zero()) EXPECT_EQ(f.mul(a, f.inv(a)), Elem{1});
    }
  }
}

TEST(Field, InverseEdgeCases) {
  const Field f(8);
  EXPECT_EQ(f.inv(Elem{1}), Elem{1});
  EXPECT_THROW(f.inv(Elem{0}), DivisionByZero);
}

TEST(Poly, ZeroDegreeIsSentinel) {
  EXPECT_EQ(Poly().degree(), kMinusInfinity);
  EXPECT_EQ(Poly(std::vector<Elem>{Elem{1}, Elem{0}, Elem{0}}).degree(), 0);
}

TEST(Poly, GcdOverPrimeSubfield) {
  const Field f(2);
  const Poly x2p1({Elem{1}, Elem{0}, Elem{1}});
  const Poly xp1({Elem{1}, Elem{1}});
  // x^2 + 1 = (x + 1)^2: the only degree-1 factor found by trial.
  EXPECT_EQ(poly_mul(f, xp1, xp1), x2p1);
  EXPECT_EQ(poly_gcd(f, x2p1, xp1), xp1);
  EXPECT_FALSE(poly_is_squarefree(f, Poly::monomial(2)));
}

TEST(Poly, DivisionReconstructs) {
  std::mt19937_64 rng(3);
  const Field f(6);
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(f, rng, static_cast<int>(rng() % 20), false);
    const Poly b = random_poly(f, rng, 1 + static_cast<int>(rng() % 8), false);
    const auto qr = poly_divmod(f, a, b);
    EXPECT_LT(qr.remainder.degree(), b.degree());
    EXPECT_EQ(poly_mul(f, qr.quotient, b) + qr.remainder, a);
  }
  EXPECT_THROW(poly_mod(f, Poly::x(), Poly()), DivisionByZero);
}

TEST(Poly, EvaluationAtRootsAndDerivative) {
  const Field f(5);
  const Elem a{7}, b{19};
  const Poly g = poly_mul(f, Poly({a, Elem{1}}), Poly({b, Elem{1}}));
  EXPECT_TRUE(poly_eval(f, g, a).is_zero());
  EXPECT_TRUE(poly_eval(f, g, b).is_zero());
  EXPECT_EQ(poly_derivative(g), Poly::constant(a + b));
  EXPECT_TRUE(poly_is_squarefree(f, g));
}

TEST(Poly, SquareRootModuloG) {
  std::mt19937_64 rng(5);
  for (int m : {4, 6, 8}) {
    const Field f(m);
    for (int i = 0; i < 50; ++i) {
      const Poly g = random_squarefree(f, rng, 2 + static_cast<int>(rng() % 6));
      const Poly s = poly_mod(f, random_poly(f, rng, g.degree() - 1, false), g);
      const Poly t = poly_mulmod(f, s, s, g);
      EXPECT_EQ(poly_sqrt_mod(f, t, g), s);
      const Poly rx = poly_sqrt_mod(f, Poly::x(), g);
      EXPECT_EQ(poly_mulmod(f, rx, rx, g), Poly::x());
      EXPECT_EQ(poly_sqrt_mod(f, Poly::constant(Elem{1}), g), Poly::constant(Elem{1}));
    }
  }
}

TEST(Poly, EeaStopTrivialCases) {
  std::mt19937_64 rng(8);
  const Field f(4);
  const Poly g = random_squarefree(f, rng, 4);
  const auto z = eea_stop(f, g, Poly(), 1);
  EXPECT_TRUE(z.a.is_zero());
  EXPECT_EQ(z.b, Poly::constant(Elem{1}));
  const Poly t = random_poly(f, rng, 3, false);
  const auto first = eea_stop(f, g, t, 3);
  EXPECT_EQ(first.a, t);
  EXPECT_EQ(first.b, Poly::constant(Elem{1}));
}

TEST(Poly, EeaStopIsMinimalByExhaustiveSearch) {
  std::mt19937_64 rng(21);
  const Field f(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly g = random_squarefree(f, rng, 4);
    const Poly t = poly_mod(f, random_poly(f, rng, 3, false), g);
    for (int dstop = 0; dstop < 4; ++dstop) {
      const auto ab = eea_stop(f, g, t, dstop);
      EXPECT_EQ(poly_mulmod(f, ab.b, t, g), poly_mod(f, ab.a, g));
      EXPECT_LE(ab.a.degree(), dstop);
      EXPECT_LE(ab.b.degree(), 3 - dstop);
      // No nonzero b of smaller degree brings b*T mod G to degree <= dstop.
      const int bound = ab.b.degree();
      std::uint32_t total = 1;
      for (int i = 0; i < bound; ++i) total *= 16;
      for (std::uint32_t code = 1; code < total; ++code) {
        std::vector<Elem> c(static_cast<std::size_t>(bound));
        for (int i = 0; i < bound; ++i) c[static_cast<std::size_t>(i)] = Elem{(code >> (4 * i)) & 15U};
        const Poly b(std::move(c));
        EXPECT_GT(poly_mulmod(f, b, t, g).degree(), dstop);
      }
    }
  }
}

TEST(Poly, IrreducibilityAgreesWithRootCount) {
  std::mt19937_64 rng(2);
  const Field f(4);
  for (int i = 0; i < 200; ++i) {
    const Poly g = random_poly(f, rng, 2 + static_cast<int>(rng() % 2), true);
    std::vector<Elem> all;
    for (std::uint32_t v = 0; v < 16; ++v) all.push_back(Elem{v});
    // Degree 2 and 3 polynomials are irreducible exactly when rootless.
    EXPECT_EQ(poly_is_irreducible(f, g), poly_roots_among(f, g, all).empty());
  }
}
