#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "goppa/goppa.hpp"

namespace testing_support {

using namespace goppa;

inline Poly random_poly(const Field& f, std::mt19937_64& rng, int degree, bool monic) {
  std::vector<Elem> c(static_cast<std::size_t>(degree) + 1);
  for (auto& e : c) e = Elem{static_cast<std::uint32_t>(rng() & f.mask())};
  if (monic) c.back() = Elem{1};
  while (c.back().is_zero()) c.back() = Elem{static_cast<std::uint32_t>(rng() & f.mask())};
  return Poly(std::move(c));
}

inline Poly random_squarefree(const Field& f, std::mt19937_64& rng, int degree) {
  while (true) {
    Poly g = random_poly(f, rng, degree, true);
    if (poly_is_squarefree(f, g)) return g;
  }
}

/// Random square-free G of degree r with n random non-roots as support.
inline GoppaCode random_code(int m, std::size_t n, int r, std::mt19937_64& rng) {
  const Field f(m);
  while (true) {
    Poly g = random_squarefree(f, rng, r);
    std::vector<Elem> pts;
    for (std::uint32_t v = 0; v < f.order(); ++v)
      if (!poly_eval(f, g, Elem{v}).is_zero()) pts.push_back(Elem{v});
    if (pts.size() < n) continue;
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(n);
    return build_code(f, std::move(pts), g);
  }
}

inline BitVec random_bits(std::size_t n, std::mt19937_64& rng) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng() & 1U) v.set(i);
  return v;
}

inline BitVec random_error(std::size_t n, std::size_t w, std::mt19937_64& rng) {
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = i;
  std::shuffle(pos.begin(), pos.end(), rng);
  BitVec e(n);
  for (std::size_t i = 0; i < w; ++i) e.set(pos[i]);
  return e;
}

}  // namespace testing_support
