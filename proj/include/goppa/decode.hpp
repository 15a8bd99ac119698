#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "goppa/binmat.hpp"
#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/goppa_code.hpp"
#include "goppa/interpolation.hpp"
#include "goppa/security.hpp"

namespace goppa {

struct Candidate {
  BitVec codeword;
  std::size_t error_weight = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Candidates sorted by error weight, then lexicographically.
struct DecodeResult {
  std::vector<Candidate> candidates;

  bool empty() const noexcept { return candidates.empty(); }
  std::size_t size() const noexcept { return candidates.size(); }
  friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

/// Sorts and removes duplicates.
inline DecodeResult make_result(const BitVec& y, std::vector<BitVec> words) {
  DecodeResult res;
  for (auto& w : words) {
    const std::size_t d = distance(w, y);
    res.candidates.push_back({std::move(w), d});
  }
  std::sort(res.candidates.begin(), res.candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.error_weight != b.error_weight) return a.error_weight < b.error_weight;
    return lex_less(a.codeword, b.codeword);
  });
  res.candidates.erase(std::unique(res.candidates.begin(), res.candidates.end()), res.candidates.end());
  return res;
}

namespace detail {

inline BitVec correct_with_locator(const GoppaCode& code, const BitVec& y, const Poly& sigma) {
  const auto roots = poly_roots_among(code.field(), sigma, code.support());
  if (static_cast<int>(roots.size()) != sigma.degree()) throw DecodingFailure("error locator does not split on the support");
  BitVec c = y;
  for (auto j : roots) c.flip(j);
  if (!is_codeword(code, c)) throw DecodingFailure("corrected word is not a codeword");
  return c;
}

}  // namespace detail

/// Patterson decoding up to r errors. Throws DecodingFailure otherwise.
inline DecodeResult patterson_decode(const GoppaCode& code, const BitVec& y) {
  const Field& f = code.field();
  const Poly& g = code.gpoly();
  const Poly s = syndrome_poly(code, y, g);
  if (s.is_zero()) return make_result(y, {y});
  Poly t;
  try {
    t = poly_inv_mod(f, s, g);
  } catch (const DivisionByZero&) {
    throw DecodingFailure("syndrome is not invertible modulo G");
  }
  Poly sigma;
  if (t == Poly::x()) {
    sigma = Poly::x();
  } else {
    const Poly root = poly_sqrt_mod(f, t + Poly::x(), g, code.sqrt_x());
    const auto [a, b] = eea_stop(f, g, root, g.degree() / 2);
    sigma = poly_sqr(f, a) + poly_mul(f, Poly::x(), poly_sqr(f, b));
  }
  return make_result(y, {detail::correct_with_locator(code, y, sigma)});
}

/// Key-equation decoding modulo G^2 up to r errors.
inline DecodeResult alternant_decode(const GoppaCode& code, const BitVec& y) {
  const Field& f = code.field();
  const Poly& g2 = code.gpoly_squared();
  const Poly s = syndrome_poly(code, y, g2);
  if (s.is_zero()) {
    if (!is_codeword(code, y)) throw DecodingFailure("syndrome modulo G^2 vanishes on a non-codeword");
    return make_result(y, {y});
  }
  const auto [omega, sigma] = eea_stop(f, g2, s, static_cast<int>(code.r()) - 1);
  if (sigma.degree() > static_cast<int>(code.r())) throw DecodingFailure("error locator degree exceeds r");
  return make_result(y, {detail::correct_with_locator(code, y, sigma)});
}

/// Patterson, falling back to the G^2 key equation when G is reducible and
/// the syndrome shares a factor with it.
inline DecodeResult unique_decode(const GoppaCode& code, const BitVec& y) {
  try {
    return patterson_decode(code, y);
  } catch (const DecodingFailure&) {
    return alternant_decode(code, y);
  }
}

/// Sphere search is allowed when one of the two enumerations fits this budget.
inline constexpr double kSphereBudget = 1e7;

namespace detail {

inline double ball_volume(std::size_t n, std::size_t tau) {
  double total = 0;
  double term = 1;
  for (std::size_t i = 0; i <= std::min(tau, n); ++i) {
    total += term;
    term = term * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return total;
}

inline void enumerate_errors(const std::vector<BitVec>& cols, const BitVec& syn, std::size_t start,
                             std::size_t left, BitVec& err, std::vector<BitVec>& hits, const BitVec& y) {
  if (syn.is_zero()) hits.push_back(y ^ err);
  if (left == 0) return;
  for (std::size_t j = start; j < cols.size(); ++j) {
    err.flip(j);
    enumerate_errors(cols, syn ^ cols[j], j + 1, left - 1, err, hits, y);
    err.flip(j);
  }
}

}  // namespace detail

/// All codewords within distance tau, by brute force.
inline DecodeResult sphere_oracle(const GoppaCode& code, const BitVec& y, std::size_t tau) {
  if (y.size() != code.n()) throw ParameterError("word length must equal the code length");
  const double by_errors = detail::ball_volume(code.n(), tau);
  const bool words_ok = code.k() <= kMaxExhaustiveDim;
  const double by_words = words_ok ? static_cast<double>(std::uint64_t{1} << code.k()) : 0;
  const bool errors_ok = by_errors <= kSphereBudget;
  if (!words_ok && !errors_ok) throw CapacityError("sphere search is intractable at this size");

  std::vector<BitVec> hits;
  if (words_ok && (!errors_ok || by_words <= by_errors)) {
    BitVec cw(code.n());
    if (distance(cw, y) <= tau) hits.push_back(cw);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << code.k()); ++i) {
      cw ^= code.gen().row_vec(static_cast<std::size_t>(std::countr_zero(i)));
      if (distance(cw, y) <= tau) hits.push_back(cw);
    }
  } else {
    std::vector<BitVec> cols(code.n());
    for (std::size_t j = 0; j < code.n(); ++j) {
      BitVec e(code.n());
      e.set(j);
      cols[j] = syndrome_bin(code, e);
    }
    BitVec err(code.n());
    detail::enumerate_errors(cols, syndrome_bin(code, y), 0, tau, err, hits, y);
  }
  return make_result(y, std::move(hits));
}

/// Largest radius accepted by list_decode.
inline std::size_t max_list_radius(const GoppaCode& code) {
  const auto n = static_cast<long long>(code.n());
  const auto r = static_cast<long long>(code.r());
  if (4 * r + 2 > n) return code.r();
  return static_cast<std::size_t>(std::max(ld_radius(n, r), r));
}

/// Interpolation is used while its constraint count stays below this.
inline constexpr std::size_t kInterpolationBudget = 4000;
inline constexpr std::size_t kFlipMaxExtra = 2;

enum class ListEngine { unique, interpolation, flip, sphere };

inline ListEngine select_list_engine(const GoppaCode& code, std::size_t tau) {
  if (tau <= code.r()) return ListEngine::unique;
  const auto params = choose_interpolation_params(code.n(), code.r(), tau);
  if (params && params->kg >= 2 && params->constraints <= kInterpolationBudget) return ListEngine::interpolation;
  if (tau - code.r() <= kFlipMaxExtra) return ListEngine::flip;
  if (params && params->kg >= 2) return ListEngine::interpolation;
  return ListEngine::sphere;
}

namespace detail {

inline std::vector<BitVec> flip_list_decode(const GoppaCode& code, const BitVec& y, std::size_t tau) {
  std::vector<BitVec> out;
  auto attempt = [&](const BitVec& z) {
    try {
      auto res = unique_decode(code, z);
      for (auto& c : res.candidates)
        if (distance(c.codeword, y) <= tau) out.push_back(c.codeword);
    } catch (const DecodingFailure&) {
    }
  };
  attempt(y);
  const std::size_t extra = tau - code.r();
  std::vector<std::size_t> idx(extra);
  for (std::size_t i = 0; i < extra; ++i) idx[i] = i;
  const std::size_t n = code.n();
  if (extra > n) return out;
  while (true) {
    BitVec z = y;
    for (auto j : idx) z.flip(j);
    attempt(z);
    std::size_t i = extra;
    while (i > 0 && idx[i - 1] == n - extra + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t q = i; q < extra; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// Every codeword within distance tau of y, tau <= ceil(tau2) - 1.
inline DecodeResult list_decode(const GoppaCode& code, const BitVec& y, std::size_t tau) {
  if (y.size() != code.n()) throw ParameterError("word length must equal the code length");
  if (tau > max_list_radius(code)) throw RadiusTooLarge("radius exceeds the binary Johnson radius");
  switch (select_list_engine(code, tau)) {
    case ListEngine::unique: {
      try {
        auto res = unique_decode(code, y);
        std::vector<BitVec> keep;
        for (auto& c : res.candidates)
          if (c.error_weight <= tau) keep.push_back(c.codeword);
        return make_result(y, std::move(keep));
      } catch (const DecodingFailure&) {
        return {};
      }
    }
    case ListEngine::interpolation:
      return make_result(y, interpolation_list_decode(code, y, *choose_interpolation_params(code.n(), code.r(), tau)));
    case ListEngine::flip:
      return make_result(y, detail::flip_list_decode(code, y, tau));
    case ListEngine::sphere:
      break;
  }
  return sphere_oracle(code, y, tau);
}

}  // namespace goppa
