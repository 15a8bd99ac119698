#pragma once

// Weighted bivariate interpolation and root finding for list decoding
// Gamma(L, G^2) viewed as a subfield subcode of a GRS code of dimension n - 2r.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/goppa_code.hpp"

namespace goppa {

struct InterpolationParams {
  std::size_t kg = 0;     // GRS dimension
  std::size_t tau = 0;    // radius
  std::size_t s0 = 0;     // multiplicity on the received symbol
  std::size_t s1 = 0;     // multiplicity on the flipped symbol
  std::size_t degree = 0; // (1, kg-1)-weighted degree bound D
  std::size_t list = 0;   // largest z-degree
  std::size_t constraints = 0;
};

namespace detail {

// Monomials x^i z^j with i + w*j <= d.
inline std::size_t monomials_below(std::size_t d, std::size_t w) {
  const std::size_t b = d / w;
  return (b + 1) * (d + 1) - w * b * (b + 1) / 2;
}

}  // namespace detail

/// Smallest constraint count (s0, s1) with more monomials than constraints.
inline std::optional<InterpolationParams> choose_interpolation_params(std::size_t n, std::size_t r, std::size_t tau,
                                                                      std::size_t max_mult = 40) {
  if (n <= 2 * r + 1) return std::nullopt;
  const std::size_t kg = n - 2 * r;
  const std::size_t w = kg - 1;
  std::optional<InterpolationParams> best;
  for (std::size_t s0 = 1; s0 <= max_mult; ++s0) {
    for (std::size_t s1 = 0; s1 <= s0; ++s1) {
      const std::size_t c = n * (s0 * (s0 + 1) + s1 * (s1 + 1)) / 2;
      if (best && c >= best->constraints) continue;
      const std::size_t score = (n - tau) * s0 + tau * s1;
      if (score == 0) continue;
      const std::size_t d = score - 1;
      if (detail::monomials_below(d, w) <= c) continue;
      best = InterpolationParams{kg, tau, s0, s1, d, d / w, c};
    }
  }
  return best;
}

namespace detail {

// Bivariate polynomial as coefficient lists in x, one per power of z.
using Bivar = std::vector<std::vector<Elem>>;

inline void trim_bivar(Bivar& q) {
  for (auto& c : q)
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  while (!q.empty() && q.back().empty()) q.pop_back();
}

class Interpolator {
 public:
  Interpolator(const Field& f, std::size_t w, std::size_t list) : f_(f), g_(list + 1), wdeg_(list + 1) {
    for (std::size_t b = 0; b <= list; ++b) {
      g_[b].assign(b + 1, {});
      g_[b][b] = {Elem{1}};
      wdeg_[b] = w * b;
    }
  }

  /// Imposes multiplicity s at (alpha, beta).
  void add_point(Elem alpha, Elem beta, std::size_t s) {
    for (std::size_t v = 0; v < s; ++v)
      for (std::size_t u = 0; u + v < s; ++u) constrain(alpha, beta, u, v);
  }

  std::pair<Bivar, std::size_t> result() const {
    std::size_t best = 0;
    for (std::size_t b = 1; b < g_.size(); ++b)
      if (wdeg_[b] < wdeg_[best]) best = b;
    Bivar q = g_[best];
    trim_bivar(q);
    return {std::move(q), wdeg_[best]};
  }

 private:
  // Hasse derivative D_{u,v} of g at (alpha, beta). Only indices that are
  // supermasks of u (resp. v) carry odd binomials.
  Elem hasse(const Bivar& g, Elem beta, std::size_t u, std::size_t v) const {
    Elem total{};
    for (std::size_t j = v; j < g.size(); j = (j + 1) | v) {
      const auto& c = g[j];
      Elem acc{};
      for (std::size_t i = u; i < c.size(); i = (i + 1) | u) acc += f_.mul(c[i], apow_[i - u]);
      if (!acc.is_zero()) total += f_.mul(acc, f_.pow(beta, j - v));
    }
    return total;
  }

  void ensure_powers(Elem alpha, std::size_t upto) {
    if (apow_alpha_ == alpha && apow_.size() > upto) return;
    apow_.assign(upto + 1, {});
    apow_[0] = Elem{1};
    for (std::size_t i = 1; i <= upto; ++i) apow_[i] = f_.mul(apow_[i - 1], alpha);
    apow_alpha_ = alpha;
  }

  void constrain(Elem alpha, Elem beta, std::size_t u, std::size_t v) {
    std::size_t maxdeg = 0;
    for (const auto& g : g_)
      for (const auto& c : g) maxdeg = std::max(maxdeg, c.size());
    ensure_powers(alpha, maxdeg + 1);

    std::vector<Elem> delta(g_.size());
    std::optional<std::size_t> star;
    for (std::size_t b = 0; b < g_.size(); ++b) {
      delta[b] = hasse(g_[b], beta, u, v);
      if (delta[b].is_zero()) continue;
      if (!star || wdeg_[b] < wdeg_[*star]) star = b;
    }
    if (!star) return;
    const std::size_t s = *star;
    const Elem inv_ds = f_.inv(delta[s]);
    const Bivar& gs = g_[s];
    std::size_t terms = 0;
    for (const auto& c : gs) terms += c.size();
    const bool use_table = f_.order() <= terms;
    std::vector<Elem> table(use_table ? f_.order() : 0);
    for (std::size_t b = 0; b < g_.size(); ++b) {
      if (b == s || delta[b].is_zero()) continue;
      const Elem lambda = f_.mul(delta[b], inv_ds);
      if (use_table)
        for (std::uint32_t e = 0; e < f_.order(); ++e) table[e] = f_.mul(lambda, Elem{e});
      Bivar& gb = g_[b];
      if (gb.size() < gs.size()) gb.resize(gs.size());
      for (std::size_t j = 0; j < gs.size(); ++j) {
        auto& c = gb[j];
        if (c.size() < gs[j].size()) c.resize(gs[j].size());
        for (std::size_t i = 0; i < gs[j].size(); ++i) c[i] += use_table ? table[gs[j][i].v] : f_.mul(lambda, gs[j][i]);
      }
    }
    // g* <- (x - alpha) g*
    for (auto& c : g_[s]) {
      if (c.empty()) continue;
      c.push_back(Elem{});
      for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] + f_.mul(alpha, c[i]);
      c[0] = f_.mul(alpha, c[0]);
    }
    ++wdeg_[s];
  }

  const Field& f_;
  std::vector<Bivar> g_;
  std::vector<std::size_t> wdeg_;
  std::vector<Elem> apow_;
  Elem apow_alpha_{};
};

// Roth-Ruckenstein: all f with deg f < depth and Q(x, f(x)) = 0, plus
// spurious branches; callers verify.
inline void rr_search(const Field& f, Bivar q, std::size_t level, std::size_t depth, std::vector<Elem>& prefix,
                      std::vector<std::vector<Elem>>& out) {
  trim_bivar(q);
  if (q.empty()) throw InternalError("interpolation polynomial vanished during root search");
  std::size_t h = SIZE_MAX;
  for (const auto& c : q) {
    std::size_t i = 0;
    while (i < c.size() && c[i].is_zero()) ++i;
    if (i < c.size()) h = std::min(h, i);
  }
  for (auto& c : q)
    if (!c.empty()) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(std::min(h, c.size())));

  std::vector<Elem> q0(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) q0[j] = q[j].empty() ? Elem{} : q[j][0];
  const Poly p0(q0);
  if (p0.degree() < 1) return;

  for (std::uint32_t gv = 0; gv < f.order(); ++gv) {
    const Elem gamma{gv};
    if (!poly_eval(f, p0, gamma).is_zero()) continue;
    prefix.push_back(gamma);
    if (level + 1 == depth) {
      out.push_back(prefix);
    } else {
      // Q(x, x z + gamma) = sum_c z^c x^c sum_{b >= c} C(b, c) gamma^(b-c) Q_b(x)
      Bivar next(q.size());
      for (std::size_t c = 0; c < q.size(); ++c) {
        std::vector<Elem> acc;
        Elem gp{1};
        for (std::size_t b = c; b < q.size(); ++b) {
          if (((b & c) == c) && !gp.is_zero()) {
            if (acc.size() < q[b].size()) acc.resize(q[b].size());
            for (std::size_t i = 0; i < q[b].size(); ++i) acc[i] += f.mul(gp, q[b][i]);
          }
          gp = f.mul(gp, gamma);
        }
        if (!acc.empty()) acc.insert(acc.begin(), c, Elem{});
        next[c] = std::move(acc);
      }
      rr_search(f, std::move(next), level + 1, depth, prefix, out);
    }
    prefix.pop_back();
  }
}

}  // namespace detail

/// Column multipliers v'_j = G(L_j)^2 / prod_{i != j} (L_j - L_i): every
/// codeword is (v'_j f(L_j))_j with deg f < n - 2r.
inline std::vector<Elem> grs_multipliers(const GoppaCode& code) {
  const Field& f = code.field();
  const auto& L = code.support();
  std::vector<Elem> v(code.n());
  for (std::size_t j = 0; j < code.n(); ++j) {
    Elem prod{1};
    for (std::size_t i = 0; i < code.n(); ++i)
      if (i != j) prod = f.mul(prod, L[j] + L[i]);
    const Elem gl = f.inv(code.inv_g_at(j));
    v[j] = f.div(f.sqr(gl), prod);
  }
  return v;
}

/// All codewords within distance tau of y found by interpolation.
inline std::vector<BitVec> interpolation_list_decode(const GoppaCode& code, const BitVec& y,
                                                     const InterpolationParams& p) {
  const Field& f = code.field();
  const std::size_t n = code.n();
  const auto v = grs_multipliers(code);
  detail::Interpolator interp(f, p.kg - 1, p.list);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem iv = f.inv(v[j]);
    const Elem recv = y.get(j) ? iv : Elem{};
    const Elem flip = y.get(j) ? Elem{} : iv;
    interp.add_point(code.support()[j], recv, p.s0);
    if (p.s1 > 0) interp.add_point(code.support()[j], flip, p.s1);
  }
  auto [q, wdeg] = interp.result();
  if (wdeg > p.degree) throw InternalError("interpolation exceeded its weighted degree bound");

  std::vector<std::vector<Elem>> roots;
  std::vector<Elem> prefix;
  detail::rr_search(f, std::move(q), 0, p.kg, prefix, roots);

  std::vector<BitVec> out;
  for (const auto& coeffs : roots) {
    const Poly fx(coeffs);
    BitVec c(n);
    bool binary = true;
    for (std::size_t j = 0; j < n && binary; ++j) {
      const Elem cj = f.mul(v[j], poly_eval(f, fx, code.support()[j]));
      if (cj.v > 1) binary = false;
      if (cj.v == 1) c.set(j);
    }
    if (!binary || distance(c, y) > p.tau || !is_codeword(code, c)) continue;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace goppa
