#pragma once

// Decoding radii, workfactor estimate, key sizes and countermeasure checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "goppa/errors.hpp"

namespace goppa {

struct RadiusReport {
  long long t = 0;
  double generic_johnson = 0;
  double bernstein = 0;
  double tau2 = 0;
  long long ld_errors = 0;
};

/// Unique, generic Johnson, Bernstein and binary Johnson radii for length n
/// and error capacity t.
inline RadiusReport radii(long long n, long long t) {
  if (n <= 0 || t < 0) throw DomainError("radii need n > 0 and t >= 0");
  if (4 * t + 2 > n) throw DomainError("radii need 4t + 2 <= n");
  const double dn = static_cast<double>(n);
  const double dt = static_cast<double>(t);
  RadiusReport r;
  r.t = t;
  r.generic_johnson = dn * (1.0 - std::sqrt(1.0 - 2.0 * dt / dn));
  r.bernstein = dn * (1.0 - std::sqrt(1.0 - (2.0 * dt + 2.0) / dn));
  r.tau2 = dn / 2.0 * (1.0 - std::sqrt(1.0 - (4.0 * dt + 2.0) / dn));
  r.ld_errors = static_cast<long long>(std::ceil(r.tau2)) - 1;
  return r;
}

/// ceil(tau2) - 1, the list-decoding operating radius.
inline long long ld_radius(long long n, long long t) { return radii(n, t).ld_errors; }

/// log2 C(n, k) for real n via log-gamma; -inf outside 0 <= k <= n.
inline double log2_binomial(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

struct WorkfactorDetail {
  double wf = 0;
  long long p = 0;
  double ell = 0;
};

/// Finiasz-Sendrier lower bound (log2) for decoding w errors in an [n, k] code:
/// min over p of log2(min(C(n,w), 2^(n-k)) / (2 C(n-k, w-p) sqrt(C(k,p)))).
/// The summand is convex in p, so the scan stops at the first increase.
inline WorkfactorDetail fs_workfactor_detail(long long n, long long k, long long w) {
  if (k <= 0 || w <= 0 || w >= n - k) throw DomainError("workfactor needs k > 0 and 0 < w < n - k");
  const long long red = n - k;
  const double top = std::min(log2_binomial(static_cast<double>(n), static_cast<double>(w)), static_cast<double>(red));
  double lr = log2_binomial(static_cast<double>(red), static_cast<double>(w));  // C(n-k, w-p)
  double lk = 0;                                                              // C(k, p)
  WorkfactorDetail best{top - lr - 1.0, 0, 0};
  for (long long p = 0; p < w && p < k; ++p) {
    lr += std::log2(static_cast<double>(w - p) / static_cast<double>(red - w + p + 1));
    lk += std::log2(static_cast<double>(k - p) / static_cast<double>(p + 1));
    const double v = top - lr - 0.5 * lk - 1.0;
    if (v >= best.wf) break;
    best = {v, p + 1, 0};
  }
  return best;
}

inline double fs_workfactor(long long n, long long k, long long w) { return fs_workfactor_detail(n, k, w).wf; }

/// Variant with an explicit window l: min over p in [0, w/2] of
/// log2(max(2l, 1) C(n,w) / (C(n-k-l, w-2p) C((k+l)/2, p))),
/// l the fixed point of l = log2 C((k+l)/2, p). Kept for comparison.
inline WorkfactorDetail fs_workfactor_fixed_point(long long n, long long k, long long w) {
  if (k <= 0 || w <= 0 || w >= n - k) throw DomainError("workfactor needs k > 0 and 0 < w < n - k");
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  const double total = log2_binomial(dn, static_cast<double>(w));
  WorkfactorDetail best{std::numeric_limits<double>::infinity(), -1, 0};
  for (long long p = 0; p <= w / 2; ++p) {
    const double dp = static_cast<double>(p);
    double ell = 0;
    for (int it = 0; it < 1000; ++it) {
      const double next = std::max(0.0, log2_binomial((dk + ell) / 2.0, dp));
      const bool done = std::abs(next - ell) < 0.01;
      ell = next;
      if (done) break;
    }
    if ((dk + ell) / 2.0 < dp) continue;
    if (dn - dk - ell < static_cast<double>(w - 2 * p)) continue;
    const double v = std::log2(std::max(2.0 * ell, 1.0)) + total -
                     log2_binomial(dn - dk - ell, static_cast<double>(w - 2 * p)) -
                     log2_binomial((dk + ell) / 2.0, dp);
    if (v < best.wf) best = {v, p, ell};
  }
  if (best.p < 0) throw DomainError("no admissible split parameter");
  return best;
}

enum class Variant { generic, dyadic };
enum class Decoder { ud, ld };

inline const char* to_string(Variant v) { return v == Variant::generic ? "generic" : "dyadic"; }
inline const char* to_string(Decoder d) { return d == Decoder::ud ? "ud" : "ld"; }

/// Public key size in bits: m*k*r (generic) or m*k (dyadic).
inline long long keysize(Variant v, long long m, long long k, long long r) {
  if (m <= 0 || k <= 0 || r <= 0) throw DomainError("keysize needs positive inputs");
  return v == Variant::generic ? m * k * r : m * k;
}

/// Key size from the redundancy n - k: (n-k)*k (generic) or (n-k)*k/r (dyadic).
/// Equal to keysize() whenever n - k = m*r.
inline long long keysize_from_redundancy(Variant v, long long n, long long k, long long r) {
  if (n <= k || k <= 0 || r <= 0) throw DomainError("keysize needs 0 < k < n and r > 0");
  return v == Variant::generic ? (n - k) * k : (n - k) * k / r;
}

struct Countermeasures {
  bool cm1 = false;  // r(r+1) > n
  bool cm2 = false;  // m >= 16
};

inline Countermeasures check_countermeasures(long long m, long long n, long long r) {
  return {r * (r + 1) > n, m >= 16};
}

enum class Countermeasure { none, cm1, cm2 };

inline bool satisfies(const Countermeasures& c, Countermeasure which) {
  switch (which) {
    case Countermeasure::cm1:
      return c.cm1;
    case Countermeasure::cm2:
      return c.cm2;
    case Countermeasure::none:
      break;
  }
  return true;
}

namespace detail {

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// 100 * (ud - ld) / ud in hundredths of a percent, rounded half up.
inline long long gain_hundredths(long long ud_keysize, long long ld_keysize) {
  if (ud_keysize <= 0) throw DomainError("gain needs a positive reference keysize");
  return detail::floor_div(20000 * (ud_keysize - ld_keysize) + ud_keysize, 2 * ud_keysize);
}

inline double gain(long long ud_keysize, long long ld_keysize) {
  return static_cast<double>(gain_hundredths(ud_keysize, ld_keysize)) / 100.0;
}

/// num / den in tenths, rounded half up.
inline long long ratio_tenths(long long num, long long den) {
  if (den <= 0) throw DomainError("ratio needs a positive denominator");
  return detail::floor_div(20 * num + den, 2 * den);
}

/// Fixed-point rendering of an integer count of 10^-decimals units.
inline std::string format_scaled(long long units, int decimals) {
  if (decimals == 0) return std::to_string(units);
  long long scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool neg = units < 0;
  const long long a = neg ? -units : units;
  std::string frac = std::to_string(a % scale);
  frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  return (neg ? "-" : "") + std::to_string(a / scale) + "." + frac;
}

/// x rounded half up to the given number of decimals.
inline std::string format_fixed(double x, int decimals) {
  double scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  return format_scaled(static_cast<long long>(std::floor(x * scale + 0.5)), decimals);
}

}  // namespace goppa
