#pragma once

// Reference parameter rows, their recomputation, CSV I/O, search and bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "goppa/dyadic.hpp"
#include "goppa/errors.hpp"
#include "goppa/security.hpp"

namespace goppa {

enum class Method { UD, LD };

inline const char* to_string(Method m) { return m == Method::UD ? "UD" : "LD"; }

inline constexpr int kFixtureVersion = 1;

struct FixtureRow {
  int table;
  int level;
  Method method;
  long long m, n, k, r;
  long long tau2;      // -1 when blank
  double wf;
  long long keysize;
  long long gain;      // hundredths, -1 when blank
  int ud_ref;          // index of the reference UD row in the same table, -1 for UD rows
};

// Rows of the three comparison tables, printed values verbatim.
inline constexpr FixtureRow kFixtureRows[] = {
    {1, 80, Method::UD, 11, 1893, 1431, 42, -1, 80.025, 661122, -1, -1},
    {1, 80, Method::LD, 11, 1876, 1436, 40, 41, 80.043, 631840, 443, 0},
    {1, 112, Method::UD, 12, 2887, 2191, 58, -1, 112.002, 1524936, -1, -1},
    {1, 112, Method::LD, 12, 2868, 2196, 58, 59, 112.026, 1475712, 323, 2},
    {1, 128, Method::UD, 12, 3307, 2515, 66, -1, 128.007, 1991880, -1, -1},
    {1, 128, Method::LD, 12, 3262, 2482, 65, 66, 128.021, 1935960, 281, 4},
    {1, 192, Method::UD, 13, 5397, 4136, 97, -1, 192.003, 5215496, -1, -1},
    {1, 192, Method::LD, 13, 5269, 4021, 96, 98, 192.052, 5018208, 378, 6},
    {1, 256, Method::UD, 13, 7150, 5447, 131, -1, 256.002, 9276241, -1, -1},
    {1, 256, Method::LD, 13, 7008, 5318, 130, 133, 257.471, 8987420, 311, 8},

    {2, 80, Method::UD, 11, 1792, 1088, 64, -1, 82.518, 11968, -1, -1},
    {2, 80, Method::LD, 11, 1728, 1024, 64, 67, 82.976, 11264, 588, 0},
    {2, 112, Method::UD, 12, 2944, 1408, 128, -1, 116.735, 16896, -1, -1},
    {2, 112, Method::LD, 13, 2816, 1280, 128, 134, 113.896, 15360, 909, 2},
    {2, 112, Method::LD, 13, 7680, 1024, 512, 552, 113.084, 13312, 2121, 2},
    {2, 128, Method::UD, 12, 3200, 1664, 128, -1, 131.235, 19968, -1, -1},
    {2, 128, Method::LD, 12, 3072, 1536, 128, 134, 129.745, 18432, 769, 5},
    {2, 192, Method::UD, 13, 5888, 2560, 256, -1, 205.804, 33280, -1, -1},
    {2, 192, Method::LD, 13, 5632, 2304, 256, 269, 199.473, 29952, 1000, 7},
    {2, 256, Method::UD, 15, 11264, 3584, 512, -1, 279.002, 53760, -1, -1},
    {2, 256, Method::LD, 15, 10752, 3072, 512, 539, 258.223, 46080, 1429, 9},

    {3, 80, Method::UD, 16, 5120, 1024, 256, -1, 81.765, 16384, -1, -1},
    {3, 80, Method::LD, 16, 5120, 1024, 256, 134, 86.216, 16384, 0, 0},
    {3, 112, Method::UD, 16, 3840, 1792, 128, -1, 113.785, 28672, -1, -1},
    {3, 112, Method::LD, 16, 5632, 1536, 256, 269, 116.400, 24576, 1429, 2},
    {3, 128, Method::UD, 16, 5888, 1792, 256, -1, 132.470, 28672, -1, -1},
    {3, 128, Method::LD, 16, 9728, 1536, 512, 542, 133.534, 24576, 1429, 4},
    {3, 192, Method::UD, 16, 10752, 2560, 512, -1, 199.067, 40960, -1, -1},
    {3, 192, Method::LD, 16, 10752, 2560, 512, 539, 209.414, 40960, 0, 6},
    {3, 256, Method::UD, 16, 11776, 3584, 512, -1, 264.846, 57344, -1, -1},
    {3, 256, Method::LD, 16, 19456, 3072, 1024, 1085, 267.203, 49152, 1429, 8},
};

struct DlpRow {
  int level;
  long long dlp_keysize;
  long long printed_mceliece;
  long long printed_ratio;  // tenths
};

inline constexpr DlpRow kDlpRows[] = {
    {80, 1024, 11264, 110}, {112, 2048, 13312, 65}, {128, 3072, 18432, 60}, {192, 7680, 29952, 39}, {256, 15360, 46080, 30},
};

inline std::vector<FixtureRow> fixture_rows(int table) {
  std::vector<FixtureRow> out;
  for (const auto& r : kFixtureRows)
    if (r.table == table) out.push_back(r);
  return out;
}

inline Variant table_variant(int table) { return table == 1 ? Variant::generic : Variant::dyadic; }

/// One output line of a parameter table.
struct ParamRow {
  Method method = Method::UD;
  long long m = 0, n = 0, k = 0, r = 0;
  std::optional<long long> tau2;
  double wf = 0;
  long long keysize = 0;
  std::optional<long long> gain;  // hundredths
  std::string status;
  std::string notes;
};

struct RowCheck {
  FixtureRow printed;
  ParamRow computed;
  bool tau2_ok = true;
  bool wf_ok = true;
  bool keysize_ok = true;
  bool gain_ok = true;

  bool ok() const { return tau2_ok && wf_ok && keysize_ok && gain_ok; }
};

inline constexpr double kWfTolerance = 1.0;

/// Recomputes every column of a table from (method, m, n, k, r) and compares.
inline std::vector<RowCheck> verify_table(int table) {
  if (table < 1 || table > 3) throw ParameterError("parameter tables are 1, 2 and 3");
  const auto rows = fixture_rows(table);
  const Variant v = table_variant(table);
  std::vector<RowCheck> out;
  for (const auto& p : rows) {
    RowCheck c;
    c.printed = p;
    ParamRow& row = c.computed;
    row.method = p.method;
    row.m = p.m;
    row.n = p.n;
    row.k = p.k;
    row.r = p.r;
    long long w = p.r;
    if (p.method == Method::LD) {
      w = ld_radius(p.n, p.r);
      row.tau2 = w;
    }
    row.wf = fs_workfactor(p.n, p.k, w);
    row.keysize = keysize_from_redundancy(v, p.n, p.k, p.r);
    if (p.ud_ref >= 0) {
      const auto& u = rows[static_cast<std::size_t>(p.ud_ref)];
      row.gain = gain_hundredths(keysize_from_redundancy(v, u.n, u.k, u.r), row.keysize);
    }

    std::vector<std::string> notes;
    if (row.tau2 && *row.tau2 != p.tau2) {
      c.tau2_ok = false;
      notes.push_back("tau2 printed " + std::to_string(p.tau2));
    }
    if (std::abs(row.wf - p.wf) > kWfTolerance) {
      c.wf_ok = false;
      notes.push_back("wf printed " + format_fixed(p.wf, 3));
    }
    if (row.keysize != p.keysize) {
      c.keysize_ok = false;
      notes.push_back("keysize printed " + std::to_string(p.keysize));
    }
    if (row.gain && *row.gain != p.gain) {
      c.gain_ok = false;
      notes.push_back("gain printed " + format_scaled(p.gain, 2));
    }
    if (p.n - p.k != p.m * p.r) notes.push_back("n-k=" + std::to_string(p.n - p.k) + " differs from m*r=" + std::to_string(p.m * p.r));
    const long long formula = keysize(v, p.m, p.k, p.r);
    if (formula != row.keysize) notes.push_back("m-based keysize " + std::to_string(formula));
    row.status = c.ok() ? "MATCH" : "MISMATCH";
    for (std::size_t i = 0; i < notes.size(); ++i) row.notes += (i ? "; " : "") + notes[i];
    out.push_back(std::move(c));
  }
  return out;
}

struct DlpCheck {
  DlpRow printed;
  long long mceliece = 0;
  long long ratio = 0;  // tenths
  bool ok() const { return mceliece == printed.printed_mceliece && ratio == printed.printed_ratio; }
};

/// Smallest list-decoding keysize per level over the dyadic tables, against DLP sizes.
inline std::vector<DlpCheck> verify_table4() {
  std::vector<DlpCheck> out;
  for (const auto& d : kDlpRows) {
    long long best = -1;
    for (const auto& p : kFixtureRows) {
      if (p.table == 1 || p.level != d.level || p.method != Method::LD) continue;
      const long long ks = keysize_from_redundancy(Variant::dyadic, p.n, p.k, p.r);
      if (best < 0 || ks < best) best = ks;
    }
    out.push_back({d, best, ratio_tenths(best, d.dlp_keysize)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV.

enum class Format { csv, tsv };

inline char separator(Format f) { return f == Format::csv ? ',' : '\t'; }

inline std::string quote_field(const std::string& s, char sep) {
  if (s.find_first_of(std::string{sep, '"', '\n', '\r'}) == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string join_fields(const std::vector<std::string>& fields, Format f) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += separator(f);
    line += quote_field(fields[i], separator(f));
  }
  return line + "\n";
}

/// Records of a CSV/TSV document; quoted fields may contain separators and quotes.
inline std::vector<std::vector<std::string>> parse_delimited(const std::string& text, Format f) {
  const char sep = separator(f);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == sep) {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw FormatError("unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline const std::vector<std::string>& param_header() {
  static const std::vector<std::string> h{"method", "m", "n", "k", "r", "tau2", "wf", "keysize", "gain", "status", "notes"};
  return h;
}

inline std::vector<std::string> param_fields(const ParamRow& r) {
  return {to_string(r.method),
          std::to_string(r.m),
          std::to_string(r.n),
          std::to_string(r.k),
          std::to_string(r.r),
          r.tau2 ? std::to_string(*r.tau2) : "",
          format_fixed(r.wf, 3),
          std::to_string(r.keysize),
          r.gain ? format_scaled(*r.gain, 2) : "",
          r.status,
          r.notes};
}

inline std::string params_to_text(const std::vector<ParamRow>& rows, Format f) {
  std::string out = join_fields(param_header(), f);
  for (const auto& r : rows) out += join_fields(param_fields(r), f);
  return out;
}

namespace detail {

inline long long parse_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw FormatError("expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw FormatError("expected an integer, got '" + s + "'");
  return v;
}

inline long long parse_scaled(const std::string& s, int decimals) {
  const auto dot = s.find('.');
  const std::string whole = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (static_cast<int>(frac.size()) > decimals) throw FormatError("too many decimals in '" + s + "'");
  frac.append(static_cast<std::size_t>(decimals) - frac.size(), '0');
  const bool neg = !whole.empty() && whole[0] == '-';
  long long scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const long long w = whole == "-" || whole.empty() ? 0 : parse_int(whole);
  const long long f = frac.empty() ? 0 : parse_int(frac);
  return neg ? w * scale - f : w * scale + f;
}

}  // namespace detail

/// Inverse of params_to_text.
inline std::vector<ParamRow> params_from_text(const std::string& text, Format f) {
  const auto recs = parse_delimited(text, f);
  if (recs.empty() || recs[0] != param_header()) throw FormatError("missing parameter table header");
  std::vector<ParamRow> rows;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const auto& x = recs[i];
    if (x.size() != param_header().size()) throw FormatError("wrong number of fields in row " + std::to_string(i));
    ParamRow r;
    if (x[0] == "UD") {
      r.method = Method::UD;
    } else if (x[0] == "LD") {
      r.method = Method::LD;
    } else {
      throw FormatError("unknown method '" + x[0] + "'");
    }
    r.m = detail::parse_int(x[1]);
    r.n = detail::parse_int(x[2]);
    r.k = detail::parse_int(x[3]);
    r.r = detail::parse_int(x[4]);
    if (!x[5].empty()) r.tau2 = detail::parse_int(x[5]);
    r.wf = static_cast<double>(detail::parse_scaled(x[6], 3)) / 1000.0;
    r.keysize = detail::parse_int(x[7]);
    if (!x[8].empty()) r.gain = detail::parse_scaled(x[8], 2);
    r.status = x[9];
    r.notes = x[10];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string table_text(int table, Format f) {
  if (table == 4) {
    std::string out = join_fields({"level", "dlp", "mceliece", "ratio", "status", "notes"}, f);
    for (const auto& c : verify_table4()) {
      std::string notes;
      if (c.mceliece != c.printed.printed_mceliece) notes = "mceliece printed " + std::to_string(c.printed.printed_mceliece);
      if (c.ratio != c.printed.printed_ratio)
        notes += std::string(notes.empty() ? "" : "; ") + "ratio printed " + format_scaled(c.printed.printed_ratio, 1);
      out += join_fields({std::to_string(c.printed.level), std::to_string(c.printed.dlp_keysize), std::to_string(c.mceliece),
                          format_scaled(c.ratio, 1), c.ok() ? "MATCH" : "MISMATCH", notes},
                         f);
    }
    return out;
  }
  std::vector<ParamRow> rows;
  for (auto& c : verify_table(table)) rows.push_back(std::move(c.computed));
  return params_to_text(rows, f);
}

inline bool table_matches(int table) {
  if (table == 4) {
    const auto v = verify_table4();
    return std::all_of(v.begin(), v.end(), [](const DlpCheck& c) { return c.ok(); });
  }
  const auto v = verify_table(table);
  return std::all_of(v.begin(), v.end(), [](const RowCheck& c) { return c.ok(); });
}

// ---------------------------------------------------------------------------
// Parameter search.

struct SearchQuery {
  double target = 80;
  Variant variant = Variant::dyadic;
  Decoder decoder = Decoder::ld;
  Countermeasure countermeasure = Countermeasure::none;
  int m_min = 10;
  int m_max = 16;
};

struct SearchHit {
  long long m = 0, n = 0, k = 0, r = 0, w = 0;
  double wf = 0;
  long long keysize = 0;

  auto key() const { return std::make_tuple(keysize, n, m); }
};

inline bool better(const SearchHit& a, const std::optional<SearchHit>& b) { return !b || a.key() < b->key(); }

namespace detail {

inline std::optional<SearchHit> search_degree(const SearchQuery& q, long long m) {
  const long long order = 1LL << m;
  std::optional<SearchHit> best;
  const bool dyadic = q.variant == Variant::dyadic;
  if (q.countermeasure == Countermeasure::cm2 && !check_countermeasures(m, 0, 0).cm2) return best;
  for (long long r = 1; m * r < order; r = dyadic ? r * 2 : r + 1) {
    const long long step = dyadic ? r : 1;
    const long long n_max = dyadic ? order - r : order;
    long long n = m * r + 1;
    if (dyadic) n = (m * r / r + 1) * r;
    if (q.decoder == Decoder::ld) n = std::max(n, ((4 * r + 2 + step - 1) / step) * step);
    for (; n <= n_max; n += step) {
      const long long k = n - m * r;
      const long long ks = dyadic ? m * k : m * k * r;
      if (best && ks > best->keysize) break;
      if (!satisfies(check_countermeasures(m, n, r), q.countermeasure)) {
        if (q.countermeasure == Countermeasure::cm1) break;  // r(r+1) > n only gets harder
        continue;
      }
      const long long w = q.decoder == Decoder::ud ? r : ld_radius(n, r);
      if (w >= n - k) continue;
      const double wf = fs_workfactor(n, k, w);
      if (wf < q.target) continue;
      const SearchHit hit{m, n, k, r, w, wf, ks};
      if (better(hit, best)) best = hit;
      break;
    }
  }
  return best;
}

}  // namespace detail

/// Smallest keysize with WF >= target; ties broken by n, then m.
inline std::optional<SearchHit> search(const SearchQuery& q) {
  if (q.target < 60 || q.target > 300) throw ParameterError("target workfactor must be in [60, 300]");
  std::vector<std::future<std::optional<SearchHit>>> jobs;
  for (int m = q.m_min; m <= q.m_max; ++m)
    jobs.push_back(std::async(std::launch::async, [q, m] { return detail::search_degree(q, m); }));
  std::optional<SearchHit> best;
  for (auto& j : jobs) {
    const auto h = j.get();
    if (h && better(*h, best)) best = h;
  }
  return best;
}

inline ParamRow hit_to_row(const SearchHit& h, Decoder d) {
  ParamRow row;
  row.method = d == Decoder::ud ? Method::UD : Method::LD;
  row.m = h.m;
  row.n = h.n;
  row.k = h.k;
  row.r = h.r;
  if (d == Decoder::ld) row.tau2 = h.w;
  row.wf = h.wf;
  row.keysize = h.keysize;
  row.status = "FEASIBLE";
  return row;
}

/// Search rows: the unique-decoding optimum, followed for list decoding by
/// the list-decoding optimum with its gain.
inline std::vector<ParamRow> search_rows(const SearchQuery& q) {
  SearchQuery ud = q;
  ud.decoder = Decoder::ud;
  const auto u = search(ud);
  std::vector<ParamRow> rows;
  if (u) rows.push_back(hit_to_row(*u, Decoder::ud));
  if (q.decoder == Decoder::ld) {
    const auto l = search(q);
    if (l) {
      ParamRow row = hit_to_row(*l, Decoder::ld);
      if (u) row.gain = gain_hundredths(u->keysize, l->keysize);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Radius curves.

inline std::string bounds_text(long long n, long long tmax, Format f) {
  if (tmax < 1 || 4 * tmax + 2 > n) throw DomainError("bounds need 1 <= tmax and 4 tmax + 2 <= n");
  std::string out = join_fields({"t", "t_over_n", "unique", "generic", "bernstein", "tau2"}, f);
  const double dn = static_cast<double>(n);
  for (long long t = 1; t <= tmax; ++t) {
    const auto r = radii(n, t);
    out += join_fields({std::to_string(t), format_fixed(static_cast<double>(t) / dn, 6),
                        format_fixed(static_cast<double>(t) / dn, 6), format_fixed(r.generic_johnson / dn, 6),
                        format_fixed(r.bernstein / dn, 6), format_fixed(r.tau2 / dn, 6)},
                       f);
  }
  return out;
}

}  // namespace goppa
