#include <CLI11.hpp>
#include <sodium.h>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <string>

#include "goppa/goppa.hpp"

namespace {

using namespace goppa;

struct Globals {
  std::string seed_hex;
  std::string out;
  std::string format = "csv";
};

Format parse_format(const std::string& s) { return s == "tsv" ? Format::tsv : Format::csv; }

void write_text(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ParameterError("cannot open " + g.out);
  f << text;
}

void write_bytes(const std::string& path, const Bytes& b) {
  if (path.empty()) throw ParameterError("--out is required for binary output");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot open " + path);
  f.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

Bytes read_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

Bytes seed_bytes(const Globals& g) {
  if (!g.seed_hex.empty()) return bytes_from_hex(g.seed_hex);
  ensure_sodium();
  Bytes s(32);
  randombytes_buf(s.data(), s.size());
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary Goppa code McEliece toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed_hex, "Seed as hex")->check([](const std::string& s) {
    try {
      bytes_from_hex(s);
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
    return std::string();
  });
  app.add_option("--out", g.out, "Output path");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "tsv"}));

  const std::map<std::string, Variant> variants{{"generic", Variant::generic}, {"dyadic", Variant::dyadic}};
  const std::map<std::string, Decoder> decoders{{"ud", Decoder::ud}, {"ld", Decoder::ld}};
  const std::map<std::string, Countermeasure> cms{
      {"none", Countermeasure::none}, {"cm1", Countermeasure::cm1}, {"cm2", Countermeasure::cm2}};

  int table = 1;
  auto* t = app.add_subcommand("table", "Recompute a reference table and compare");
  t->add_option("number", table, "Table number")->required()->check(CLI::Range(1, 4));

  SearchQuery sq;
  auto* s = app.add_subcommand("search", "Smallest key meeting a workfactor target");
  s->add_option("--target", sq.target, "Target workfactor in bits")->required()->check(CLI::Range(60.0, 300.0));
  s->add_option("--variant", sq.variant)->transform(CLI::CheckedTransformer(variants))->required();
  s->add_option("--decoder", sq.decoder)->transform(CLI::CheckedTransformer(decoders))->required();
  s->add_option("--countermeasure", sq.countermeasure)->transform(CLI::CheckedTransformer(cms));

  long long bn = 0;
  long long btmax = 0;
  auto* b = app.add_subcommand("bounds", "Decoding radii normalised by n");
  b->add_option("--n", bn)->required();
  b->add_option("--tmax", btmax)->required();

  KeygenRequest kq;
  auto* k = app.add_subcommand("keygen", "Generate a key file");
  k->add_option("--variant", kq.variant)->transform(CLI::CheckedTransformer(variants))->required();
  k->add_option("--decoder", kq.decoder)->transform(CLI::CheckedTransformer(decoders))->required();
  k->add_option("--m", kq.m)->required();
  k->add_option("--n", kq.n)->required();
  k->add_option("--r", kq.r)->required();

  std::string key_path;
  std::string in_path;
  auto* e = app.add_subcommand("encrypt", "Encrypt a message file");
  e->add_option("--key", key_path)->required();
  e->add_option("--in", in_path)->required();
  auto* d = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  d->add_option("--key", key_path)->required();
  d->add_option("--in", in_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    const int rc = app.exit(pe);
    return rc == 0 ? 0 : 1;
  }

  try {
    const Format fmt = parse_format(g.format);
    if (*t) {
      write_text(g, table_text(table, fmt));
      return table_matches(table) ? 0 : 2;
    }
    if (*s) {
      const auto rows = search_rows(sq);
      if (rows.empty()) throw ParameterError("no feasible parameters in the search grid");
      write_text(g, params_to_text(rows, fmt));
      return 0;
    }
    if (*b) {
      write_text(g, bounds_text(bn, btmax, fmt));
      return 0;
    }
    if (*k) {
      write_bytes(g.out, serialize_key(keygen(kq, seed_bytes(g))));
      return 0;
    }
    if (*e) {
      const KeyPair kp = parse_key(read_bytes(key_path));
      const Bytes msg = read_bytes(in_path);
      if (msg.size() * 8 > payload_capacity(kp.params.k))
        throw PayloadTooLong("message exceeds " + std::to_string(payload_capacity(kp.params.k) / 8) + " bytes");
      write_bytes(g.out, serialize_ciphertext(encrypt(kp, bits_from_bytes(msg), seed_bytes(g))));
      return 0;
    }
    if (*d) {
      const KeyPair kp = parse_key(read_bytes(key_path));
      const Bytes msg = bytes_from_bits(decrypt(kp, parse_ciphertext(read_bytes(in_path))));
      if (g.out.empty()) {
        std::cout.write(reinterpret_cast<const char*>(msg.data()), static_cast<std::streamsize>(msg.size()));
      } else {
        write_bytes(g.out, msg);
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
