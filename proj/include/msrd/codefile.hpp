#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "msrd/codes.hpp"

namespace msrd {

/// One parsed code file: exactly one of the two representations.
struct CodeFile {
  std::optional<FqLinearCode> fq;
  std::optional<FqmLinearCode> fqm;
};

namespace detail {

inline std::string join_u32(const std::vector<u32>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string field_line(const FieldTower& f) {
  return "field p=" + std::to_string(f.characteristic()) + " e=" + std::to_string(f.sub_degree()) +
         " m=" + std::to_string(f.ext_degree()) + " submod=" + join_u32(f.sub_modulus()) +
         " extmod=" + join_u32(f.ext_modulus());
}

inline std::string profile_line(const BlockProfile& p) {
  std::string out = "profile";
  for (const BlockShape& b : p.blocks())
    out += " (" + std::to_string(b.rows) + "," + std::to_string(b.cols) + ")";
  return out;
}

}  // namespace detail

inline std::string serialize(const FqLinearCode& code) {
  std::string out = "msrd-code v1\n";
  out += detail::field_line(*code.tower()) + "\n";
  out += detail::profile_line(code.profile()) + "\n";
  out += "basis " + std::to_string(code.dim()) + "\n";
  for (const MatrixTuple& tup : code.basis())
    for (const FqMatrix& b : tup.blocks) {
      for (u32 i = 0; i < b.rows; ++i) {
        std::string line;
        for (u32 j = 0; j < b.cols; ++j) {
          if (j) line += ' ';
          line += std::to_string(b.at(i, j));
        }
        out += line + "\n";
      }
      out += ";\n";
    }
  return out;
}

inline std::string serialize(const FqmLinearCode& code) {
  std::string out = "msrd-code v1\n";
  out += detail::field_line(*code.tower()) + "\n";
  out += detail::profile_line(profile_from_partition(*code.tower(), code.partition())) + "\n";
  out += "partition " + detail::join_u32(code.partition().parts) + "\n";
  out += "genmat " + std::to_string(code.dim()) + "\n";
  for (u32 i = 0; i < code.dim(); ++i) {
    std::string line;
    for (u32 j = 0; j < code.length(); ++j) {
      if (j) line += ' ';
      line += std::to_string(code.genmat().at(i, j));
    }
    out += line + "\n";
  }
  return out;
}

inline std::string serialize(const CodeFile& file) {
  if (file.fq) return serialize(*file.fq);
  if (file.fqm) return serialize(*file.fqm);
  throw Error("empty code file");
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}
  /// Next line; throws at end of input.
  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(std::string("unexpected end of file, expected ") + what);
    ++lineno_;
    return line;
  }
  bool at_end() {
    return in_.peek() == std::char_traits<char>::eof();
  }
  int lineno() const { return lineno_; }

 private:
  std::istringstream in_;
  int lineno_ = 0;
};

inline u64 parse_u64(const std::string& s, const char* what) {
  if (s.empty()) throw ParseError(std::string("empty number for ") + what);
  u64 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError(std::string("bad number '") + s + "' for " + what);
    v = v * 10 + static_cast<u64>(c - '0');
    if (v > (u64{1} << 41)) throw ParseError(std::string("number too large for ") + what);
  }
  return v;
}

inline std::vector<u32> parse_u32_list(const std::string& s, const char* what) {
  std::vector<u32> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(static_cast<u32>(parse_u64(item, what)));
  if (out.empty()) throw ParseError(std::string("empty list for ") + what);
  return out;
}

/// "key=value" token split.
inline std::pair<std::string, std::string> split_kv(const std::string& tok) {
  const std::size_t eq = tok.find('=');
  if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace detail

inline CodeFile parse_code_file(const std::string& text) {
  detail::LineReader rd(text);
  if (rd.next("header") != "msrd-code v1") throw ParseError("bad header line");

  // --- field line ---
  std::istringstream fl(rd.next("field line"));
  std::string tok;
  fl >> tok;
  if (tok != "field") throw ParseError("expected field line");
  u32 p = 0, e = 0, m = 0;
  std::vector<u32> submod, extmod;
  while (fl >> tok) {
    auto [key, value] = detail::split_kv(tok);
    if (key == "p") p = static_cast<u32>(detail::parse_u64(value, "p"));
    else if (key == "e") e = static_cast<u32>(detail::parse_u64(value, "e"));
    else if (key == "m") m = static_cast<u32>(detail::parse_u64(value, "m"));
    else if (key == "submod") submod = detail::parse_u32_list(value, "submod");
    else if (key == "extmod") extmod = detail::parse_u32_list(value, "extmod");
    else throw ParseError("unknown field key '" + key + "'");
  }
  if (p == 0 || e == 0 || m == 0 || submod.empty() || extmod.empty())
    throw ParseError("incomplete field line");
  TowerPtr tower;
  try {
    tower = FieldTower::make(p, e, m, std::move(submod), std::move(extmod));
  } catch (const Error& err) {
    throw ParseError(std::string("bad field line: ") + err.what());
  }

  // --- profile line ---
  std::istringstream pl(rd.next("profile line"));
  pl >> tok;
  if (tok != "profile") throw ParseError("expected profile line");
  std::vector<BlockShape> shapes;
  while (pl >> tok) {
    if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
      throw ParseError("bad profile entry '" + tok + "'");
    const std::string body = tok.substr(1, tok.size() - 2);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("bad profile entry '" + tok + "'");
    shapes.push_back({static_cast<u32>(detail::parse_u64(body.substr(0, comma), "rows")),
                      static_cast<u32>(detail::parse_u64(body.substr(comma + 1), "cols"))});
  }
  if (shapes.empty()) throw ParseError("empty profile");
  BlockProfile profile;
  try {
    profile = BlockProfile(std::move(shapes));
  } catch (const Error& err) {
    throw ParseError(std::string("bad profile: ") + err.what());
  }

  // --- body ---
  std::string body_head = rd.next("body");
  CodeFile file;
  try {
    if (body_head.rfind("partition ", 0) == 0) {
      LengthPartition part(detail::parse_u32_list(body_head.substr(10), "partition"));
      std::istringstream gl(rd.next("genmat line"));
      gl >> tok;
      if (tok != "genmat") throw ParseError("expected genmat line");
      u32 k = 0;
      if (!(gl >> k)) throw ParseError("bad genmat row count");
      FqmMat gen(k, static_cast<u32>(part.total()));
      for (u32 i = 0; i < k; ++i) {
        std::istringstream row(rd.next("genmat row"));
        for (u32 j = 0; j < gen.cols; ++j)
          if (!(row >> gen.at(i, j))) throw ParseError("short genmat row");
        u64 extra;
        if (row >> extra) throw ParseError("genmat row too long");
      }
      FqmLinearCode code(tower, part, std::move(gen));
      if (!(profile_from_partition(*tower, code.partition()) == profile))
        throw ParseError("profile does not match partition");
      file.fqm = std::move(code);
    } else if (body_head.rfind("basis ", 0) == 0) {
      const u64 k = detail::parse_u64(body_head.substr(6), "basis size");
      std::vector<MatrixTuple> basis;
      for (u64 bi = 0; bi < k; ++bi) {
        MatrixTuple tup = zero_tuple(profile);
        for (FqMatrix& block : tup.blocks) {
          for (u32 i = 0; i < block.rows; ++i) {
            std::istringstream row(rd.next("tuple row"));
            for (u32 j = 0; j < block.cols; ++j)
              if (!(row >> block.at(i, j))) throw ParseError("short tuple row");
            u64 extra;
            if (row >> extra) throw ParseError("tuple row too long");
          }
          if (rd.next("block separator") != ";") throw ParseError("expected ';' after block");
        }
        basis.push_back(std::move(tup));
      }
      file.fq = FqLinearCode(tower, profile, std::move(basis));
    } else {
      throw ParseError("expected 'partition', 'basis' or 'genmat' body");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(std::string("invalid code body: ") + err.what());
  }
  if (!rd.at_end()) {
    const std::string rest = rd.next("end of file");
    if (!rest.empty() || !rd.at_end()) throw ParseError("trailing data after code body");
  }
  return file;
}

inline CodeFile load_code_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_file(buf.str());
}

inline void save_code_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace msrd
