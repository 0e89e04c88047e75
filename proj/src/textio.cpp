#include "textio.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace tastp {

namespace {

struct Line {
  size_t no = 0;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(size_t line_no, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line_no) + ": " + msg);
}

// blank lines and '#' comments dropped; tokens split on spaces and tabs
std::vector<Line> lex(const std::string& text) {
  std::vector<Line> out;
  size_t no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    no++;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line{no, {}};
    std::istringstream ls(raw);
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens[0][0] == '#') continue;
    out.push_back(std::move(line));
  }
  return out;
}

long long parse_int(const Line& l, const std::string& tok, long long lo,
                    long long hi) {
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    if (v < lo || v > hi) throw std::out_of_range("");
    return v;
  } catch (const std::out_of_range&) {
    fail(l.no, "number out of range: " + tok);
  } catch (const std::exception&) {
    fail(l.no, "expected a number, got: " + tok);
  }
}

int parse_coord(const Line& l, const std::string& tok) {
  return int(parse_int(l, tok, std::numeric_limits<int>::min(),
                       std::numeric_limits<int>::max()));
}

uint32_t parse_u32(const Line& l, const std::string& tok) {
  return uint32_t(parse_int(l, tok, 0, std::numeric_limits<uint32_t>::max()));
}

// the directive words and operators a bare name would collide with
bool reserved_word(const std::string& s) {
  static const std::set<std::string> words{
      "+", "<", ">=", "TAU", "tau", "part", "strict",
      "tile", "coop", "seed", "min", "-"};
  return words.count(s) > 0;
}

// names and labels must survive tokenization: nonempty, no whitespace or
// control characters, and not mistakable for format syntax
void check_token(const std::string& s, const std::string& what) {
  if (s.empty())
    throw ValidationError(what + " must be nonempty to serialize");
  for (unsigned char c : s)
    if (c <= ' ' || c == 0x7f)
      throw ValidationError(what + " contains whitespace or control characters: unserializable");
  if (s[0] == '#' || s[0] == '-' || reserved_word(s) || s.find(',') != std::string::npos ||
      s.find(':') != std::string::npos)
    throw ValidationError(what + " collides with format syntax: " + s);
}

void check_label(const std::string& s) {
  if (s == kNullLabel) return;
  check_token(s, "glue label");
}

std::vector<std::string> split_commas(const Line& l, const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    std::string piece = s.substr(start, end - start);
    if (piece.empty()) fail(l.no, "empty name in comma-separated list");
    out.push_back(std::move(piece));
    if (end == s.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string write_tas(const Tas& tas) {
  std::ostringstream out;
  out << "tau " << tas.tau << "\n";
  out << "tiles:\n";
  for (size_t i = 0; i < tas.tile_types.size(); i++) {
    check_token(tas.names[i], "tile name");
    out << tas.names[i];
    for (Dir d : kDirs) {
      const std::string& lab = tas.tile_types[i].at(d);
      check_label(lab);
      out << ' ' << dir_char(d) << '=' << lab;
    }
    out << "\n";
  }
  out << "strengths:\n";
  for (const auto& [lab, s] : tas.g.entries()) {
    check_label(lab);
    out << lab << ' ' << s << "\n";
  }
  out << "seed:\n";
  for (const auto& [p, t] : tas.seed.placement())
    out << p.x << ' ' << p.y << ' ' << tas.name_of(t) << "\n";
  return out.str();
}

Tas read_tas(const std::string& text) {
  enum class Section { none, tiles, strengths, seed };
  Section sec = Section::none;
  std::optional<uint32_t> tau;
  std::vector<TileType> tiles;
  std::vector<std::string> names;
  std::map<std::string, size_t> by_name;
  std::map<std::string, uint32_t> strengths;
  std::map<Position, TileType> placement;

  for (const Line& l : lex(text)) {
    const auto& t = l.tokens;
    if (t[0] == "tau") {
      if (t.size() != 2) fail(l.no, "expected: tau <int>");
      if (tau) fail(l.no, "duplicate tau line");
      tau = parse_u32(l, t[1]);
      continue;
    }
    if (t[0] == "tiles:" || t[0] == "strengths:" || t[0] == "seed:") {
      if (t.size() != 1) fail(l.no, "section header takes no arguments");
      sec = t[0] == "tiles:" ? Section::tiles
            : t[0] == "strengths:" ? Section::strengths
                                   : Section::seed;
      continue;
    }
    switch (sec) {
      case Section::none:
        fail(l.no, "directive outside any section: " + t[0]);
      case Section::tiles: {
        if (t.size() != 5)
          fail(l.no, "expected: <name> N=<label> W=<label> S=<label> E=<label>");
        TileType tile;
        for (int k = 0; k < 4; k++) {
          const std::string& side = t[size_t(k) + 1];
          std::string prefix{dir_char(kDirs[size_t(k)])};
          prefix += '=';
          if (side.rfind(prefix, 0) != 0)
            fail(l.no, "side " + std::to_string(k + 1) + " must start with " + prefix);
          tile.at(kDirs[size_t(k)]) = side.substr(2);
        }
        if (!by_name.emplace(t[0], tiles.size()).second)
          fail(l.no, "duplicate tile name: " + t[0]);
        tiles.push_back(std::move(tile));
        names.push_back(t[0]);
        break;
      }
      case Section::strengths: {
        if (t.size() != 2) fail(l.no, "expected: <label> <int>");
        if (!strengths.emplace(t[0], parse_u32(l, t[1])).second)
          fail(l.no, "duplicate strength for label: " + t[0]);
        break;
      }
      case Section::seed: {
        if (t.size() != 3) fail(l.no, "expected: <x> <y> <tile-name>");
        auto it = by_name.find(t[2]);
        if (it == by_name.end()) fail(l.no, "unknown tile name: " + t[2]);
        Position p{parse_coord(l, t[0]), parse_coord(l, t[1])};
        if (!placement.emplace(p, tiles[it->second]).second)
          fail(l.no, "duplicate seed position");
        break;
      }
    }
  }
  if (!tau) throw ValidationError("missing tau line");
  if (placement.empty()) throw ValidationError("missing seed section or seed tiles");
  return Tas::make(std::move(tiles), std::move(names),
                   Assembly::of(std::move(placement)),
                   StrengthFunction(std::move(strengths)), *tau);
}

std::string write_sftas(const StrengthFreeTas& sf) {
  std::ostringstream out;
  for (const auto& [p, t] : sf.seed.placement())
    out << "seed " << p.x << ' ' << p.y << ' ' << sf.index_of(t) << "\n";
  for (size_t i = 0; i < sf.tile_types.size(); i++) {
    out << "tile";
    for (Dir d : kDirs) {
      const std::string& lab = sf.tile_types[i].at(d);
      check_label(lab);
      out << ' ' << (lab == kNullLabel ? "-" : lab);
    }
    out << "\ncoop min:";
    for (DirSet s : sf.coop[i].minimal_members()) out << ' ' << dirset_name(s);
    out << "\n";
  }
  return out.str();
}

StrengthFreeTas read_sftas(const std::string& text) {
  std::vector<TileType> tiles;
  std::vector<CooperationSet> coop;
  std::vector<std::tuple<Position, size_t, size_t>> seeds;  // pos, index, line
  bool tile_open = false;  // a tile line still waiting for its coop line

  for (const Line& l : lex(text)) {
    const auto& t = l.tokens;
    if (t[0] == "seed") {
      if (t.size() != 4) fail(l.no, "expected: seed <x> <y> <tile-index>");
      Position p{parse_coord(l, t[1]), parse_coord(l, t[2])};
      seeds.emplace_back(p, size_t(parse_int(l, t[3], 0, 1 << 20)), l.no);
      continue;
    }
    if (t[0] == "tile") {
      if (tile_open) fail(l.no, "tile line without a coop line before it");
      if (t.size() != 5) fail(l.no, "expected: tile <n> <w> <s> <e>");
      TileType tile;
      for (int k = 0; k < 4; k++)
        if (t[size_t(k) + 1] != "-") tile.at(kDirs[size_t(k)]) = t[size_t(k) + 1];
      tiles.push_back(std::move(tile));
      tile_open = true;
      continue;
    }
    if (t[0] == "coop") {
      if (!tile_open) fail(l.no, "coop line without a preceding tile line");
      tile_open = false;
      CooperationSet c;
      bool minimal = t.size() > 1 && t[1] == "min:";
      std::vector<DirSet> members;
      for (size_t k = minimal ? 2 : 1; k < t.size(); k++) {
        auto s = dirset_parse(t[k]);
        if (!s) fail(l.no, "bad direction set: " + t[k]);
        members.push_back(*s);
      }
      try {
        if (minimal) {
          c = coop_upward(members);
        } else {
          for (DirSet s : members) c.add(s);
        }
        c.validate();
      } catch (const ValidationError& e) {
        fail(l.no, e.what());
      }
      coop.push_back(c);
      continue;
    }
    fail(l.no, "unknown directive: " + t[0]);
  }
  if (tile_open) throw ValidationError("last tile line has no coop line");
  if (seeds.empty()) throw ValidationError("missing seed line");

  std::map<Position, TileType> placement;
  for (const auto& [p, idx, no] : seeds) {
    if (idx >= tiles.size())
      fail(no, "seed tile index out of range: " + std::to_string(idx));
    if (!placement.emplace(p, tiles[idx]).second) fail(no, "duplicate seed position");
  }
  return StrengthFreeTas::make(std::move(tiles), std::move(coop),
                               Assembly::of(std::move(placement)));
}

std::string write_tp(const TauInequalitySystem& sys) {
  std::ostringstream out;
  out << "vars:";
  for (const std::string& v : sys.vars) {
    check_token(v, "variable name");
    out << ' ' << v;
  }
  out << "\n";
  if (sys.strict_vars) out << "strict\n";
  if (sys.partition) {
    out << "partition:";
    for (size_t k = 0; k < 4; k++) {
      out << ' ' << dir_char(kDirs[k]) << '=';
      const auto& part = sys.partition->parts[k];
      for (size_t i = 0; i < part.size(); i++) {
        check_token(part[i], "partition entry");
        out << (i ? "," : "") << part[i];
      }
    }
    out << "\n";
  }
  for (const TauInequality& row : sys.ineqs) {
    for (size_t i = 0; i < row.terms.size(); i++) {
      if (row.terms[i] >= sys.vars.size())
        throw ValidationError("inequality term out of range");
      out << (i ? " + " : "") << sys.vars[row.terms[i]];
    }
    out << (row.sign == Sign::GEQ_TAU ? " >= TAU" : " < TAU") << "\n";
  }
  return out.str();
}

TauInequalitySystem read_tp(const std::string& text) {
  TauInequalitySystem sys;
  bool have_vars = false;
  bool have_strict = false;
  bool have_partition = false;

  for (const Line& l : lex(text)) {
    const auto& t = l.tokens;
    if (t[0] == "vars:") {
      if (have_vars) fail(l.no, "duplicate vars: line");
      have_vars = true;
      try {
        for (size_t k = 1; k < t.size(); k++) sys.add_var(t[k]);
      } catch (const ValidationError& e) {
        fail(l.no, e.what());
      }
      continue;
    }
    if (!have_vars) fail(l.no, "the vars: header must come first");
    if (t[0] == "strict") {
      if (t.size() != 1) fail(l.no, "strict takes no arguments");
      if (have_strict) fail(l.no, "duplicate strict line");
      have_strict = true;
      sys.strict_vars = true;
      continue;
    }
    if (t[0] == "partition:") {
      if (have_partition) fail(l.no, "duplicate partition: line");
      have_partition = true;
      if (t.size() != 5) fail(l.no, "expected: partition: N=... W=... S=... E=...");
      QuadPartition qp;
      std::set<std::string> seen;
      for (size_t k = 0; k < 4; k++) {
        std::string prefix{dir_char(kDirs[k])};
        prefix += '=';
        const std::string& tok = t[k + 1];
        if (tok.rfind(prefix, 0) != 0)
          fail(l.no, "part " + std::to_string(k + 1) + " must start with " + prefix);
        std::string rest = tok.substr(2);
        if (!rest.empty()) qp.parts[k] = split_commas(l, rest);
        for (const std::string& name : qp.parts[k]) {
          if (!sys.has_var(name)) fail(l.no, "partition names unknown variable: " + name);
          if (!seen.insert(name).second)
            fail(l.no, "variable in two parts: " + name);
        }
      }
      if (seen.size() != sys.vars.size())
        fail(l.no, "partition must cover every variable exactly once");
      sys.partition = std::move(qp);
      continue;
    }
    // an inequality row: name (+ name)* op TAU
    if (t.size() < 3 || t.back() != "TAU")
      fail(l.no, "inequality must end with '>= TAU' or '< TAU'");
    const std::string& op = t[t.size() - 2];
    Sign sign;
    if (op == ">=")
      sign = Sign::GEQ_TAU;
    else if (op == "<")
      sign = Sign::LT_TAU;
    else
      fail(l.no, "expected operator >= or <, got: " + op);
    std::vector<std::string> terms;
    for (size_t k = 0; k + 2 < t.size(); k++) {
      if (k % 2 == 1) {
        if (t[k] != "+") fail(l.no, "expected + between terms, got: " + t[k]);
      } else {
        terms.push_back(t[k]);
      }
    }
    if (t.size() % 2 == 0)  // m terms, m-1 pluses, op, TAU: always odd
      fail(l.no, "malformed inequality");
    try {
      sys.add(sign, terms);
    } catch (const ValidationError& e) {
      fail(l.no, e.what());
    }
  }
  if (!have_vars) throw ValidationError("missing vars: header");
  return sys;
}

std::string write_sat(const OneInThreeInstance& inst) {
  std::ostringstream out;
  out << "vars:";
  for (const std::string& v : inst.vars) {
    check_token(v, "variable name");
    out << ' ' << v;
  }
  out << "\n";
  if (inst.partition) {
    for (size_t k = 0; k < 4; k++) {
      out << "part U" << (k + 1) << ':';
      for (const std::string& v : inst.partition->parts[k]) {
        check_token(v, "part entry");
        out << ' ' << v;
      }
      out << "\n";
    }
  }
  for (const auto& clause : inst.clauses) {
    for (size_t i = 0; i < 3; i++)
      out << (i ? " " : "") << (clause[i].negated ? "-" : "") << clause[i].var;
    out << "\n";
  }
  return out.str();
}

OneInThreeInstance read_sat(const std::string& text) {
  std::vector<std::string> vars;
  std::set<std::string> var_set;
  std::array<std::optional<std::vector<std::string>>, 4> parts;
  std::vector<std::array<Literal, 3>> clauses;
  bool have_vars = false;

  for (const Line& l : lex(text)) {
    const auto& t = l.tokens;
    if (t[0] == "vars:") {
      if (have_vars) fail(l.no, "duplicate vars: line");
      have_vars = true;
      for (size_t k = 1; k < t.size(); k++) {
        if (!var_set.insert(t[k]).second) fail(l.no, "duplicate variable: " + t[k]);
        vars.push_back(t[k]);
      }
      continue;
    }
    if (!have_vars) fail(l.no, "the vars: header must come first");
    if (t[0] == "part") {
      if (t.size() < 2 || t[1].size() != 3 || t[1][0] != 'U' || t[1][2] != ':' ||
          t[1][1] < '1' || t[1][1] > '4')
        fail(l.no, "expected: part U1: ... through part U4: ...");
      size_t k = size_t(t[1][1] - '1');
      if (parts[k]) fail(l.no, "duplicate part U" + std::to_string(k + 1));
      std::vector<std::string> names(t.begin() + 2, t.end());
      for (const std::string& name : names)
        if (!var_set.count(name)) fail(l.no, "part names unknown variable: " + name);
      parts[k] = std::move(names);
      continue;
    }
    if (t.size() != 3) fail(l.no, "a clause needs exactly three literals");
    std::array<Literal, 3> clause;
    for (size_t i = 0; i < 3; i++) {
      std::string v = t[i];
      bool negated = !v.empty() && v[0] == '-';
      if (negated) v = v.substr(1);
      if (!var_set.count(v)) fail(l.no, "literal over undeclared variable: " + v);
      clause[i] = Literal{std::move(v), negated};
    }
    clauses.push_back(std::move(clause));
  }
  if (!have_vars) throw ValidationError("missing vars: header");

  size_t given = 0;
  for (const auto& p : parts)
    if (p) given++;
  std::optional<QuadPartition> qp;
  if (given == 4) {
    qp = QuadPartition{};
    for (size_t k = 0; k < 4; k++) qp->parts[k] = std::move(*parts[k]);
  } else if (given != 0) {
    throw ValidationError("either all four part lines or none");
  }
  return OneInThreeInstance::make(std::move(vars), std::move(clauses), std::move(qp));
}

std::string write_shape(const Shape& s) {
  std::ostringstream out;
  for (Position p : s) out << p.x << ' ' << p.y << "\n";
  return out.str();
}

Shape read_shape(const std::string& text) {
  Shape s;
  for (const Line& l : lex(text)) {
    if (l.tokens.size() != 2) fail(l.no, "expected: <x> <y>");
    Position p{parse_coord(l, l.tokens[0]), parse_coord(l, l.tokens[1])};
    if (!s.insert(p).second) fail(l.no, "duplicate cell");
  }
  return s;
}

std::string write_assembly(const Assembly& a, const Tas& tas) {
  std::ostringstream out;
  for (const auto& [p, t] : a.placement())
    out << p.x << ' ' << p.y << ' ' << tas.name_of(t) << "\n";
  return out.str();
}

Assembly read_assembly(const std::string& text, const Tas& tas) {
  std::map<std::string, size_t> by_name;
  for (size_t i = 0; i < tas.names.size(); i++) by_name.emplace(tas.names[i], i);
  std::map<Position, TileType> placement;
  for (const Line& l : lex(text)) {
    if (l.tokens.size() != 3) fail(l.no, "expected: <x> <y> <tile-name>");
    auto it = by_name.find(l.tokens[2]);
    if (it == by_name.end()) fail(l.no, "unknown tile name: " + l.tokens[2]);
    Position p{parse_coord(l, l.tokens[0]), parse_coord(l, l.tokens[1])};
    if (!placement.emplace(p, tas.tile_types[it->second]).second)
      fail(l.no, "duplicate position");
  }
  return Assembly::of(std::move(placement));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ValidationError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
  out.flush();
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace tastp
