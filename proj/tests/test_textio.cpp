#include <filesystem>

#include "doctest.h"
#include "reductions.hpp"
#include "shapegen.hpp"
#include "textio.hpp"
#include "tp.hpp"

using namespace tastp;

namespace {

Tas line_tas() {
  TileType head = make_tile("", "", "", "a");
  TileType link = make_tile("", "a", "", "b");
  TileType tail = make_tile("", "b", "", "");
  StrengthFunction g({{"a", 2}, {"b", 2}});
  return Tas::make({head, link, tail}, {"head", "link", "tail"},
                   Assembly::single({-3, 5}, head), g, 2);
}

bool same_tas(const Tas& a, const Tas& b) {
  return a.tile_types == b.tile_types && a.names == b.names &&
         a.seed == b.seed && a.g == b.g && a.tau == b.tau;
}

bool same_rows(const TauInequalitySystem& a, const TauInequalitySystem& b) {
  if (a.ineqs.size() != b.ineqs.size()) return false;
  for (size_t i = 0; i < a.ineqs.size(); i++)
    if (a.ineqs[i].sign != b.ineqs[i].sign || a.ineqs[i].terms != b.ineqs[i].terms)
      return false;
  return true;
}

bool same_tp(const TauInequalitySystem& a, const TauInequalitySystem& b) {
  if (a.vars != b.vars || a.strict_vars != b.strict_vars) return false;
  if (a.partition.has_value() != b.partition.has_value()) return false;
  if (a.partition && a.partition->parts != b.partition->parts) return false;
  return same_rows(a, b);
}

bool same_sat(const OneInThreeInstance& a, const OneInThreeInstance& b) {
  if (a.vars != b.vars || a.clauses != b.clauses) return false;
  if (a.partition.has_value() != b.partition.has_value()) return false;
  return !a.partition || a.partition->parts == b.partition->parts;
}

bool same_sftas(const StrengthFreeTas& a, const StrengthFreeTas& b) {
  return a.tile_types == b.tile_types && a.coop == b.coop && a.seed == b.seed;
}

TauInequalitySystem single_row_system(uint32_t m) {
  TauInequalitySystem sys;
  QuadPartition qp;
  for (uint32_t i = 0; i < m; i++) {
    std::string v(1, char('a' + i));
    sys.add_var(v);
    qp.parts[i].push_back(v);
  }
  std::vector<std::string> all(sys.vars);
  sys.add(Sign::GEQ_TAU, all);
  sys.partition = qp;
  return sys;
}

OneInThreeInstance tiny_inst() {
  return OneInThreeInstance::make({"x", "y", "z"},
                                  {{pos("x"), pos("y"), pos("z")}});
}

}  // namespace

TEST_CASE("tile set files round-trip") {
  SUBCASE("small hand-built system") {
    Tas t = line_tas();
    std::string text = write_tas(t);
    CHECK(same_tas(read_tas(text), t));
    CHECK(read_tas(text).seed.placement().begin()->first == Position{-3, 5});
    // stable output: writing again gives the identical file
    CHECK(write_tas(read_tas(text)) == text);
  }

  SUBCASE("witness-scale system with dotted labels") {
    TauInequalitySystem sys = single_row_system(2);
    Assignment sol{{"a", 2}, {"b", 2}};
    WitnessTas w = build_witness_tas(sys, *sys.partition, sol, 4, 6);
    std::string text = write_tas(w.tas);
    CHECK(same_tas(read_tas(text), w.tas));
  }

  SUBCASE("a literal file parses") {
    std::string text =
        "# comment\n"
        "tau 2\n"
        "tiles:\n"
        "head N= W= S= E=a\n"
        "\n"
        "link N= W=a S= E=b\n"
        "tail N= W=b S= E=\n"
        "strengths:\n"
        "a 2\n"
        "b 2\n"
        "seed:\n"
        "-3 5 head\n";
    CHECK(same_tas(read_tas(text), line_tas()));
  }

  SUBCASE("rejects malformed input") {
    CHECK_THROWS_AS(read_tas(""), ValidationError);
    CHECK_THROWS_AS(read_tas("tau 2\ntiles:\nx N= W= S= E=a\n"), ValidationError);
    CHECK_THROWS_AS(read_tas("tau 2\ntau 3\n"), ValidationError);
    CHECK_THROWS_AS(read_tas("bogus 1\n"), ValidationError);
    CHECK_THROWS_AS(read_tas("tau 2\nx N= W= S= E=\n"), ValidationError);  // outside section
    CHECK_THROWS_AS(read_tas("tau 2\ntiles:\nx W= N= S= E=\n"), ValidationError);  // side order
    CHECK_THROWS_AS(read_tas("tau 2\ntiles:\nx N= W= S= E=\nx N= W= S= E=\n"),
                    ValidationError);  // duplicate name
    std::string no_strength =
        "tau 2\ntiles:\nx N= W= S= E=a\nseed:\n0 0 x\n";
    CHECK_THROWS_AS(read_tas(no_strength), ValidationError);
    std::string bad_seed_name =
        "tau 2\ntiles:\nx N= W= S= E=a\nstrengths:\na 2\nseed:\n0 0 y\n";
    CHECK_THROWS_AS(read_tas(bad_seed_name), ValidationError);
    std::string dup_seed =
        "tau 2\ntiles:\nx N=a W=a S=a E=a\nstrengths:\na 2\nseed:\n0 0 x\n0 0 x\n";
    CHECK_THROWS_AS(read_tas(dup_seed), ValidationError);
  }

  SUBCASE("writer rejects unserializable names") {
    TileType t = make_tile("", "", "", "a b");
    StrengthFunction g({{"a b", 2}});
    Tas bad = Tas::make({t}, {"only"}, Assembly::single({0, 0}, t), g, 2);
    CHECK_THROWS_AS(write_tas(bad), ValidationError);
  }
}

TEST_CASE("strength-free files round-trip") {
  SUBCASE("from a concrete system") {
    StrengthFreeTas sf = strength_free(line_tas());
    std::string text = write_sftas(sf);
    CHECK(same_sftas(read_sftas(text), sf));
    CHECK(write_sftas(read_sftas(text)) == text);
  }

  SUBCASE("from the clause encoding") {
    StrengthFreeTas sf = tp_to_sftas(tp_min_variant(monotone_to_quadripartite(tiny_inst())));
    std::string text = write_sftas(sf);
    CHECK(same_sftas(read_sftas(text), sf));
  }

  SUBCASE("full family listing is accepted") {
    StrengthFreeTas sf = strength_free(line_tas());
    std::ostringstream full;
    for (const auto& [p, t] : sf.seed.placement())
      full << "seed " << p.x << ' ' << p.y << ' ' << sf.index_of(t) << "\n";
    for (size_t i = 0; i < sf.tile_types.size(); i++) {
      full << "tile";
      for (Dir d : kDirs) {
        const std::string& lab = sf.tile_types[i].at(d);
        full << ' ' << (lab.empty() ? "-" : lab);
      }
      full << "\ncoop";
      for (unsigned s = 0; s < 16; s++)
        if (sf.coop[i].contains(DirSet(s))) full << ' ' << dirset_name(DirSet(s));
      full << "\n";
    }
    CHECK(same_sftas(read_sftas(full.str()), sf));
  }

  SUBCASE("rejects malformed input") {
    CHECK_THROWS_AS(read_sftas(""), ValidationError);
    CHECK_THROWS_AS(read_sftas("seed 0 0 0\n"), ValidationError);  // index range
    CHECK_THROWS_AS(read_sftas("seed 0 0 0\ntile - - - a\n"), ValidationError);  // no coop
    CHECK_THROWS_AS(read_sftas("seed 0 0 0\ntile - - - a\ncoop min: QQ\n"),
                    ValidationError);  // bad dirset
    CHECK_THROWS_AS(read_sftas("seed 0 0 0\ntile - - - a\ncoop E NWSE\n"),
                    ValidationError);  // not upward closed
    CHECK_THROWS_AS(read_sftas("tile - - - a\ncoop min: E\n"), ValidationError);  // no seed
    CHECK_THROWS_AS(
        read_sftas("seed 0 0 0\ntile - - - a\ncoop min: -\n"),
        ValidationError);  // empty cooperation set member
  }
}

TEST_CASE("inequality system files round-trip") {
  SUBCASE("plain system with strict and partition") {
    TauInequalitySystem sys = single_row_system(4);
    sys.add(Sign::LT_TAU, {"a", "b"});
    sys.add(Sign::GEQ_TAU, {"c", "c"});  // multiplicity survives the trip
    sys.strict_vars = true;
    std::string text = write_tp(sys);
    CHECK(same_tp(read_tp(text), sys));
    CHECK(write_tp(read_tp(text)) == text);
  }

  SUBCASE("generated systems") {
    CHECK(same_tp(read_tp(write_tp(system_min_tau(5))), system_min_tau(5)));
    OneInThreeInstance four_part = monotone_to_quadripartite(tiny_inst());
    TauInequalitySystem enc = tp_min_variant(four_part);
    CHECK(same_tp(read_tp(write_tp(enc)), enc));
    TauInequalitySystem quad = quad1in3_to_tp(four_part, 6);
    CHECK(same_tp(read_tp(write_tp(quad)), quad));
  }

  SUBCASE("a literal file parses") {
    std::string text =
        "vars: a b c\n"
        "strict\n"
        "partition: N=a,b W=c S= E=\n"
        "a + b + c >= TAU\n"
        "a + a < TAU\n"
        "# trailing comment\n";
    TauInequalitySystem sys = read_tp(text);
    CHECK(sys.vars == std::vector<std::string>{"a", "b", "c"});
    CHECK(sys.strict_vars);
    REQUIRE(sys.partition);
    CHECK(sys.partition->parts[0] == std::vector<std::string>{"a", "b"});
    CHECK(sys.partition->parts[2].empty());
    REQUIRE(sys.ineqs.size() == 2);
    CHECK(sys.ineqs[0].sign == Sign::GEQ_TAU);
    CHECK(sys.ineqs[1].terms == std::vector<uint32_t>{0, 0});
  }

  SUBCASE("rejects malformed input") {
    CHECK_THROWS_AS(read_tp(""), ValidationError);
    CHECK_THROWS_AS(read_tp("a + b >= TAU\n"), ValidationError);  // no header
    CHECK_THROWS_AS(read_tp("vars: a\nvars: b\n"), ValidationError);
    CHECK_THROWS_AS(read_tp("vars: a a\n"), ValidationError);
    CHECK_THROWS_AS(read_tp("vars: a\na >= 4\n"), ValidationError);  // literal TAU only
    CHECK_THROWS_AS(read_tp("vars: a\na > TAU\n"), ValidationError);
    CHECK_THROWS_AS(read_tp("vars: a\na + >= TAU\n"), ValidationError);
    CHECK_THROWS_AS(read_tp("vars: a b\na b >= TAU\n"), ValidationError);
    CHECK_THROWS_AS(read_tp("vars: a\nb >= TAU\n"), ValidationError);  // unknown var
    CHECK_THROWS_AS(read_tp("vars: a b c d e\na + b + c + d + e >= TAU\n"),
                    ValidationError);  // five terms
    CHECK_THROWS_AS(read_tp("vars: a\npartition: N=a W= S=\n"), ValidationError);
    CHECK_THROWS_AS(read_tp("vars: a b\npartition: N=a W=a S= E=\n"),
                    ValidationError);  // repeated
    CHECK_THROWS_AS(read_tp("vars: a b\npartition: N=a W= S= E=\n"),
                    ValidationError);  // not covering
    CHECK_THROWS_AS(read_tp("vars: a\nstrict\nstrict\n"), ValidationError);
  }
}

TEST_CASE("one-in-three files round-trip") {
  SUBCASE("monotone instance") {
    OneInThreeInstance inst = tiny_inst();
    std::string text = write_sat(inst);
    CHECK(same_sat(read_sat(text), inst));
    CHECK(write_sat(read_sat(text)) == text);
  }

  SUBCASE("negated literals and partition") {
    OneInThreeInstance quad = monotone_to_quadripartite(tiny_inst());
    REQUIRE(quad.partition);
    std::string text = write_sat(quad);
    CHECK(same_sat(read_sat(text), quad));

    OneInThreeInstance mixed = OneInThreeInstance::make(
        {"x", "y", "z"}, {{neg("x"), pos("y"), neg("z")}});
    CHECK(same_sat(read_sat(write_sat(mixed)), mixed));
  }

  SUBCASE("a literal file parses") {
    std::string text =
        "vars: x y z\n"
        "-x y z\n"
        "x -y z\n";
    OneInThreeInstance inst = read_sat(text);
    REQUIRE(inst.clauses.size() == 2);
    CHECK(inst.clauses[0][0] == neg("x"));
    CHECK(inst.clauses[1][1] == neg("y"));
    CHECK(!inst.partition);
    CHECK(!inst.monotone());
  }

  SUBCASE("rejects malformed input") {
    CHECK_THROWS_AS(read_sat(""), ValidationError);
    CHECK_THROWS_AS(read_sat("x y z\n"), ValidationError);  // no header
    CHECK_THROWS_AS(read_sat("vars: x y\nx y\n"), ValidationError);  // two literals
    CHECK_THROWS_AS(read_sat("vars: x y z\nx x y\n"), ValidationError);  // repeat
    CHECK_THROWS_AS(read_sat("vars: x y z\nx y w\n"), ValidationError);  // unknown
    CHECK_THROWS_AS(read_sat("vars: x y z\npart U1: x\nx y z\n"),
                    ValidationError);  // partial partition
    CHECK_THROWS_AS(read_sat("vars: x\npart U5: x\n"), ValidationError);
  }
}

TEST_CASE("shape files round-trip") {
  TauInequalitySystem sys = single_row_system(3);
  auto [shape, plan] = build_shape(sys, *sys.partition, 6);
  std::string text = write_shape(shape);
  CHECK(read_shape(text) == shape);
  CHECK(write_shape(read_shape(text)) == text);

  CHECK(read_shape("0 0\n-1 4\n") == Shape{{0, 0}, {-1, 4}});
  CHECK(read_shape("").empty());
  CHECK_THROWS_AS(read_shape("0\n"), ValidationError);
  CHECK_THROWS_AS(read_shape("0 0\n0 0\n"), ValidationError);
  CHECK_THROWS_AS(read_shape("a 0\n"), ValidationError);
  CHECK_THROWS_AS(read_shape("99999999999999999999 0\n"), ValidationError);
}

TEST_CASE("assembly text uses tile names") {
  Tas t = line_tas();
  std::map<Position, TileType> placement{
      {{-3, 5}, t.tile_types[0]}, {{-2, 5}, t.tile_types[1]}, {{-1, 5}, t.tile_types[2]}};
  Assembly a = Assembly::of(placement);
  std::string text = write_assembly(a, t);
  CHECK(read_assembly(text, t) == a);
  CHECK(text == "-3 5 head\n-2 5 link\n-1 5 tail\n");

  CHECK_THROWS_AS(read_assembly("0 0 nosuch\n", t), ValidationError);
  CHECK_THROWS_AS(read_assembly("0 0 head\n0 0 head\n", t), ValidationError);
  CHECK_THROWS_AS(read_assembly("0 0 head\n9 9 head\n", t), ValidationError);  // disconnected
  CHECK_THROWS_AS(read_assembly("", t), ValidationError);  // empty
}

TEST_CASE("file helpers") {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "tastp_textio_roundtrip.txt";
  write_text_file(p.string(), "tau 1\n");
  CHECK(read_text_file(p.string()) == "tau 1\n");
  fs::remove(p);
  CHECK_THROWS_AS(read_text_file((p / "nope").string()), ValidationError);
}
