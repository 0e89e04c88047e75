#include "engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "doctest.h"

using namespace tastp;

namespace {

std::string key_of(const Assembly& a) {
  std::string k;
  for (const auto& [p, t] : a.placement()) {
    k += std::to_string(p.x) + "," + std::to_string(p.y) + ":";
    for (Dir d : kDirs) {
      k += t.at(d);
      k += '|';
    }
    k += ';';
  }
  return k;
}

std::set<std::string> keys_of(const std::vector<Assembly>& v) {
  std::set<std::string> out;
  for (const Assembly& a : v) out.insert(key_of(a));
  return out;
}

// independent enumeration of all terminal assemblies: recompute attachable
// pairs with the assembly-level attachment_strength and walk every
// interleaving, memoized on serialized placements
std::set<std::string> naive_terminals(const Tas& tas, size_t state_cap = 20000) {
  std::set<std::string> seen{key_of(tas.seed)}, terms;
  std::vector<Assembly> todo{tas.seed};
  while (!todo.empty()) {
    Assembly cur = todo.back();
    todo.pop_back();
    REQUIRE(seen.size() <= state_cap);
    std::set<Position> spots;
    for (const auto& [p, t] : cur.placement())
      for (Dir d : kDirs) {
        Position q = neighbor(p, d);
        if (!cur.tile_at(q)) spots.insert(q);
      }
    bool any = false;
    for (Position q : spots)
      for (const TileType& t : tas.tile_types)
        if (attachment_strength(cur, q, t, tas.g) >= tas.tau) {
          any = true;
          auto pl = cur.placement();
          pl.emplace(q, t);
          Assembly nxt = Assembly::of(std::move(pl));
          if (seen.insert(key_of(nxt)).second) todo.push_back(nxt);
        }
    if (!any) terms.insert(key_of(cur));
  }
  return terms;
}

// 2x2 square grown from a corner: two strength-2 arms off the seed and a
// final cooperative pocket tile needing both strength-1 glues
Tas square_tas() {
  TileType corner = make_tile("k", "", "", "j");
  TileType west_arm = make_tile("", "", "k", "a");
  TileType south_arm = make_tile("b", "j", "", "");
  TileType pocket = make_tile("", "a", "b", "");
  StrengthFunction g({{"k", 2}, {"j", 2}, {"a", 1}, {"b", 1}});
  return Tas::make({corner, west_arm, south_arm, pocket},
                   {"corner", "west_arm", "south_arm", "pocket"},
                   Assembly::single({0, 0}, corner), g, 2);
}

// seed with an east glue matched by two distinct tile types
Tas rival_tas() {
  TileType a = make_tile("", "", "", "x");
  TileType b = make_tile("", "x", "", "");
  TileType c = make_tile("y", "x", "", "");
  StrengthFunction g({{"x", 2}, {"y", 1}});
  return Tas::make({a, b, c}, {"a", "b", "c"}, Assembly::single({0, 0}, a), g, 2);
}

// single tile type that extends east and west without bound
Tas ribbon_tas() {
  TileType r = make_tile("", "x", "", "x");
  StrengthFunction g({{"x", 1}});
  return Tas::make({r}, {"r"}, Assembly::single({0, 0}, r), g, 1);
}

// east-growing line of n distinct tile types at temperature 1
Tas line_tas(int n) {
  REQUIRE(n >= 2);
  std::vector<TileType> tiles;
  std::vector<std::string> names;
  std::map<std::string, uint32_t> g;
  for (int i = 0; i < n; i++) {
    std::string w = i == 0 ? "" : "g" + std::to_string(i - 1);
    std::string e = i == n - 1 ? "" : "g" + std::to_string(i);
    tiles.push_back(make_tile("", w, "", e));
    names.push_back("t" + std::to_string(i));
    if (!e.empty()) g[e] = 1;
  }
  return Tas::make(tiles, names, Assembly::single({0, 0}, tiles[0]),
                   StrengthFunction(g), 1);
}

Shape box_shape(int w, int h) {
  Shape s;
  for (int x = 0; x < w; x++)
    for (int y = 0; y < h; y++) s.insert({x, y});
  return s;
}

}  // namespace

TEST_CASE("frontier finds exactly the attachable pairs") {
  Tas sq = square_tas();

  SUBCASE("seed only") {
    auto ev = frontier(sq, sq.seed);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].position == Position{0, 1});
    CHECK(ev[0].tile == sq.tile_types[1]);
    CHECK(ev[0].strength == 2);
    CHECK(ev[1].position == Position{1, 0});
    CHECK(ev[1].tile == sq.tile_types[2]);
    CHECK(ev[1].strength == 2);
  }

  SUBCASE("cooperative pocket needs both arms") {
    Assembly one_arm = Assembly::of(
        {{{0, 0}, sq.tile_types[0]}, {{0, 1}, sq.tile_types[1]}});
    for (const auto& e : frontier(sq, one_arm))
      CHECK(e.position != Position{1, 1});

    Assembly both_arms =
        Assembly::of({{{0, 0}, sq.tile_types[0]},
                      {{0, 1}, sq.tile_types[1]},
                      {{1, 0}, sq.tile_types[2]}});
    auto ev = frontier(sq, both_arms);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].position == Position{1, 1});
    CHECK(ev[0].tile == sq.tile_types[3]);
    CHECK(ev[0].strength == 2);
  }

  SUBCASE("events agree with attachment_strength") {
    Assembly a = sq.seed;
    for (;;) {
      auto ev = frontier(sq, a);
      if (ev.empty()) break;
      for (const auto& e : ev) {
        CHECK(attachment_strength(a, e.position, e.tile, sq.g) == e.strength);
        CHECK(e.strength >= sq.tau);
      }
      a = step(sq, a, ev[0]);
    }
    CHECK(a.size() == 4);
  }

  SUBCASE("dangling glue matches nothing") {
    TileType t = make_tile("x", "", "", "");
    Tas solo = Tas::make({t}, {"t"}, Assembly::single({0, 0}, t),
                         StrengthFunction({{"x", 1}}), 1);
    CHECK(frontier(solo, solo.seed).empty());
  }

  SUBCASE("assemblies over unknown tile types are rejected") {
    TileType alien = make_tile("zz", "", "", "zz");
    CHECK_THROWS_AS(frontier(sq, Assembly::single({0, 0}, alien)),
                    ValidationError);
  }
}

TEST_CASE("step applies a single attachment") {
  Tas sq = square_tas();
  auto ev = frontier(sq, sq.seed);
  REQUIRE(ev.size() == 2);

  SUBCASE("grows the domain by the event position") {
    Assembly b = step(sq, sq.seed, ev[0]);
    CHECK(b.size() == 2);
    REQUIRE(b.tile_at({0, 1}));
    CHECK(*b.tile_at({0, 1}) == ev[0].tile);
    CHECK(is_tau_stable(b, sq.g, sq.tau));
  }

  SUBCASE("independent events commute") {
    Assembly ab = step(sq, step(sq, sq.seed, ev[0]), ev[1]);
    Assembly ba = step(sq, step(sq, sq.seed, ev[1]), ev[0]);
    CHECK(ab.placement() == ba.placement());
    CHECK(ab.size() == 3);
  }

  SUBCASE("rejects occupied, detached, and understrength events") {
    Assembly b = step(sq, sq.seed, ev[0]);
    CHECK_THROWS_AS(step(sq, b, ev[0]), ValidationError);
    CHECK_THROWS_AS(step(sq, sq.seed, {{5, 5}, sq.tile_types[1], 2}),
                    ValidationError);
    CHECK_THROWS_AS(step(sq, sq.seed, {{0, 1}, sq.tile_types[1], 1}),
                    ValidationError);
    CHECK_THROWS_AS(step(sq, sq.seed, {{0, 1}, sq.tile_types[3], 2}),
                    ValidationError);
  }

  SUBCASE("every step preserves stability") {
    Assembly a = sq.seed;
    while (true) {
      auto evs = frontier(sq, a);
      if (evs.empty()) break;
      a = step(sq, a, evs.back());
      CHECK(is_tau_stable(a, sq.g, sq.tau));
    }
    CHECK(a.size() == 4);
  }
}

TEST_CASE("terminal assemblies by exhaustive search") {
  SUBCASE("inert seed is its own terminal") {
    TileType t = make_tile("x", "", "", "");
    Tas solo = Tas::make({t}, {"t"}, Assembly::single({0, 0}, t),
                         StrengthFunction({{"x", 1}}), 1);
    auto rep = terminal_assemblies(solo, {});
    CHECK(!rep.exceeded);
    CHECK(rep.explored == 1);
    REQUIRE(rep.terminals.size() == 1);
    CHECK(rep.terminals[0].placement() == solo.seed.placement());
  }

  SUBCASE("deterministic square has one four-tile terminal") {
    Tas sq = square_tas();
    auto rep = terminal_assemblies(sq, {});
    CHECK(!rep.exceeded);
    CHECK(rep.explored == 5);  // seed, two arms, both arms, full square
    REQUIRE(rep.terminals.size() == 1);
    CHECK(rep.terminals[0].size() == 4);
    CHECK(keys_of(rep.terminals) == naive_terminals(sq));
  }

  SUBCASE("rival attachments split into two terminals") {
    Tas rv = rival_tas();
    auto rep = terminal_assemblies(rv, {});
    CHECK(!rep.exceeded);
    CHECK(rep.explored == 3);
    REQUIRE(rep.terminals.size() == 2);
    CHECK(keys_of(rep.terminals) == naive_terminals(rv));
  }

  SUBCASE("budget limits are honored") {
    Tas sq = square_tas();
    SimulationBounds tight;
    tight.max_assemblies = 2;
    CHECK(terminal_assemblies(sq, tight).exceeded);

    SimulationBounds tiny;
    tiny.max_size = 2;
    CHECK(terminal_assemblies(sq, tiny).exceeded);

    SimulationBounds fenced;
    fenced.region = Shape{{0, 0}, {0, 1}};
    CHECK(terminal_assemblies(sq, fenced).exceeded);

    SimulationBounds elsewhere;
    elsewhere.region = Shape{{7, 7}};
    CHECK(terminal_assemblies(sq, elsewhere).exceeded);
  }

  SUBCASE("unbounded ribbon runs out of budget") {
    SimulationBounds b;
    b.max_assemblies = 50;
    auto rep = terminal_assemblies(ribbon_tas(), b);
    CHECK(rep.exceeded);
  }

  SUBCASE("terminals have empty frontiers and contain the seed") {
    for (const Tas& tas : {square_tas(), rival_tas(), line_tas(5)}) {
      auto rep = terminal_assemblies(tas, {});
      REQUIRE(!rep.exceeded);
      Position seed_pos = *tas.seed.domain().begin();
      for (const Assembly& t : rep.terminals) {
        CHECK(frontier(tas, t).empty());
        CHECK(is_tau_stable(t, tas.g, tas.tau));
        REQUIRE(t.tile_at(seed_pos));
        CHECK(*t.tile_at(seed_pos) == *tas.seed.tile_at(seed_pos));
      }
    }
  }

  SUBCASE("limit validation") {
    SimulationBounds zero;
    zero.max_assemblies = 0;
    CHECK_THROWS_AS(terminal_assemblies(square_tas(), zero), ValidationError);
    SimulationBounds hollow;
    hollow.region = Shape{};
    CHECK_THROWS_AS(terminal_assemblies(square_tas(), hollow), ValidationError);
  }
}

TEST_CASE("directedness verdicts") {
  SUBCASE("deterministic growth is directed") {
    CHECK(is_directed(square_tas(), {}) == Verdict::yes);
    CHECK(is_directed(line_tas(12), {}) == Verdict::yes);
  }

  SUBCASE("inert seed is directed") {
    TileType t = make_tile("x", "", "", "");
    Tas solo = Tas::make({t}, {"t"}, Assembly::single({0, 0}, t),
                         StrengthFunction({{"x", 1}}), 1);
    CHECK(is_directed(solo, {}) == Verdict::yes);
  }

  SUBCASE("rival tiles at one position are not directed") {
    CHECK(is_directed(rival_tas(), {}) == Verdict::no);
  }

  SUBCASE("unbounded growth exceeds the budget") {
    SimulationBounds b;
    b.max_size = 64;
    CHECK(is_directed(ribbon_tas(), b) == Verdict::resources_exceeded);
    SimulationBounds fenced;
    fenced.region = box_shape(4, 1);
    CHECK(is_directed(ribbon_tas(), fenced) == Verdict::resources_exceeded);
  }

  SUBCASE("late context never unlocked in any real run") {
    // pocket tile bp reaches full strength against the finished assembly
    // but both of its partners arrive only after b fills the spot, so the
    // exhaustive check must still conclude directed
    TileType s = make_tile("c", "", "", "a");
    TileType b = make_tile("m", "a", "", "h");
    TileType c = make_tile("", "", "c", "n");
    TileType d = make_tile("", "n", "m", "");
    TileType gt = make_tile("", "h", "", "");
    TileType bp = make_tile("m", "", "", "h");
    StrengthFunction g({{"a", 2}, {"c", 2}, {"h", 2}, {"m", 1}, {"n", 1}});
    Tas tas = Tas::make({s, b, c, d, gt, bp}, {"s", "b", "c", "d", "g", "bp"},
                        Assembly::single({0, 0}, s), g, 2);
    auto rep = terminal_assemblies(tas, {});
    REQUIRE(!rep.exceeded);
    CHECK(rep.explored == 8);
    REQUIRE(rep.terminals.size() == 1);
    CHECK(rep.terminals[0].size() == 5);
    CHECK(keys_of(rep.terminals) == naive_terminals(tas));
    CHECK(is_directed(tas, {}) == Verdict::yes);
  }

  SUBCASE("verdict matches the terminal count wherever enumeration finishes") {
    for (const Tas& tas : {square_tas(), rival_tas(), line_tas(4)}) {
      auto rep = terminal_assemblies(tas, {});
      REQUIRE(!rep.exceeded);
      Verdict want = rep.terminals.size() == 1 ? Verdict::yes : Verdict::no;
      CHECK(is_directed(tas, {}) == want);
    }
  }
}

TEST_CASE("strict shape assembly") {
  Tas sq = square_tas();

  SUBCASE("square system fills the square") {
    auto v = strictly_self_assembles(sq, box_shape(2, 2));
    CHECK(v.outcome == Verdict::yes);
    CHECK(!v.witness);
  }

  SUBCASE("long line via the union fast path") {
    auto v = strictly_self_assembles(line_tas(25), box_shape(25, 1));
    CHECK(v.outcome == Verdict::yes);
    CHECK(is_directed(line_tas(25), {}) == Verdict::yes);
  }

  SUBCASE("escaping growth yields a witness outside the shape") {
    Shape line = box_shape(4, 1);
    auto v = strictly_self_assembles(sq, line);
    CHECK(v.outcome == Verdict::no);
    REQUIRE(v.witness);
    bool outside = false;
    for (const auto& [p, t] : v.witness->placement())
      if (!line.count(p)) outside = true;
    CHECK(outside);
    CHECK(keys_of({*v.witness}) ==
          keys_of({Assembly::of({{{0, 0}, sq.tile_types[0]},
                                 {{0, 1}, sq.tile_types[1]}})}));
  }

  SUBCASE("a line one cell short is escaped at the far end") {
    auto v = strictly_self_assembles(line_tas(6), box_shape(5, 1));
    CHECK(v.outcome == Verdict::no);
    REQUIRE(v.witness);
    CHECK(v.witness->tile_at({5, 0}));
  }

  SUBCASE("stalled growth yields the stalled terminal as witness") {
    // drop the pocket tile: growth stops at three cells of the square
    TileType corner = make_tile("k", "", "", "j");
    TileType west_arm = make_tile("", "", "k", "a");
    TileType south_arm = make_tile("b", "j", "", "");
    StrengthFunction g({{"k", 2}, {"j", 2}, {"a", 1}, {"b", 1}});
    Tas stalled = Tas::make({corner, west_arm, south_arm},
                            {"corner", "west_arm", "south_arm"},
                            Assembly::single({0, 0}, corner), g, 2);
    auto v = strictly_self_assembles(stalled, box_shape(2, 2));
    CHECK(v.outcome == Verdict::no);
    REQUIRE(v.witness);
    CHECK(v.witness->size() == 3);
    CHECK(!v.witness->tile_at({1, 1}));
  }

  SUBCASE("seed outside the shape") {
    auto v = strictly_self_assembles(sq, Shape{{5, 5}, {5, 6}});
    CHECK(v.outcome == Verdict::no);
    REQUIRE(v.witness);
    CHECK(v.witness->placement() == sq.seed.placement());
  }

  SUBCASE("rival fillings of one spot can still be strict") {
    auto v = strictly_self_assembles(rival_tas(), box_shape(2, 1));
    CHECK(v.outcome == Verdict::yes);
    SimulationBounds tight;
    tight.max_assemblies = 2;
    CHECK(strictly_self_assembles(rival_tas(), box_shape(2, 1), tight).outcome ==
          Verdict::resources_exceeded);
  }

  SUBCASE("shape validation") {
    CHECK_THROWS_AS(strictly_self_assembles(sq, Shape{}), ValidationError);
    CHECK_THROWS_AS(strictly_self_assembles(sq, Shape{{0, 0}, {2, 2}}),
                    ValidationError);
  }
}

TEST_CASE("rescaling strengths and temperature together changes nothing") {
  for (const Tas& tas : {square_tas(), rival_tas(), line_tas(5)}) {
    for (uint32_t c : {2u, 3u}) {
      std::map<std::string, uint32_t> scaled;
      for (const auto& [l, s] : tas.g.entries()) scaled[l] = c * s;
      Tas big = Tas::make(tas.tile_types, tas.names, tas.seed,
                          StrengthFunction(scaled), c * tas.tau);

      auto ev0 = frontier(tas, tas.seed);
      auto ev1 = frontier(big, big.seed);
      REQUIRE(ev0.size() == ev1.size());
      for (size_t i = 0; i < ev0.size(); i++) {
        CHECK(ev0[i].position == ev1[i].position);
        CHECK(ev0[i].tile == ev1[i].tile);
        CHECK(c * ev0[i].strength == ev1[i].strength);
      }

      auto r0 = terminal_assemblies(tas, {});
      auto r1 = terminal_assemblies(big, {});
      REQUIRE(!r0.exceeded);
      REQUIRE(!r1.exceeded);
      CHECK(keys_of(r0.terminals) == keys_of(r1.terminals));
      CHECK(is_directed(tas, {}) == is_directed(big, {}));
    }
  }
}

TEST_CASE("random systems: engine agrees with the naive enumeration") {
  std::mt19937 rng(20260819);
  auto pick = [&](uint32_t n) { return uint32_t(rng() % n); };
  const std::vector<std::string> pool{"", "p", "q", "r"};

  int done = 0;
  while (done < 120) {
    uint32_t tau = 1 + pick(2);
    std::map<std::string, uint32_t> gm;
    for (size_t i = 1; i < pool.size(); i++) gm[pool[i]] = 1 + pick(tau);
    uint32_t k = 1 + pick(3);
    std::vector<TileType> tiles;
    std::vector<std::string> names;
    for (uint32_t i = 0; i < k; i++) {
      tiles.push_back(make_tile(pool[pick(4)], pool[pick(4)], pool[pick(4)],
                                pool[pick(4)]));
      names.push_back("t" + std::to_string(i));
    }
    Tas tas;
    try {
      tas = Tas::make(tiles, names, Assembly::single({0, 0}, tiles[0]),
                      StrengthFunction(gm), tau);
    } catch (const ValidationError&) {
      continue;  // duplicate types or an unattachable type, resample
    }
    done++;

    SimulationBounds b;
    b.max_assemblies = 3000;
    b.max_size = 40;
    auto rep = terminal_assemblies(tas, b);
    if (rep.exceeded) continue;

    CHECK(keys_of(rep.terminals) == naive_terminals(tas));
    for (const Assembly& t : rep.terminals) {
      CHECK(is_tau_stable(t, tas.g, tas.tau));
      CHECK(frontier(tas, t).empty());
    }
    Verdict want = rep.terminals.size() == 1 ? Verdict::yes : Verdict::no;
    CHECK(is_directed(tas, b) == want);
  }
}

TEST_CASE("tile complexity oracle on small shapes") {
  Shape one = box_shape(1, 1);
  Shape two = box_shape(2, 1);
  Shape three = box_shape(3, 1);

  SUBCASE("single cell needs a single tile") {
    auto k = tile_complexity_oracle(one, 1, 4, 4);
    REQUIRE(k);
    CHECK(*k == 1);
  }

  SUBCASE("domino needs two tiles") {
    CHECK(!tile_complexity_oracle(two, 1, 1, 4));
    auto k = tile_complexity_oracle(two, 1, 4, 4);
    REQUIRE(k);
    CHECK(*k == 2);
  }

  SUBCASE("tromino needs three tiles at both temperatures") {
    for (uint32_t tau : {1u, 2u}) {
      auto k = tile_complexity_oracle(three, tau, 4, 4);
      REQUIRE(k);
      CHECK(*k == 3);
    }
  }

  SUBCASE("vertical domino matches the horizontal one") {
    auto k = tile_complexity_oracle(box_shape(1, 2), 1, 4, 4);
    REQUIRE(k);
    CHECK(*k == 2);
  }

  SUBCASE("witness consistency: a hand-built two-type line does the job") {
    TileType t0 = make_tile("", "", "", "x");
    TileType t1 = make_tile("", "x", "", "");
    Tas line = Tas::make({t0, t1}, {"t0", "t1"}, Assembly::single({0, 0}, t0),
                         StrengthFunction({{"x", 1}}), 1);
    CHECK(strictly_self_assembles(line, two).outcome == Verdict::yes);
    CHECK(is_directed(line, {}) == Verdict::yes);
  }

  SUBCASE("minimum over temperatures") {
    auto k = tile_complexity_up_to(two, 2, 4, 4);
    REQUIRE(k);
    CHECK(*k == 2);
    auto k3 = tile_complexity_up_to(three, 2, 4, 4);
    REQUIRE(k3);
    CHECK(*k3 == 3);
  }

  SUBCASE("oversized inputs are refused, not guessed") {
    CHECK_THROWS_AS(tile_complexity_oracle(box_shape(7, 1), 1, 4, 4),
                    ValidationError);
    CHECK_THROWS_AS(tile_complexity_oracle(two, 1, 5, 4), ValidationError);
    CHECK_THROWS_AS(tile_complexity_oracle(two, 1, 4, 5), ValidationError);
    CHECK_THROWS_AS(tile_complexity_oracle(two, 0, 4, 4), ValidationError);
    CHECK_THROWS_AS(tile_complexity_oracle(Shape{{0, 0}, {2, 0}}, 1, 4, 4),
                    ValidationError);
    CHECK_THROWS_AS(tile_complexity_oracle(Shape{}, 1, 4, 4), ValidationError);
  }
}
