#include "engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace tastp {

namespace {

// assemblies as tile-index maps while searching; cheaper to copy and
// compare than Assembly, and the map ordering doubles as a canonical key
using State = std::map<Position, uint16_t>;

uint32_t strength_at(const Tas& tas, const State& a, Position p, uint16_t ti) {
  uint32_t sum = 0;
  for (Dir d : kDirs) {
    auto it = a.find(neighbor(p, d));
    if (it == a.end()) continue;
    const std::string& mine = tas.tile_types[ti].at(d);
    if (mine == kNullLabel) continue;
    if (mine == tas.tile_types[it->second].at(opposite(d)))
      sum += tas.g.strength(mine);
  }
  return sum;
}

struct RawEvent {
  Position p;
  uint16_t ti;
  uint32_t strength;
};

std::vector<RawEvent> raw_frontier(const Tas& tas, const State& a) {
  std::set<Position> spots;
  for (const auto& [p, ti] : a)
    for (Dir d : kDirs) {
      Position q = neighbor(p, d);
      if (!a.count(q)) spots.insert(q);
    }
  std::vector<RawEvent> out;
  for (Position p : spots)
    for (uint16_t ti = 0; ti < tas.tile_types.size(); ti++) {
      uint32_t s = strength_at(tas, a, p, ti);
      if (s >= tas.tau) out.push_back({p, ti, s});
    }
  return out;  // spots iterate sorted, tiles by index: reproducible order
}

State seed_state(const Tas& tas) {
  Position p = *tas.seed.domain().begin();
  return {{p, uint16_t(tas.index_of(*tas.seed.tile_at(p)))}};
}

// face labels interned to ints once per run, so evaluating a candidate tile
// costs four int compares instead of string compares and strength lookups
struct FaceTable {
  std::vector<std::array<int32_t, 4>> lab;  // -1 = null label
  std::vector<std::array<uint32_t, 4>> str;
};

FaceTable make_face_table(const Tas& tas) {
  FaceTable ft;
  std::map<std::string, int32_t> ids;
  ft.lab.resize(tas.tile_types.size());
  ft.str.resize(tas.tile_types.size());
  for (size_t t = 0; t < tas.tile_types.size(); t++)
    for (Dir d : kDirs) {
      const std::string& l = tas.tile_types[t].at(d);
      if (l == kNullLabel) {
        ft.lab[t][int(d)] = -1;
        ft.str[t][int(d)] = 0;
      } else {
        auto [it, fresh] = ids.emplace(l, int32_t(ids.size()));
        ft.lab[t][int(d)] = it->second;
        ft.str[t][int(d)] = tas.g.strength(l);
      }
    }
  return ft;
}

// the labels the occupied neighbors of one empty position present to it,
// looked up once and reused across every candidate tile type
struct NeighborCtx {
  std::array<int32_t, 4> lab{-1, -1, -1, -1};
  std::array<uint32_t, 4> str{};
};

NeighborCtx context_at(const FaceTable& ft, const State& a, Position p) {
  NeighborCtx c;
  for (Dir d : kDirs) {
    auto it = a.find(neighbor(p, d));
    if (it == a.end()) continue;
    c.lab[int(d)] = ft.lab[it->second][int(opposite(d))];
    c.str[int(d)] = ft.str[it->second][int(opposite(d))];
  }
  return c;
}

uint32_t fast_strength(const FaceTable& ft, const NeighborCtx& c, uint16_t ti) {
  uint32_t sum = 0;
  for (int d = 0; d < 4; d++) {
    int32_t mine = ft.lab[ti][d];
    if (mine >= 0 && mine == c.lab[d]) sum += c.str[d];
  }
  return sum;
}

Assembly to_assembly(const Tas& tas, const State& a) {
  std::map<Position, TileType> placement;
  for (const auto& [p, ti] : a) placement.emplace(p, tas.tile_types[ti]);
  return Assembly::of(std::move(placement));
}

// grow by attaching every frontier event of every round at once. valid
// because attachments at distinct positions never disable each other and
// each intermediate state is producible tile by tile.
struct UnionRun {
  enum class Status { done, conflict, escaped, exceeded } status;
  State a;
  RawEvent escape{};  // set when status == escaped
};

UnionRun union_growth(const Tas& tas, const std::optional<Shape>& keep_inside,
                      size_t max_size) {
  UnionRun run{UnionRun::Status::done, seed_state(tas)};
  FaceTable ft = make_face_table(tas);
  // strengths at an empty position only grow as its neighbors fill, so a
  // round needs to re-check just the positions next to tiles placed in the
  // previous round; everything else evaluated the same way last time
  std::set<Position> pending;
  for (Dir d : kDirs) pending.insert(neighbor(run.a.begin()->first, d));
  while (!pending.empty()) {
    std::vector<RawEvent> events;
    for (Position p : pending) {
      NeighborCtx c = context_at(ft, run.a, p);
      for (uint16_t ti = 0; ti < tas.tile_types.size(); ti++) {
        uint32_t s = fast_strength(ft, c, ti);
        if (s >= tas.tau) events.push_back({p, ti, s});
      }
    }
    for (size_t i = 0; i < events.size(); i++) {
      if (keep_inside && !keep_inside->count(events[i].p)) {
        run.status = UnionRun::Status::escaped;
        run.escape = events[i];
        return run;
      }
      if (i + 1 < events.size() && events[i + 1].p == events[i].p) {
        run.status = UnionRun::Status::conflict;
        return run;
      }
    }
    if (run.a.size() + events.size() > max_size) {
      run.status = UnionRun::Status::exceeded;
      return run;
    }
    for (const RawEvent& e : events) run.a.emplace(e.p, e.ti);
    pending.clear();
    for (const RawEvent& e : events)
      for (Dir d : kDirs) {
        Position q = neighbor(e.p, d);
        if (!run.a.count(q)) pending.insert(q);
      }
  }
  return run;
}

// after a clean union run: no other tile type may be attachable at any
// grown position even with the complete final neighborhood present. then
// every producible assembly is a sub-assembly of the union result, and
// filling its first missing position (in union order) is always possible,
// so the union result is the one and only terminal assembly.
bool unique_under_context(const Tas& tas, const State& final_state,
                          Position seed_pos) {
  FaceTable ft = make_face_table(tas);
  for (const auto& [p, ti] : final_state) {
    if (p == seed_pos) continue;  // never empty in any producible assembly
    NeighborCtx c = context_at(ft, final_state, p);
    for (uint16_t tj = 0; tj < tas.tile_types.size(); tj++) {
      if (tj == ti) continue;
      if (fast_strength(ft, c, tj) >= tas.tau) return false;
    }
  }
  return true;
}

void check_bounds(const SimulationBounds& bounds) {
  if (bounds.max_assemblies < 1 || bounds.max_size < 1)
    throw ValidationError("simulation limits must be strictly positive");
  if (bounds.region && bounds.region->empty())
    throw ValidationError("bounding region must be nonempty when given");
}

}  // namespace

std::vector<AttachmentEvent> frontier(const Tas& tas, const Assembly& a) {
  State st;
  for (const auto& [p, t] : a.placement())
    st.emplace(p, uint16_t(tas.index_of(t)));
  std::vector<AttachmentEvent> out;
  for (const RawEvent& e : raw_frontier(tas, st))
    out.push_back({e.p, tas.tile_types[e.ti], e.strength});
  return out;
}

Assembly step(const Tas& tas, const Assembly& a, const AttachmentEvent& e) {
  size_t ti = tas.index_of(e.tile);  // throws on unlisted tile
  if (a.tile_at(e.position))
    throw ValidationError("attachment position already occupied");
  State st;
  for (const auto& [p, t] : a.placement())
    st.emplace(p, uint16_t(tas.index_of(t)));
  bool adjacent = false;
  for (Dir d : kDirs)
    if (st.count(neighbor(e.position, d))) adjacent = true;
  if (!adjacent)
    throw ValidationError("attachment position not adjacent to the assembly");
  uint32_t s = strength_at(tas, st, e.position, uint16_t(ti));
  if (s < tas.tau || s != e.strength)
    throw ValidationError("event is not in the frontier");
  auto placement = a.placement();
  placement.emplace(e.position, e.tile);
  return Assembly::of(std::move(placement));
}

TerminalReport terminal_assemblies(const Tas& tas, const SimulationBounds& bounds) {
  check_bounds(bounds);
  TerminalReport rep;
  State s0 = seed_state(tas);
  if (bounds.region && !bounds.region->count(s0.begin()->first)) {
    rep.exceeded = true;
    return rep;
  }
  std::set<State> seen{s0};
  std::deque<State> todo{s0};
  while (!todo.empty()) {
    State cur = std::move(todo.front());
    todo.pop_front();
    rep.explored++;
    auto events = raw_frontier(tas, cur);
    if (events.empty()) {
      rep.terminals.push_back(to_assembly(tas, cur));
      continue;
    }
    for (const RawEvent& e : events) {
      if (bounds.region && !bounds.region->count(e.p)) {
        rep.exceeded = true;
        return rep;
      }
      if (cur.size() + 1 > bounds.max_size) {
        rep.exceeded = true;
        return rep;
      }
      State nxt = cur;
      nxt.emplace(e.p, e.ti);
      if (!seen.insert(nxt).second) continue;
      if (seen.size() > bounds.max_assemblies) {
        rep.exceeded = true;
        return rep;
      }
      todo.push_back(std::move(nxt));
    }
  }
  std::sort(rep.terminals.begin(), rep.terminals.end(),
            [](const Assembly& x, const Assembly& y) {
              return x.placement() < y.placement();
            });
  return rep;
}

Verdict is_directed(const Tas& tas, const SimulationBounds& bounds) {
  check_bounds(bounds);
  UnionRun run = union_growth(tas, bounds.region, bounds.max_size);
  switch (run.status) {
    case UnionRun::Status::conflict:
      // two tile types attach at one empty position of the same producible
      // assembly; the two extensions can never rejoin
      return Verdict::no;
    case UnionRun::Status::escaped:
    case UnionRun::Status::exceeded:
      return Verdict::resources_exceeded;
    case UnionRun::Status::done:
      if (unique_under_context(tas, run.a, seed_state(tas).begin()->first))
        return Verdict::yes;
      break;  // inconclusive, enumerate
  }
  TerminalReport rep = terminal_assemblies(tas, bounds);
  if (rep.exceeded) return Verdict::resources_exceeded;
  return rep.terminals.size() == 1 ? Verdict::yes : Verdict::no;
}

StrictAssemblyVerdict strictly_self_assembles(const Tas& tas, const Shape& s,
                                              const SimulationBounds& bounds) {
  if (s.empty() || !is_connected(s))
    throw ValidationError("target shape must be nonempty and connected");
  check_bounds(bounds);
  StrictAssemblyVerdict v;
  State s0 = seed_state(tas);
  if (!s.count(s0.begin()->first)) {
    v.outcome = Verdict::no;  // the seed itself already sits outside
    v.witness = to_assembly(tas, s0);
    return v;
  }

  UnionRun run = union_growth(tas, s, bounds.max_size);
  if (run.status == UnionRun::Status::escaped) {
    State esc = run.a;
    esc.emplace(run.escape.p, run.escape.ti);
    v.outcome = Verdict::no;
    v.witness = to_assembly(tas, esc);
    return v;
  }
  if (run.status == UnionRun::Status::done) {
    Shape grown;
    for (const auto& [p, ti] : run.a) grown.insert(p);
    if (grown != s) {
      v.outcome = Verdict::no;  // unique-by-construction stalled terminal
      v.witness = to_assembly(tas, run.a);
      return v;
    }
    if (unique_under_context(tas, run.a, s0.begin()->first)) {
      v.outcome = Verdict::yes;
      return v;
    }
  }
  // exceeded cannot happen confined to s under the default limits, and a
  // conflict or an ambiguous context falls through to full enumeration

  std::set<State> seen{s0};
  std::deque<State> todo{s0};
  while (!todo.empty()) {
    State cur = std::move(todo.front());
    todo.pop_front();
    auto events = raw_frontier(tas, cur);
    if (events.empty()) {
      Shape grown;
      for (const auto& [p, ti] : cur) grown.insert(p);
      if (grown != s) {
        v.outcome = Verdict::no;
        v.witness = to_assembly(tas, cur);
        return v;
      }
      continue;
    }
    for (const RawEvent& e : events) {
      if (!s.count(e.p)) {
        State esc = cur;
        esc.emplace(e.p, e.ti);
        v.outcome = Verdict::no;
        v.witness = to_assembly(tas, esc);
        return v;
      }
      State nxt = cur;
      nxt.emplace(e.p, e.ti);
      if (!seen.insert(nxt).second) continue;
      if (seen.size() > bounds.max_assemblies) {
        v.outcome = Verdict::resources_exceeded;
        return v;
      }
      todo.push_back(std::move(nxt));
    }
  }
  v.outcome = Verdict::yes;
  return v;
}

namespace {

// packed micro-simulator for the tile complexity search. cells are indexed
// into the shape, states pack one tile-or-empty digit per cell, and the
// halo positions around the shape are where escapes would land.
struct MicroShape {
  std::vector<Position> cells;
  // per cell, per direction: cell index or -1 when off the shape
  std::vector<std::array<int, 4>> adj;
  // positions outside touching the shape: list of (cell, direction-from-
  // halo-position-to-nothing) pairs per halo spot, as cell+dir into it
  std::vector<std::vector<std::pair<int, Dir>>> halo;  // neighbors per spot
};

MicroShape index_shape(const Shape& s) {
  MicroShape ms;
  ms.cells.assign(s.begin(), s.end());
  std::map<Position, int> idx;
  for (int i = 0; i < (int)ms.cells.size(); i++) idx[ms.cells[i]] = i;
  std::map<Position, std::vector<std::pair<int, Dir>>> halo;
  for (int i = 0; i < (int)ms.cells.size(); i++) {
    std::array<int, 4> row{-1, -1, -1, -1};
    for (Dir d : kDirs) {
      Position q = neighbor(ms.cells[i], d);
      auto it = idx.find(q);
      if (it != idx.end())
        row[int(d)] = it->second;
      else
        halo[q].push_back({i, opposite(d)});  // cell i sits at side d of q
    }
    ms.adj.push_back(row);
  }
  for (auto& [q, tones] : halo) ms.halo.push_back(std::move(tones));
  return ms;
}

struct MicroTas {
  int k = 0;                                  // tile type count
  std::array<std::array<uint8_t, 4>, 4> lbl;  // [tile][dir] -> 0 = null
  std::array<uint32_t, 5> str{};              // [label]; str[0] unused
  uint32_t tau = 1;
};

uint32_t micro_strength(const MicroTas& mt, const MicroShape& ms,
                        uint32_t state, int cell, int ti) {
  uint32_t sum = 0;
  for (Dir d : kDirs) {
    int nb = ms.adj[cell][int(d)];
    if (nb < 0) continue;
    int occ = (state >> (3 * nb)) & 7;
    if (!occ) continue;
    uint8_t a = mt.lbl[ti][int(d)];
    if (a && a == mt.lbl[occ - 1][int(opposite(d))]) sum += mt.str[a];
  }
  return sum;
}

// true iff this TAS strictly self-assembles the shape and is directed:
// no escape, exactly one terminal, and that terminal covers every cell
bool micro_ok(const MicroTas& mt, const MicroShape& ms, int seed_cell,
              int seed_ti) {
  int n = int(ms.cells.size());
  uint32_t start = uint32_t(seed_ti + 1) << (3 * seed_cell);
  std::unordered_set<uint32_t> seen{start};
  std::vector<uint32_t> todo{start};
  int terminals = 0;
  uint32_t terminal_state = 0;
  while (!todo.empty()) {
    uint32_t cur = todo.back();
    todo.pop_back();
    // escapes: any tile attachable at a halo spot kills strictness
    for (const auto& spot : ms.halo) {
      for (int ti = 0; ti < mt.k; ti++) {
        uint32_t sum = 0;
        for (auto [cell, d] : spot) {
          int occ = (cur >> (3 * cell)) & 7;
          if (!occ) continue;
          uint8_t a = mt.lbl[ti][int(d)];
          if (a && a == mt.lbl[occ - 1][int(opposite(d))]) sum += mt.str[a];
        }
        if (sum >= mt.tau) return false;
      }
    }
    bool any = false;
    for (int cell = 0; cell < n; cell++) {
      if ((cur >> (3 * cell)) & 7) continue;
      bool touches = false;
      for (Dir d : kDirs) {
        int nb = ms.adj[cell][int(d)];
        if (nb >= 0 && ((cur >> (3 * nb)) & 7)) touches = true;
      }
      if (!touches) continue;
      for (int ti = 0; ti < mt.k; ti++) {
        if (micro_strength(mt, ms, cur, cell, ti) < mt.tau) continue;
        any = true;
        uint32_t nxt = cur | (uint32_t(ti + 1) << (3 * cell));
        if (seen.insert(nxt).second) todo.push_back(nxt);
      }
    }
    if (!any) {
      // terminal: must cover the whole shape, and be the only one
      for (int cell = 0; cell < n; cell++)
        if (!((cur >> (3 * cell)) & 7)) return false;
      if (terminals++ && cur != terminal_state) return false;
      terminal_state = cur;
    }
  }
  return terminals >= 1;
}

bool oracle_level(const MicroShape& ms, uint32_t tau, int k, int max_label) {
  int slots = 4 * k;
  std::vector<uint8_t> lab(slots, 0);
  MicroTas mt;
  mt.k = k;
  mt.tau = tau;

  // recursive enumeration kept iterative-friendly via plain recursion
  struct Rec {
    const MicroShape& ms;
    int k, max_label, slots;
    uint32_t tau;
    MicroTas& mt;
    std::vector<uint8_t>& lab;

    bool strengths_then_sim(int used) {
      // every used label gets a strength in [1, tau]; zero-strength labels
      // behave exactly like null glue, which an earlier labeling covers
      std::vector<uint32_t> val(used + 1, 1);
      for (;;) {
        for (int l = 1; l <= used; l++) mt.str[l] = val[l];
        bool all_attach = true;
        for (int t = 0; t < k && all_attach; t++) {
          uint32_t total = 0;
          for (int d = 0; d < 4; d++) total += mt.str[mt.lbl[t][d]];
          if (total < tau) all_attach = false;  // unattachable type
        }
        if (all_attach) {
          for (int seed_ti = 0; seed_ti < k; seed_ti++)
            for (int cell = 0; cell < (int)ms.cells.size(); cell++)
              if (micro_ok(mt, ms, cell, seed_ti)) return true;
        }
        int l = used;
        while (l >= 1 && val[l] == tau) val[l--] = 1;
        if (l < 1) return false;
        val[l]++;
      }
    }

    bool place(int slot, int used) {
      if (slot == slots) {
        for (int t = 0; t < k; t++)
          for (int d = 0; d < 4; d++) mt.lbl[t][d] = lab[4 * t + d];
        // identical tile types collapse to a smaller count, skip
        for (int a = 0; a < k; a++)
          for (int b = a + 1; b < k; b++)
            if (mt.lbl[a] == mt.lbl[b]) return false;
        return strengths_then_sim(used);
      }
      for (int l = 0; l <= std::min(used + 1, max_label); l++) {
        lab[slot] = uint8_t(l);
        if (place(slot + 1, std::max(used, l))) return true;
      }
      return false;
    }
  } rec{ms, k, max_label, slots, tau, mt, lab};
  return rec.place(0, 0);
}

}  // namespace

std::optional<uint32_t> tile_complexity_oracle(const Shape& s, uint32_t tau,
                                               uint32_t max_types,
                                               uint32_t max_labels) {
  if (s.empty() || !is_connected(s))
    throw ValidationError("shape must be nonempty and connected");
  if (s.size() > 6)
    throw ValidationError("tile complexity oracle handles at most 6 cells");
  if (max_types < 1 || max_types > 4)
    throw ValidationError("tile complexity oracle handles at most 4 tile types");
  if (max_labels < 1 || max_labels > 4)
    throw ValidationError("tile complexity oracle handles 1 to 4 glue labels");
  if (tau < 1) throw ValidationError("tau must be positive");

  MicroShape ms = index_shape(s);
  for (uint32_t k = 1; k <= max_types; k++) {
    int labels = int(std::min(max_labels, 4 * k));
    if (oracle_level(ms, tau, int(k), labels)) return k;
  }
  return std::nullopt;
}

std::optional<uint32_t> tile_complexity_up_to(const Shape& s, uint32_t tau,
                                              uint32_t max_types,
                                              uint32_t max_labels) {
  std::optional<uint32_t> best;
  for (uint32_t i = 1; i <= tau; i++) {
    auto d = tile_complexity_oracle(s, i, max_types, max_labels);
    if (d && (!best || *d < *best)) best = d;
  }
  return best;
}

}  // namespace tastp
