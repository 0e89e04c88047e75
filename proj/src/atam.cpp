#include "atam.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace tastp {

Dir opposite(Dir d) {
  switch (d) {
    case Dir::N: return Dir::S;
    case Dir::W: return Dir::E;
    case Dir::S: return Dir::N;
    case Dir::E: return Dir::W;
  }
  throw std::logic_error("bad direction");
}

char dir_char(Dir d) {
  switch (d) {
    case Dir::N: return 'N';
    case Dir::W: return 'W';
    case Dir::S: return 'S';
    case Dir::E: return 'E';
  }
  throw std::logic_error("bad direction");
}

Dir dir_from_char(char c) {
  switch (c) {
    case 'N': return Dir::N;
    case 'W': return Dir::W;
    case 'S': return Dir::S;
    case 'E': return Dir::E;
  }
  throw ValidationError(std::string("not a direction: ") + c);
}

Position neighbor(Position p, Dir d) {
  switch (d) {
    case Dir::N: return {p.x, p.y + 1};
    case Dir::W: return {p.x - 1, p.y};
    case Dir::S: return {p.x, p.y - 1};
    case Dir::E: return {p.x + 1, p.y};
  }
  throw std::logic_error("bad direction");
}

TileType make_tile(std::string n, std::string w, std::string s, std::string e) {
  TileType t;
  t.side = {std::move(n), std::move(w), std::move(s), std::move(e)};
  return t;
}

StrengthFunction::StrengthFunction(std::map<std::string, uint32_t> entries)
    : entries_(std::move(entries)) {
  auto it = entries_.find(kNullLabel);
  if (it != entries_.end()) {
    if (it->second != 0)
      throw ValidationError("null label must have strength 0");
    entries_.erase(it);
  }
}

uint32_t StrengthFunction::strength(const std::string& label) const {
  if (label == kNullLabel) return 0;
  auto it = entries_.find(label);
  if (it == entries_.end())
    throw ValidationError("strength function has no entry for label '" + label + "'");
  return it->second;
}

bool StrengthFunction::has(const std::string& label) const {
  return label == kNullLabel || entries_.count(label) > 0;
}

bool is_connected(const Shape& points) {
  if (points.empty()) return false;
  std::set<Position> seen;
  std::queue<Position> work;
  work.push(*points.begin());
  seen.insert(*points.begin());
  while (!work.empty()) {
    Position p = work.front();
    work.pop();
    for (Dir d : kDirs) {
      Position q = neighbor(p, d);
      if (points.count(q) && !seen.count(q)) {
        seen.insert(q);
        work.push(q);
      }
    }
  }
  return seen.size() == points.size();
}

Shape normalize_shape(const Shape& points) {
  if (points.empty()) return {};
  Position base = *points.begin();  // set is ordered, first = least
  Shape out;
  for (Position p : points) out.insert({p.x - base.x, p.y - base.y});
  return out;
}

Assembly Assembly::of(std::map<Position, TileType> placement) {
  if (placement.empty()) throw ValidationError("assembly must be nonempty");
  Shape dom;
  for (const auto& [p, t] : placement) dom.insert(p);
  if (!is_connected(dom)) throw ValidationError("assembly domain must be connected");
  Assembly a;
  a.placement_ = std::move(placement);
  return a;
}

Assembly Assembly::single(Position p, TileType t) {
  Assembly a;
  a.placement_.emplace(p, std::move(t));
  return a;
}

const TileType* Assembly::tile_at(Position p) const {
  auto it = placement_.find(p);
  return it == placement_.end() ? nullptr : &it->second;
}

Shape Assembly::domain() const {
  Shape dom;
  for (const auto& [p, t] : placement_) dom.insert(p);
  return dom;
}

BindingGraph binding_graph(const Assembly& a, const StrengthFunction& g) {
  BindingGraph graph;
  for (const auto& [p, t] : a.placement()) graph.nodes.push_back(p);
  // scan each tile's N and E sides only so every bond is recorded once
  for (const auto& [p, t] : a.placement()) {
    for (Dir d : {Dir::N, Dir::E}) {
      Position q = neighbor(p, d);
      const TileType* u = a.tile_at(q);
      if (!u) continue;
      const std::string& mine = t.at(d);
      const std::string& theirs = u->at(opposite(d));
      if (mine == kNullLabel || mine != theirs) continue;
      uint32_t w = g.strength(mine);
      if (w == 0) continue;
      graph.edges.push_back({p, q, mine, w});
    }
  }
  return graph;
}

uint64_t min_cut_weight(const BindingGraph& graph) {
  size_t n = graph.nodes.size();
  if (n < 2) return std::numeric_limits<uint64_t>::max();
  std::map<Position, size_t> index;
  for (size_t i = 0; i < n; i++) index[graph.nodes[i]] = i;
  std::vector<std::vector<uint64_t>> w(n, std::vector<uint64_t>(n, 0));
  for (const auto& e : graph.edges) {
    size_t i = index.at(e.a), j = index.at(e.b);
    w[i][j] += e.weight;
    w[j][i] += e.weight;
  }
  // Stoer-Wagner with vertex merging
  std::vector<size_t> active(n);
  for (size_t i = 0; i < n; i++) active[i] = i;
  uint64_t best = std::numeric_limits<uint64_t>::max();
  while (active.size() > 1) {
    std::vector<uint64_t> conn(n, 0);
    std::vector<char> in_a(n, 0);
    size_t prev = 0, last = 0;
    for (size_t round = 0; round < active.size(); round++) {
      size_t pick = n;
      for (size_t v : active)
        if (!in_a[v] && (pick == n || conn[v] > conn[pick])) pick = v;
      in_a[pick] = 1;
      prev = last;
      last = pick;
      for (size_t v : active)
        if (!in_a[v]) conn[v] += w[pick][v];
    }
    best = std::min(best, conn[last]);
    // merge last into prev
    for (size_t v : active) {
      if (v == last || v == prev) continue;
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    active.erase(std::find(active.begin(), active.end(), last));
  }
  return best;
}

bool is_tau_stable(const Assembly& a, const StrengthFunction& g, uint32_t tau) {
  if (a.size() <= 1) return true;
  return min_cut_weight(binding_graph(a, g)) >= tau;
}

uint32_t attachment_strength(const Assembly& a, Position p, const TileType& t,
                             const StrengthFunction& g) {
  if (a.tile_at(p))
    throw ValidationError("attachment position already occupied");
  uint32_t total = 0;
  bool touches = false;
  for (Dir d : kDirs) {
    const TileType* u = a.tile_at(neighbor(p, d));
    if (!u) continue;
    touches = true;
    const std::string& mine = t.at(d);
    if (mine != kNullLabel && mine == u->at(opposite(d))) total += g.strength(mine);
  }
  if (!touches)
    throw ValidationError("attachment position not adjacent to the assembly");
  return total;
}

Tas Tas::make(std::vector<TileType> tile_types, std::vector<std::string> names,
              Assembly seed, StrengthFunction g, uint32_t tau) {
  if (tau < 1) throw ValidationError("temperature must be positive");
  if (tile_types.empty()) throw ValidationError("tile set must be nonempty");
  if (names.size() != tile_types.size())
    throw ValidationError("one name per tile type required");
  for (size_t i = 0; i < tile_types.size(); i++) {
    if (names[i].empty()) throw ValidationError("tile names must be nonempty");
    for (size_t j = i + 1; j < tile_types.size(); j++) {
      if (tile_types[i] == tile_types[j])
        throw ValidationError("duplicate tile type: " + names[i] + " and " + names[j]);
      if (names[i] == names[j])
        throw ValidationError("duplicate tile name: " + names[i]);
    }
  }
  for (const auto& t : tile_types) {
    uint64_t total = 0;
    for (Dir d : kDirs) {
      const std::string& l = t.at(d);
      if (l != kNullLabel && !g.has(l))
        throw ValidationError("strength function missing label '" + l + "'");
      total += g.strength(l);
    }
    if (total < tau)
      throw ValidationError("tile type can never attach: side strengths total " +
                            std::to_string(total) + " < tau");
  }
  if (seed.size() != 1)
    throw ValidationError("seed must be a single tile");
  const TileType& st = seed.placement().begin()->second;
  if (std::find(tile_types.begin(), tile_types.end(), st) == tile_types.end())
    throw ValidationError("seed tile type is not in the tile set");
  Tas sys;
  sys.tile_types = std::move(tile_types);
  sys.names = std::move(names);
  sys.seed = std::move(seed);
  sys.g = std::move(g);
  sys.tau = tau;
  return sys;
}

size_t Tas::index_of(const TileType& t) const {
  for (size_t i = 0; i < tile_types.size(); i++)
    if (tile_types[i] == t) return i;
  throw ValidationError("tile type not in the tile set");
}

const std::string& Tas::name_of(const TileType& t) const {
  return names[index_of(t)];
}

}  // namespace tastp
