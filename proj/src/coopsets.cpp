#include "coopsets.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tastp {

std::string dirset_name(DirSet s) {
  if (s == 0) return "-";
  std::string out;
  for (Dir d : kDirs)
    if (dirset_has(s, d)) out.push_back(dir_char(d));
  return out;
}

std::optional<DirSet> dirset_parse(const std::string& text) {
  if (text == "-") return DirSet(0);
  DirSet s = 0;
  for (char c : text) {
    Dir d;
    switch (c) {
      case 'N': d = Dir::N; break;
      case 'W': d = Dir::W; break;
      case 'S': d = Dir::S; break;
      case 'E': d = Dir::E; break;
      default: return std::nullopt;
    }
    if (dirset_has(s, d)) return std::nullopt;
    s |= dir_bit(d);
  }
  if (s == 0) return std::nullopt;
  return s;
}

bool CooperationSet::upward_closed() const {
  for (DirSet s = 0; s < 16; s++) {
    if (!contains(s)) continue;
    for (Dir d : kDirs)
      if (!dirset_has(s, d) && !contains(DirSet(s | dir_bit(d)))) return false;
  }
  return true;
}

void CooperationSet::validate() const {
  if (contains(0))
    throw ValidationError("cooperation set lists the empty direction set");
  if (!has_full())
    throw ValidationError("cooperation set misses the full direction set");
  if (!upward_closed())
    throw ValidationError("cooperation set is not upward closed");
}

std::vector<DirSet> CooperationSet::minimal_members() const {
  std::vector<DirSet> out;
  for (DirSet s = 0; s < 16; s++) {
    if (!contains(s)) continue;
    bool minimal = true;
    for (Dir d : kDirs)
      if (dirset_has(s, d) && contains(DirSet(s & ~dir_bit(d)))) minimal = false;
    if (minimal) out.push_back(s);
  }
  return out;
}

std::vector<DirSet> CooperationSet::maximal_nonmembers() const {
  std::vector<DirSet> out;
  for (DirSet s = 0; s < 16; s++) {
    if (contains(s)) continue;
    bool maximal = true;
    for (Dir d : kDirs)
      if (!dirset_has(s, d) && !contains(DirSet(s | dir_bit(d)))) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

CooperationSet coop_upward(const std::vector<DirSet>& seeds) {
  CooperationSet cs;
  cs.add(kFullDirSet);
  for (DirSet s : seeds)
    for (DirSet t = 0; t < 16; t++)
      if ((t & s) == s) cs.add(t);
  return cs;
}

CooperationSet cooperation_set(const TileType& t, const StrengthFunction& g,
                               uint32_t tau) {
  if (tau < 1) throw ValidationError("tau must be positive");
  CooperationSet cs;
  for (DirSet s = 0; s < 16; s++) {
    uint64_t sum = 0;
    for (Dir d : kDirs)
      if (dirset_has(s, d)) sum += g.strength(t.at(d));
    if (sum >= tau) cs.add(s);
  }
  if (!cs.upward_closed())
    throw std::logic_error("cooperation set lost upward closure");
  return cs;
}

StrengthFreeTas StrengthFreeTas::make(std::vector<TileType> tile_types,
                                      std::vector<CooperationSet> coop,
                                      Assembly seed) {
  if (tile_types.empty())
    throw ValidationError("strength-free TAS needs at least one tile type");
  if (coop.size() != tile_types.size())
    throw ValidationError("one cooperation set per tile type required");
  for (size_t i = 0; i < tile_types.size(); i++)
    for (size_t j = i + 1; j < tile_types.size(); j++)
      if (tile_types[i] == tile_types[j])
        throw ValidationError("duplicate tile type in strength-free TAS");
  for (const CooperationSet& cs : coop) cs.validate();
  if (seed.size() != 1)
    throw ValidationError("seed must be a single tile");
  bool listed = false;
  for (const TileType& t : tile_types)
    if (t == *seed.tile_at(*seed.domain().begin())) listed = true;
  if (!listed) throw ValidationError("seed tile type is not listed");
  StrengthFreeTas sf;
  sf.tile_types = std::move(tile_types);
  sf.coop = std::move(coop);
  sf.seed = std::move(seed);
  return sf;
}

size_t StrengthFreeTas::index_of(const TileType& t) const {
  for (size_t i = 0; i < tile_types.size(); i++)
    if (tile_types[i] == t) return i;
  throw ValidationError("tile type not in strength-free TAS");
}

StrengthFreeTas strength_free(const Tas& tas) {
  std::vector<CooperationSet> coop;
  for (const TileType& t : tas.tile_types)
    coop.push_back(cooperation_set(t, tas.g, tas.tau));
  return StrengthFreeTas::make(tas.tile_types, std::move(coop), tas.seed);
}

bool locally_equivalent(const Tas& a, const Tas& b) {
  std::set<TileType> ta(a.tile_types.begin(), a.tile_types.end());
  std::set<TileType> tb(b.tile_types.begin(), b.tile_types.end());
  if (ta != tb) return false;
  if (!(a.seed == b.seed)) return false;
  for (const TileType& t : a.tile_types)
    if (!(cooperation_set(t, a.g, a.tau) == cooperation_set(t, b.g, b.tau)))
      return false;
  return true;
}

TauInequalitySystem sftas_to_inequalities(const StrengthFreeTas& sf) {
  TauInequalitySystem sys;
  std::set<std::string> known;
  for (const TileType& t : sf.tile_types)
    for (Dir d : kDirs) {
      const std::string& l = t.at(d);
      if (l != kNullLabel && known.insert(l).second) sys.add_var(l);
    }

  // a fresh variable pinned both >= tau and < tau marks the whole system
  // unsatisfiable; used when a cooperating set has no real glue at all
  auto add_contradiction = [&]() {
    std::string w = "unsat";
    while (known.count(w)) w.push_back('_');
    known.insert(w);
    sys.add_var(w);
    sys.add(Sign::GEQ_TAU, {w});
    sys.add(Sign::LT_TAU, {w});
  };

  for (size_t i = 0; i < sf.tile_types.size(); i++) {
    const TileType& t = sf.tile_types[i];
    sf.coop[i].validate();
    auto labels_of = [&](DirSet s) {
      std::vector<std::string> vars;
      for (Dir d : kDirs)
        if (dirset_has(s, d) && t.at(d) != kNullLabel) vars.push_back(t.at(d));
      return vars;
    };
    for (DirSet s : sf.coop[i].minimal_members()) {
      std::vector<std::string> vars = labels_of(s);
      if (vars.empty())
        add_contradiction();  // only null glue can never reach tau
      else
        sys.add(Sign::GEQ_TAU, vars);
    }
    for (DirSet s : sf.coop[i].maximal_nonmembers()) {
      std::vector<std::string> vars = labels_of(s);
      if (!vars.empty()) sys.add(Sign::LT_TAU, vars);
      // an all-null set sums to zero, which is below tau for free
    }
  }
  return sys;
}

std::optional<StrengthFunction> find_strength(const StrengthFreeTas& sf,
                                              uint32_t tau) {
  if (tau < 1) throw ValidationError("tau must be positive");
  auto sol = decide(sftas_to_inequalities(sf), tau);
  if (!sol) return std::nullopt;
  StrengthFunction g(std::map<std::string, uint32_t>(sol->begin(), sol->end()));
  for (size_t i = 0; i < sf.tile_types.size(); i++) {
    CooperationSet got = cooperation_set(sf.tile_types[i], g, tau);
    if (!(got == sf.coop[i]))
      throw std::logic_error(
          "strength search produced a non-equivalent strength function");
  }
  return g;
}

std::optional<std::pair<StrengthFunction, uint32_t>> find_opt_strength(
    const StrengthFreeTas& sf, uint32_t tau_max) {
  if (tau_max < 1) throw ValidationError("tau_max must be positive");
  for (uint32_t tau = 1; tau <= tau_max; tau++)
    if (auto g = find_strength(sf, tau)) return std::make_pair(std::move(*g), tau);
  return std::nullopt;
}

}  // namespace tastp
