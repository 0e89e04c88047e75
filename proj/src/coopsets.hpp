#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atam.hpp"
#include "tp.hpp"

namespace tastp {

// a subset of the four sides packed into the low 4 bits, bit (1 << int(Dir))
using DirSet = uint8_t;
inline constexpr DirSet kFullDirSet = 0xF;

inline constexpr DirSet dir_bit(Dir d) { return DirSet(1u << int(d)); }
inline constexpr bool dirset_has(DirSet s, Dir d) { return (s >> int(d)) & 1; }

// "NWSE" order; the empty set prints as "-"
std::string dirset_name(DirSet s);
std::optional<DirSet> dirset_parse(const std::string& text);

// which side subsets provide enough glue strength for a tile to attach.
// stored as a 16-bit membership mask indexed by the DirSet value. a
// meaningful family is upward closed (more neighbors never hurt) and
// contains the full set; families that fail has_full describe tile types
// that can never attach, which callers may reject.
struct CooperationSet {
  uint16_t family = 0;

  bool contains(DirSet s) const { return (family >> s) & 1; }
  void add(DirSet s) { family = uint16_t(family | (1u << s)); }
  bool has_full() const { return contains(kFullDirSet); }
  bool upward_closed() const;
  // throws ValidationError on an empty-set member, a missing full set, or
  // a closure violation
  void validate() const;

  // members with no proper subset in the family
  std::vector<DirSet> minimal_members() const;
  // non-members with no proper superset outside the family
  std::vector<DirSet> maximal_nonmembers() const;

  bool operator==(const CooperationSet&) const = default;
};

// smallest upward-closed family containing the given sets plus the full set
CooperationSet coop_upward(const std::vector<DirSet>& seeds);

// the direction subsets whose summed strengths reach tau for this tile.
// always upward closed; has_full() fails exactly when the tile can never
// attach, which is left for the caller to reject
CooperationSet cooperation_set(const TileType& t, const StrengthFunction& g,
                               uint32_t tau);

// a TAS with the strength function abstracted away: only the cooperation
// behavior of each tile type is kept
struct StrengthFreeTas {
  std::vector<TileType> tile_types;
  std::vector<CooperationSet> coop;  // parallel to tile_types
  Assembly seed;

  static StrengthFreeTas make(std::vector<TileType> tile_types,
                              std::vector<CooperationSet> coop, Assembly seed);
  size_t index_of(const TileType& t) const;  // throws if absent
};

// forget the strengths of a concrete TAS, keeping its cooperation behavior
StrengthFreeTas strength_free(const Tas& tas);

// same tile types, same seed, and the same cooperation set for every tile
bool locally_equivalent(const Tas& a, const Tas& b);

// one variable per non-null glue label; per tile, each minimal cooperating
// set contributes a >=tau row and each maximal non-cooperating set a <tau
// row (null labels contribute nothing and drop out; a cooperating set made
// of nulls alone can never bind, so it turns into an unsatisfiable pair)
TauInequalitySystem sftas_to_inequalities(const StrengthFreeTas& sf);

// a strength function realizing the requested cooperation behavior at this
// temperature, if any; the result is re-verified tile by tile before return
std::optional<StrengthFunction> find_strength(const StrengthFreeTas& sf,
                                              uint32_t tau);

// smallest temperature in [1, tau_max] admitting a strength function, with
// a witness; absent means none up to tau_max, not none at all
std::optional<std::pair<StrengthFunction, uint32_t>> find_opt_strength(
    const StrengthFreeTas& sf, uint32_t tau_max = 64);

}  // namespace tastp
