#pragma once
// turns a quadripartite inequality system into a target shape made of
// standing trees on a shared baseline, plus a tile system that strictly
// self-assembles it when handed a strict positive solution.
//
// each variable becomes a tree whose trunk carries a bit pattern and whose
// cooperation tip approaches an inequality's center cell from one of the
// four sides (the side is the variable's partition class). a >=-row bundles
// its pillar trees around one center; a <-row additionally gets an auxiliary
// tree and is laid out as a row of gadgets: the full bundle (center filled)
// and one bundle per omitted tree (center left empty, so nothing may ever
// attach there).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atam.hpp"
#include "tp.hpp"

namespace tastp {

struct TreeSpec {
  std::string id;
  Dir tree_type = Dir::N;  // side from which the tip approaches the center
  std::string bits;        // '0'/'1' pattern, unique across one plan
  uint32_t height = 8;     // trunk rise h above the baseline
};

struct ComponentSpec {
  TauInequality inequality;
  // one pillar per term, tree types pairwise distinct
  std::vector<TreeSpec> pillar_specs;
  // present exactly for <-rows: the blocker tree of a leftover type
  std::optional<TreeSpec> aux_spec;
};

struct Mount {
  std::string what;  // item tag, e.g. "x#1" or "row2#2"
  Position anchor;   // absolute position of the item's reference cell
};

struct ShapePlan {
  uint32_t h = 0;
  uint32_t bit_len = 0;
  std::vector<TreeSpec> tree_specs;  // variable trees, then auxiliaries
  std::vector<ComponentSpec> component_specs;  // one per row, system order
  int scaffold_len = 0;              // baseline cells at y = 0
  std::vector<Mount> mounts;
  size_t aux_count = 0;              // auxiliary trees (one per <-row)
  // mounted tree instances; each brings one post cell beside its base
  size_t instance_count = 0;
  // the additive constant: scaffold cells + posts + per-tree cells beyond h
  // + one center per row
  size_t overhead = 0;
};

struct WitnessTas {
  Tas tas;
  // tile types per tree id, plus "scaffold", "posts" and "centers"
  std::map<std::string, size_t> type_count_breakdown;
};

// cells of one standing tree, relative to its port: the empty cell the tip
// faces sits at (0,0) and becomes the center when trees are bundled
Shape build_variable_tree(const TreeSpec& spec);

// pillar trees bundled around a filled center cell
Shape build_geq_component(const ComponentSpec& spec);

// full gadget (center filled) followed by one center-less gadget per
// omitted tree, ordered by the omitted tree's id
Shape build_less_component(const ComponentSpec& spec);

// smallest height the layout accepts for this system's bit length
uint32_t min_height(const TauInequalitySystem& sys);
// default height used by the command line tools
uint32_t default_height(const TauInequalitySystem& sys);

// two copies of every variable tree, auxiliary tree and row component
// mounted on one baseline; requires a quadripartite system
std::pair<Shape, ShapePlan> build_shape(const TauInequalitySystem& sys,
                                        const QuadPartition& partition,
                                        uint32_t h);

// tile system growing exactly the planned shape from a west-end seed; the
// solution must be a strict positive witness of the system at tau
WitnessTas build_witness_tas(const TauInequalitySystem& sys,
                             const QuadPartition& partition,
                             const Assignment& solution, uint32_t tau,
                             uint32_t h);

enum class RenderStyle : uint8_t { ascii, svg };
std::string render_shape(const Shape& s, RenderStyle style);

}  // namespace tastp
