#pragma once

// Core tile assembly model: tiles, glues, strengths, assemblies, shapes,
// binding graphs, tau-stability.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tastp {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Dir : uint8_t { N = 0, W = 1, S = 2, E = 3 };

inline constexpr std::array<Dir, 4> kDirs{Dir::N, Dir::W, Dir::S, Dir::E};

Dir opposite(Dir d);
char dir_char(Dir d);
Dir dir_from_char(char c);  // throws ValidationError on anything but NWSE

struct Position {
  int x = 0;
  int y = 0;
  auto operator<=>(const Position&) const = default;
};

Position neighbor(Position p, Dir d);

// the reserved blank side label; never matches, strength pinned to 0
inline const std::string kNullLabel{};

struct TileType {
  // side labels in N, W, S, E order
  std::array<std::string, 4> side{};
  const std::string& at(Dir d) const { return side[static_cast<size_t>(d)]; }
  std::string& at(Dir d) { return side[static_cast<size_t>(d)]; }
  auto operator<=>(const TileType&) const = default;
};

TileType make_tile(std::string n, std::string w, std::string s, std::string e);

class StrengthFunction {
 public:
  StrengthFunction() = default;
  // rejects a nonzero entry for the null label
  explicit StrengthFunction(std::map<std::string, uint32_t> entries);

  // null label is always 0; any other label must have an entry
  uint32_t strength(const std::string& label) const;
  bool has(const std::string& label) const;
  const std::map<std::string, uint32_t>& entries() const { return entries_; }

  bool operator==(const StrengthFunction&) const = default;

 private:
  std::map<std::string, uint32_t> entries_;
};

using Shape = std::set<Position>;

bool is_connected(const Shape& points);  // empty set is not connected

// translate so the lexicographically least point sits at the origin
Shape normalize_shape(const Shape& points);

class Assembly {
 public:
  // default-constructed value is an empty placeholder; every real assembly
  // comes out of of()/single() and is nonempty with a connected domain
  Assembly() = default;

  // validates nonempty + connected domain
  static Assembly of(std::map<Position, TileType> placement);
  static Assembly single(Position p, TileType t);

  const std::map<Position, TileType>& placement() const { return placement_; }
  const TileType* tile_at(Position p) const;
  Shape domain() const;
  size_t size() const { return placement_.size(); }

  bool operator==(const Assembly&) const = default;

 private:
  std::map<Position, TileType> placement_;
};

struct BindingEdge {
  Position a;
  Position b;
  std::string label;
  uint32_t weight = 0;
};

struct BindingGraph {
  std::vector<Position> nodes;
  std::vector<BindingEdge> edges;  // each undirected edge stored once, a < b
};

// edge between adjacent positions iff abutting labels match and g > 0
BindingGraph binding_graph(const Assembly& a, const StrengthFunction& g);

// exact global min cut (Stoer-Wagner); graphs with < 2 nodes have no cut
// and the result is unspecified there, callers guard
uint64_t min_cut_weight(const BindingGraph& graph);

// every cut of the binding graph weighs at least tau; single tiles always pass
bool is_tau_stable(const Assembly& a, const StrengthFunction& g, uint32_t tau);

// pre: p free and adjacent to a; sum of g over sides of t matching the
// facing neighbor labels
uint32_t attachment_strength(const Assembly& a, Position p, const TileType& t,
                             const StrengthFunction& g);

struct Tas {
  std::vector<TileType> tile_types;
  std::vector<std::string> names;  // parallel to tile_types, unique, nonempty
  Assembly seed;
  StrengthFunction g;
  uint32_t tau = 1;

  // validates: tau >= 1, distinct tile types, names well formed, g total over
  // all labels used, seed a single tile of a listed type and tau-stable,
  // every tile's four-side strength total reaches tau (else unattachable)
  static Tas make(std::vector<TileType> tile_types, std::vector<std::string> names,
                  Assembly seed, StrengthFunction g, uint32_t tau);

  size_t index_of(const TileType& t) const;  // throws if absent
  const std::string& name_of(const TileType& t) const;
};

}  // namespace tastp
