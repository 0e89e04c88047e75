#pragma once

// The reduction chain from monotone one-in-three SAT down to glue-strength
// search: clause rewriting into a four-part instance, encoding clauses as
// threshold rows at a chosen temperature, the temperature-minimization
// variant, tile encodings with cooperation sets, and back-mapping of
// threshold solutions to truth assignments. A complete backtracking solver
// doubles as the ground truth for all of it.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coopsets.hpp"
#include "tp.hpp"

namespace tastp {

struct Literal {
  std::string var;
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

inline Literal pos(std::string v) { return {std::move(v), false}; }
inline Literal neg(std::string v) { return {std::move(v), true}; }

// three-literal clauses asking for exactly one true literal each
struct OneInThreeInstance {
  std::vector<std::string> vars;
  std::vector<std::array<Literal, 3>> clauses;
  // present on four-part instances: no clause may touch one part twice
  std::optional<QuadPartition> partition;

  // validates: unique nonempty variable names, literals over declared
  // variables, the three variables of each clause pairwise distinct, and
  // any partition covering the variables exactly with clauses hitting
  // each part at most once
  static OneInThreeInstance make(std::vector<std::string> vars,
                                 std::vector<std::array<Literal, 3>> clauses,
                                 std::optional<QuadPartition> partition = {});

  bool monotone() const;  // no negated literal anywhere
};

using BoolAssignment = std::map<std::string, bool>;

// every clause has exactly one true literal; the map must cover every
// variable the clauses mention
bool satisfies_one_in_three(const OneInThreeInstance& inst,
                            const BoolAssignment& a);

// complete backtracking search with exactly-one propagation; a returned
// assignment is total over the declared variables
std::optional<BoolAssignment> brute_force_1in3(const OneInThreeInstance& inst);

// rewrite a monotone instance into a four-part one. every source clause
// becomes 28 clauses over 36 fresh helper variables, all source variables
// land in the first part, and one-in-three satisfiability is preserved.
OneInThreeInstance monotone_to_quadripartite(const OneInThreeInstance& inst);

// encode a four-part instance as threshold rows at temperature tau >= 4:
// a positivity pair per variable and four rows per clause (sum of the
// three >= tau, each pair <). for tau > 4 the clause rows carry a pinned
// constant with value tau-4, built from lower-bound blocks; one such block
// is grown per part that hosts the constant, so the system stays four-part
TauInequalitySystem quad1in3_to_tp(const OneInThreeInstance& inst, uint32_t tau);

// the temperature-minimization variant: positivity pairs, clause rows
// without the constant term, and a capped pair x1 + x2 < tau over a
// 1-bounded x1 and a 2-bounded x2. the least feasible temperature is 4
// exactly when the instance is satisfiable (never below 4)
TauInequalitySystem tp_min_variant(const OneInThreeInstance& inst);

// encode a tp_min_variant-shaped system as tile types with cooperation
// sets: one tile per clause block, per two-term >= row, and per leftover
// two-term < row, with a shared filler label on blank sides. systems
// outside that row shape are rejected
StrengthFreeTas tp_to_sftas(const TauInequalitySystem& sys);

// read a truth assignment off a threshold solution: value 2 means true,
// value 1 false, anything else on an instance variable is rejected. the
// result is checked against the instance before being returned
BoolAssignment tp_solution_to_assignment(const Assignment& sol,
                                         const OneInThreeInstance& inst);

}  // namespace tastp
