#pragma once

// Threshold programming over a symbolic temperature tau: inequality systems
// with rows "sum of terms >= tau" or "sum of terms < tau" over nonnegative
// integer variables, an exact decision solver, tau minimization, the
// quadripartiteness check, and the gadget library (positivity pairs,
// power-of-two adders, lower-bound composition, min-tau system generation).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atam.hpp"

namespace tastp {

enum class Sign : uint8_t { GEQ_TAU, LT_TAU };

struct TauInequality {
  Sign sign = Sign::GEQ_TAU;
  // variable indices; a repeated index contributes with multiplicity
  std::vector<uint32_t> terms;
};

// four disjoint name sets covering the variables, in N, W, S, E order
struct QuadPartition {
  std::array<std::vector<std::string>, 4> parts;
};

struct TauInequalitySystem {
  std::vector<std::string> vars;
  std::vector<TauInequality> ineqs;
  // when set, every variable is restricted to values < tau
  bool strict_vars = false;
  std::optional<QuadPartition> partition;

  uint32_t add_var(const std::string& name);         // rejects duplicates
  uint32_t var_index(const std::string& name) const; // throws if absent
  bool has_var(const std::string& name) const;
  // rows carry 1..4 terms, every term a declared variable
  void add(Sign sign, const std::vector<std::string>& term_names);
  void add_indices(Sign sign, std::vector<uint32_t> term_indices);
};

using Assignment = std::map<std::string, uint32_t>;

// exact and complete at the given tau; search is restricted to [0, tau]^n
// which is lossless: a variable in some <-row is <= tau-1 in any solution
// (even <= (tau-1)/multiplicity), and one appearing only in >=-rows can be
// lowered to tau without breaking anything
std::optional<Assignment> decide(const TauInequalitySystem& sys, uint32_t tau);

// decide with extra per-variable upper bounds, for probing minimal values
std::optional<Assignment> decide_capped(const TauInequalitySystem& sys, uint32_t tau,
                                        const std::map<std::string, uint32_t>& caps);

// decide restricted to [1, tau]^n, for consumers that need every variable
// strictly positive (e.g. strength assignments where a zero side is
// indistinguishable from no glue at all); may fail where decide succeeds
std::optional<Assignment> decide_positive(const TauInequalitySystem& sys, uint32_t tau);

// least feasible tau in [1, tau_max]; scans every tau since feasibility is
// not monotone in tau for general systems
std::optional<std::pair<uint32_t, Assignment>> minimize_tau(
    const TauInequalitySystem& sys, uint32_t tau_max);

// all >=-rows carry <= 4 terms and all <-rows <= 3
bool is_tp43(const TauInequalitySystem& sys);

// partition must cover the variables exactly (else validation error);
// true iff no row has two terms in one part (repeats always disqualify)
bool check_quadripartite(const TauInequalitySystem& sys, const QuadPartition& p);

struct GadgetFragment {
  TauInequalitySystem system;  // carries its own partition
  // designated variables by role, e.g. "target", "base", "output"
  std::map<std::string, std::string> interface_vars;
};

// {target + aux >= tau, aux < tau}: forces target >= 1 at every tau
GadgetFragment gadget_positivity(const std::string& target);

// the power-of-two adder: output z2 >= base + 2^(i+1) in every solution,
// feasible for every tau >= (lower bound of base) + 2^(i+1) + 1; base is
// the fragment's only non-fresh variable and gets no positivity pair here
GadgetFragment gadget_adder(uint32_t i, const std::string& base,
                            const std::string& ns = "");

// the two-term tail block alone: output z2 >= base + 2
GadgetFragment gadget_adder_two(const std::string& base, const std::string& ns = "");

// chain of adders per the binary expansion of m; "output" >= m in every
// solution and = m in some; O((log m)^2) variables
GadgetFragment gadget_lower_bound(uint32_t m, const std::string& ns = "lb");

// a quadripartite system feasible at tau iff tau >= k (k >= 2); the
// construction self-checks this by decide() for tau in [1, k+3] and throws
// logic_error on mismatch
TauInequalitySystem system_min_tau(uint32_t k);

// splice a fragment into host: fresh variables are added, rows appended,
// and the fragment's partition is mapped onto host's by a part bijection
// that keeps every shared variable in its existing host part
void embed_fragment(TauInequalitySystem& host, const GadgetFragment& frag);

}  // namespace tastp
