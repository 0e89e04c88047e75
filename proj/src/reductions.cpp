#include "reductions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tastp {

namespace {

int part_of(const QuadPartition& p, const std::string& v) {
  for (int k = 0; k < 4; k++)
    for (const auto& name : p.parts[size_t(k)])
      if (name == v) return k;
  return -1;
}

void put(QuadPartition& p, int k, const std::string& v) {
  p.parts[size_t(k)].push_back(v);
}

// a prefix no declared variable starts with, so generated names stay fresh
std::string fresh_prefix(const std::vector<std::string>& taken,
                         std::string want) {
  for (;;) {
    bool clash = false;
    for (const auto& v : taken)
      if (v.rfind(want, 0) == 0) clash = true;
    if (!clash) return want;
    want += "_";
  }
}

}  // namespace

OneInThreeInstance OneInThreeInstance::make(
    std::vector<std::string> vars, std::vector<std::array<Literal, 3>> clauses,
    std::optional<QuadPartition> partition) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw ValidationError("variable names must be nonempty");
    if (!seen.insert(v).second)
      throw ValidationError("duplicate variable name: " + v);
  }
  for (const auto& cl : clauses) {
    for (const auto& l : cl)
      if (!seen.count(l.var))
        throw ValidationError("clause mentions undeclared variable: " + l.var);
    if (cl[0].var == cl[1].var || cl[0].var == cl[2].var ||
        cl[1].var == cl[2].var)
      throw ValidationError("a clause must use three distinct variables");
  }
  if (partition) {
    std::set<std::string> covered;
    for (const auto& part : partition->parts)
      for (const auto& v : part) {
        if (!seen.count(v))
          throw ValidationError("partition names undeclared variable: " + v);
        if (!covered.insert(v).second)
          throw ValidationError("partition places a variable twice: " + v);
      }
    if (covered.size() != vars.size())
      throw ValidationError("partition must cover every variable");
    for (const auto& cl : clauses) {
      int p0 = part_of(*partition, cl[0].var);
      int p1 = part_of(*partition, cl[1].var);
      int p2 = part_of(*partition, cl[2].var);
      if (p0 == p1 || p0 == p2 || p1 == p2)
        throw ValidationError("a clause touches one part twice");
    }
  }
  OneInThreeInstance inst;
  inst.vars = std::move(vars);
  inst.clauses = std::move(clauses);
  inst.partition = std::move(partition);
  return inst;
}

bool OneInThreeInstance::monotone() const {
  for (const auto& cl : clauses)
    for (const auto& l : cl)
      if (l.negated) return false;
  return true;
}

bool satisfies_one_in_three(const OneInThreeInstance& inst,
                            const BoolAssignment& a) {
  for (const auto& cl : inst.clauses) {
    int trues = 0;
    for (const auto& l : cl) {
      auto it = a.find(l.var);
      if (it == a.end())
        throw ValidationError("assignment misses variable: " + l.var);
      if (it->second != l.negated) trues++;
    }
    if (trues != 1) return false;
  }
  return true;
}

namespace {

struct SatSearch {
  // clause literals as (variable index, negated)
  std::vector<std::array<std::pair<size_t, bool>, 3>> clauses;

  explicit SatSearch(const OneInThreeInstance& in) {
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < in.vars.size(); i++) index[in.vars[i]] = i;
    for (const auto& cl : in.clauses) {
      std::array<std::pair<size_t, bool>, 3> row;
      for (int k = 0; k < 3; k++) row[k] = {index.at(cl[k].var), cl[k].negated};
      clauses.push_back(row);
    }
  }

  // values: -1 unknown, else 0/1. returns false on a contradiction.
  bool propagate(std::vector<int8_t>& val) const {
    for (bool moved = true; moved;) {
      moved = false;
      for (const auto& cl : clauses) {
        int trues = 0, open = 0;
        for (const auto& [v, negd] : cl) {
          if (val[v] < 0)
            open++;
          else if ((val[v] == 1) != negd)
            trues++;
        }
        if (trues > 1) return false;
        if (trues == 0 && open == 0) return false;
        if (trues == 1 && open > 0) {
          // the single true literal is in place: the rest must go false
          for (const auto& [v, negd] : cl)
            if (val[v] < 0) {
              val[v] = negd ? 1 : 0;
              moved = true;
            }
        } else if (trues == 0 && open == 1) {
          for (const auto& [v, negd] : cl)
            if (val[v] < 0) {
              val[v] = negd ? 0 : 1;
              moved = true;
            }
        }
      }
    }
    return true;
  }

  bool solve(std::vector<int8_t>& val) const {
    if (!propagate(val)) return false;
    // branch inside the tightest still-open clause
    size_t pick = SIZE_MAX;
    int best_open = 4;
    for (const auto& cl : clauses) {
      int trues = 0, open = 0;
      size_t cand = SIZE_MAX;
      for (const auto& [v, negd] : cl) {
        if (val[v] < 0) {
          open++;
          if (cand == SIZE_MAX) cand = v;
        } else if ((val[v] == 1) != negd) {
          trues++;
        }
      }
      if (trues == 0 && open > 0 && open < best_open) {
        best_open = open;
        pick = cand;
      }
    }
    if (pick == SIZE_MAX) return true;  // every clause settled already
    for (int8_t b : {1, 0}) {
      std::vector<int8_t> next = val;
      next[pick] = b;
      if (solve(next)) {
        val = std::move(next);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<BoolAssignment> brute_force_1in3(const OneInThreeInstance& inst) {
  SatSearch s(inst);
  std::vector<int8_t> val(inst.vars.size(), -1);
  if (!s.solve(val)) return std::nullopt;
  BoolAssignment out;
  for (size_t i = 0; i < inst.vars.size(); i++)
    out[inst.vars[i]] = val[i] == 1;  // untouched variables default to false
  if (!satisfies_one_in_three(inst, out))
    throw std::logic_error("search returned a non-satisfying assignment");
  return out;
}

namespace {

// parts for the four helpers h,i,j,k of one clause rewrite, given the parts
// q1,q2,q3 of the literals being rewritten. the rewrite emits clauses
// {s1,h,k} {s2,i,k} {s3,j,k} {h,i,j}, so each helper must dodge its own
// clause mates. with q1,q2,q3 pairwise distinct, cycling h,i,j through the
// literal parts and sending k to the leftover part always works; otherwise
// fall back to a search over the 256 placements.
std::array<int, 4> place_helpers(int q1, int q2, int q3) {
  if (q1 != q2 && q1 != q3 && q2 != q3)
    return {q2, q3, q1, 0 + 1 + 2 + 3 - q1 - q2 - q3};
  const int q[3] = {q1, q2, q3};
  std::array<int, 4> p{};
  for (p[0] = 0; p[0] < 4; p[0]++)
    for (p[1] = 0; p[1] < 4; p[1]++)
      for (p[2] = 0; p[2] < 4; p[2]++)
        for (p[3] = 0; p[3] < 4; p[3]++) {
          if (p[0] == p[1] || p[0] == p[2] || p[1] == p[2]) continue;
          bool ok = true;
          for (int t = 0; t < 3; t++)
            if (p[t] == q[t] || p[t] == p[3] || p[3] == q[t]) ok = false;
          if (ok) return p;
        }
  throw std::logic_error("no four-part placement for rewrite helpers");
}

}  // namespace

OneInThreeInstance monotone_to_quadripartite(const OneInThreeInstance& inst) {
  if (!inst.monotone())
    throw ValidationError("the rewriting expects a monotone instance");

  std::vector<std::string> vars;
  std::vector<std::array<Literal, 3>> clauses;
  QuadPartition qp;
  std::string pfx = fresh_prefix(inst.vars, "q");

  auto declare = [&](const std::string& name, int part) {
    vars.push_back(name);
    put(qp, part, name);
    return name;
  };

  // every source variable turns into a flipped twin: the twin is true
  // exactly when the source variable is false. source variables only ever
  // occur flipped below, so the twins replace them outright and the output
  // stays free of negated literals.
  std::map<std::string, std::string> twin;
  for (const auto& u : inst.vars) twin[u] = declare(pfx + "not." + u, 0);

  for (size_t ci = 0; ci < inst.clauses.size(); ci++) {
    const std::string& nx = twin.at(inst.clauses[ci][0].var);
    const std::string& ny = twin.at(inst.clauses[ci][1].var);
    const std::string& nz = twin.at(inst.clauses[ci][2].var);
    std::string base = pfx + std::to_string(ci) + ".";
    auto fresh = [&](const char* suffix, int part) {
      return declare(base + suffix, part);
    };

    std::string a1 = fresh("a1", 1), a2 = fresh("a2", 2), a3 = fresh("a3", 3);
    std::string b1 = fresh("b1", 2), b2 = fresh("b2", 3), b3 = fresh("b3", 1);
    std::string c = fresh("c", 1);
    std::string dx = fresh("dx", 2), dy = fresh("dy", 3), dz = fresh("dz", 2);
    std::string exy = fresh("exy", 0), eyz = fresh("eyz", 0),
                ezx = fresh("ezx", 0);
    std::string fxy = fresh("fxy", 2), fyz = fresh("fyz", 2),
                fzx = fresh("fzx", 2);

    clauses.push_back({pos(nx), pos(a1), pos(b1)});
    clauses.push_back({pos(ny), pos(a2), pos(b2)});
    clauses.push_back({pos(nz), pos(a3), pos(b3)});
    clauses.push_back({pos(a1), pos(a2), pos(a3)});
    clauses.push_back({pos(nx), pos(c), pos(dx)});
    clauses.push_back({pos(ny), pos(c), pos(dy)});
    clauses.push_back({pos(nz), pos(c), pos(dz)});
    clauses.push_back({pos(c), pos(exy), pos(fxy)});
    clauses.push_back({pos(c), pos(eyz), pos(fyz)});
    clauses.push_back({pos(c), pos(ezx), pos(fzx)});
    clauses.push_back({pos(dx), pos(dy), pos(exy)});
    clauses.push_back({pos(dy), pos(dz), pos(eyz)});

    // the thirteenth clause {dz, dx, ezx} would sit dz and dx in one part.
    // rewriting a clause {l1,l2,l3} with helpers h,i,j,k yields
    // {not l1, h, k} {not l2, i, k} {not l3, j, k} {h, i, j}, exactly one
    // true in each iff exactly one of l1,l2,l3 is true. one round flips
    // dz,dx,ezx; rewriting each produced clause once more flips them back,
    // leaving only the round-one helpers flipped, which get twins of their
    // own. the two rounds trade 1 clause for 16 and never pair dz with dx.
    std::array<int, 4> rp = place_helpers(2, 2, 0);
    std::string nh = declare(base + "nh", rp[0]);
    std::string ni = declare(base + "ni", rp[1]);
    std::string nj = declare(base + "nj", rp[2]);
    std::string nk = declare(base + "nk", rp[3]);

    const std::array<std::array<std::string, 3>, 4> sources{{
        {dz, nh, nk},   // from {not dz, h, k}
        {dx, ni, nk},   // from {not dx, i, k}
        {ezx, nj, nk},  // from {not ezx, j, k}
        {nh, ni, nj},   // from {h, i, j}
    }};
    for (int t = 0; t < 4; t++) {
      const auto& s = sources[size_t(t)];
      std::array<int, 4> hp = place_helpers(
          part_of(qp, s[0]), part_of(qp, s[1]), part_of(qp, s[2]));
      std::string sub = base + "r" + std::to_string(t) + ".";
      std::string h = declare(sub + "h", hp[0]);
      std::string i = declare(sub + "i", hp[1]);
      std::string j = declare(sub + "j", hp[2]);
      std::string k = declare(sub + "k", hp[3]);
      clauses.push_back({pos(s[0]), pos(h), pos(k)});
      clauses.push_back({pos(s[1]), pos(i), pos(k)});
      clauses.push_back({pos(s[2]), pos(j), pos(k)});
      clauses.push_back({pos(h), pos(i), pos(j)});
    }
  }

  return OneInThreeInstance::make(std::move(vars), std::move(clauses),
                                  std::move(qp));
}

namespace {

void declare_instance_vars(TauInequalitySystem& sys,
                           const OneInThreeInstance& inst) {
  std::set<std::string> names(inst.vars.begin(), inst.vars.end());
  for (const auto& v : inst.vars)
    if (names.count(v + ".pos"))
      throw ValidationError("variable name collides with a helper name: " + v +
                            ".pos");
  sys.partition = QuadPartition{};
  for (int p = 0; p < 4; p++)
    for (const auto& v : inst.partition->parts[size_t(p)]) {
      sys.add_var(v);
      put(*sys.partition, p, v);
    }
  for (const auto& v : inst.vars) embed_fragment(sys, gadget_positivity(v));
}

// declare a soon-to-be-embedded fragment variable in a chosen part first,
// so the embedding's part matching is pinned where we want it
void seed_var(TauInequalitySystem& sys, const std::string& name, int part) {
  sys.add_var(name);
  put(*sys.partition, part, name);
}

void check_shape(const TauInequalitySystem& sys) {
  if (!is_tp43(sys))
    throw std::logic_error("encoded system left the arity class");
  if (!sys.partition || !check_quadripartite(sys, *sys.partition))
    throw std::logic_error("encoded system is not four-part");
}

void require_encodable(const OneInThreeInstance& inst) {
  if (!inst.partition)
    throw ValidationError("a four-part instance is required");
  if (!inst.monotone())
    throw ValidationError(
        "the numeric encoding reads every literal positively; rewrite "
        "negations away first");
}

}  // namespace

TauInequalitySystem quad1in3_to_tp(const OneInThreeInstance& inst,
                                   uint32_t tau) {
  if (tau < 4) throw ValidationError("the clause encoding needs tau >= 4");
  require_encodable(inst);

  TauInequalitySystem sys;
  declare_instance_vars(sys, inst);
  std::string pfx = fresh_prefix(sys.vars, "aux");

  // per-part pinned constants of value tau-4, built on first use. a single
  // shared constant cannot sit in one part when clauses leave different
  // parts free, so each needed part gets its own pinned copy.
  std::array<std::string, 4> pinned;
  auto constant_in = [&](int p) -> const std::string& {
    if (!pinned[size_t(p)].empty()) return pinned[size_t(p)];
    std::string base = pfx + ".p" + std::to_string(p);
    std::string x1 = base + ".x1";
    seed_var(sys, x1, (p + 1) % 4);
    embed_fragment(sys, gadget_positivity(x1));
    GadgetFragment two = gadget_lower_bound(2, base + ".x2");
    const std::string x2 = two.interface_vars.at("output");
    seed_var(sys, x2, (p + 2) % 4);
    embed_fragment(sys, two);
    GadgetFragment rest = gadget_lower_bound(tau - 4, base + ".xt");
    const std::string xt = rest.interface_vars.at("output");
    seed_var(sys, xt, p);
    embed_fragment(sys, rest);
    // lower bounds 1, 2, tau-4 plus this cap pin all three values exactly
    sys.add(Sign::LT_TAU, {x1, x2, xt});
    pinned[size_t(p)] = xt;
    return pinned[size_t(p)];
  };

  for (const auto& cl : inst.clauses) {
    const std::string &a = cl[0].var, &b = cl[1].var, &c = cl[2].var;
    if (tau == 4) {
      sys.add(Sign::GEQ_TAU, {a, b, c});
      sys.add(Sign::LT_TAU, {a, b});
      sys.add(Sign::LT_TAU, {a, c});
      sys.add(Sign::LT_TAU, {b, c});
    } else {
      bool used[4] = {false, false, false, false};
      for (const auto& l : cl) used[part_of(*sys.partition, l.var)] = true;
      int free_part = 0;
      while (used[free_part]) free_part++;
      const std::string& xt = constant_in(free_part);
      sys.add(Sign::GEQ_TAU, {a, b, c, xt});
      sys.add(Sign::LT_TAU, {a, b, xt});
      sys.add(Sign::LT_TAU, {a, c, xt});
      sys.add(Sign::LT_TAU, {b, c, xt});
    }
  }

  check_shape(sys);
  return sys;
}

TauInequalitySystem tp_min_variant(const OneInThreeInstance& inst) {
  require_encodable(inst);

  TauInequalitySystem sys;
  declare_instance_vars(sys, inst);
  std::string pfx = fresh_prefix(sys.vars, "aux");

  std::string x1 = pfx + ".x1";
  seed_var(sys, x1, 0);
  embed_fragment(sys, gadget_positivity(x1));
  GadgetFragment two = gadget_lower_bound(2, pfx + ".x2");
  const std::string x2 = two.interface_vars.at("output");
  seed_var(sys, x2, 1);
  embed_fragment(sys, two);
  // 1 + 2 staying under the temperature rules out any temperature below 4
  sys.add(Sign::LT_TAU, {x1, x2});

  for (const auto& cl : inst.clauses) {
    const std::string &a = cl[0].var, &b = cl[1].var, &c = cl[2].var;
    sys.add(Sign::GEQ_TAU, {a, b, c});
    sys.add(Sign::LT_TAU, {a, b});
    sys.add(Sign::LT_TAU, {a, c});
    sys.add(Sign::LT_TAU, {b, c});
  }

  check_shape(sys);
  return sys;
}

namespace {

// all fifteen nonempty side subsets except the listed ones
CooperationSet family_without(std::initializer_list<int> dropped) {
  CooperationSet cs;
  for (int s = 1; s < 16; s++) {
    bool out = false;
    for (int d : dropped)
      if (s == d) out = true;
    if (!out) cs.add(DirSet(s));
  }
  cs.validate();
  return cs;
}

}  // namespace

StrengthFreeTas tp_to_sftas(const TauInequalitySystem& sys) {
  if (sys.vars.empty() || sys.ineqs.empty())
    throw ValidationError("nothing to encode");

  constexpr int N = 1 << int(Dir::N), W = 1 << int(Dir::W),
                S = 1 << int(Dir::S), E = 1 << int(Dir::E);
  // clause tile: north+west+south reach the threshold, every pair misses it
  const CooperationSet clause_family =
      family_without({N, W, S, N | W, N | S, W | S});
  // pair bound tile: north+west reach it, either alone misses it
  const CooperationSet pair_geq_family = family_without({N, W});
  // pair cap tile: even north+west together miss it
  const CooperationSet pair_lt_family = family_without({N, W, N | W});

  // canonicalize rows: sorted terms, exact duplicates collapsed
  std::set<std::vector<uint32_t>> geq2, geq3, lt1, lt2;
  for (const auto& iq : sys.ineqs) {
    std::vector<uint32_t> t = iq.terms;
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw ValidationError("rows with repeated terms are not encodable");
    if (iq.sign == Sign::GEQ_TAU) {
      if (t.size() == 2)
        geq2.insert(std::move(t));
      else if (t.size() == 3)
        geq3.insert(std::move(t));
      else
        throw ValidationError(
            "threshold rows must have two or three terms here");
    } else {
      if (t.size() == 1)
        lt1.insert(std::move(t));
      else if (t.size() == 2)
        lt2.insert(std::move(t));
      else
        throw ValidationError("cap rows must have one or two terms here");
    }
  }

  // the shared east-side label; its strength ends up at or above the
  // temperature, so it only ever fills otherwise blank sides
  std::string filler = "filler";
  while (sys.has_var(filler)) filler += "_";
  auto name_of = [&](uint32_t v) -> const std::string& { return sys.vars[v]; };

  std::vector<TileType> tiles;
  std::vector<CooperationSet> coop;
  std::set<std::vector<uint32_t>> clause_pairs;

  for (const auto& t : geq3) {
    std::vector<std::vector<uint32_t>> pairs{
        {t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
    for (const auto& pr : pairs)
      if (!lt2.count(pr))
        throw ValidationError("three-term threshold row lacks its pair caps");
    for (auto& pr : pairs) clause_pairs.insert(std::move(pr));
    tiles.push_back(
        make_tile(name_of(t[0]), name_of(t[1]), name_of(t[2]), filler));
    coop.push_back(clause_family);
  }
  std::set<uint32_t> capped;  // variables some tile keeps under temperature
  for (const auto& t : geq2) {
    tiles.push_back(make_tile(name_of(t[0]), name_of(t[1]), filler, filler));
    coop.push_back(pair_geq_family);
    capped.insert(t[0]);
    capped.insert(t[1]);
  }
  for (const auto& t : lt2) {
    if (clause_pairs.count(t)) continue;  // a clause tile carries this cap
    tiles.push_back(make_tile(name_of(t[0]), name_of(t[1]), filler, filler));
    coop.push_back(pair_lt_family);
  }
  for (const auto& t : lt1)
    if (!capped.count(t[0]))
      throw ValidationError("single-term cap row has no tile to carry it");

  Assembly seed = Assembly::single({0, 0}, tiles.front());
  return StrengthFreeTas::make(std::move(tiles), std::move(coop),
                               std::move(seed));
}

BoolAssignment tp_solution_to_assignment(const Assignment& sol,
                                         const OneInThreeInstance& inst) {
  BoolAssignment out;
  for (const auto& v : inst.vars) {
    auto it = sol.find(v);
    if (it == sol.end())
      throw ValidationError("solution lacks a value for: " + v);
    if (it->second != 1 && it->second != 2)
      throw ValidationError("variable " + v +
                            " is neither 1 nor 2 in the solution");
    out[v] = it->second == 2;
  }
  if (!satisfies_one_in_three(inst, out))
    throw std::logic_error("decoded assignment fails a clause");
  return out;
}

}  // namespace tastp
