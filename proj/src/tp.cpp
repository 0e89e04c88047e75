#include "tp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tastp {

uint32_t TauInequalitySystem::add_var(const std::string& name) {
  if (name.empty()) throw ValidationError("variable name must be nonempty");
  if (has_var(name)) throw ValidationError("duplicate variable: " + name);
  vars.push_back(name);
  return static_cast<uint32_t>(vars.size() - 1);
}

uint32_t TauInequalitySystem::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); i++)
    if (vars[i] == name) return static_cast<uint32_t>(i);
  throw ValidationError("undeclared variable: " + name);
}

bool TauInequalitySystem::has_var(const std::string& name) const {
  return std::find(vars.begin(), vars.end(), name) != vars.end();
}

void TauInequalitySystem::add(Sign sign, const std::vector<std::string>& term_names) {
  std::vector<uint32_t> idx;
  idx.reserve(term_names.size());
  for (const auto& n : term_names) idx.push_back(var_index(n));
  add_indices(sign, std::move(idx));
}

void TauInequalitySystem::add_indices(Sign sign, std::vector<uint32_t> term_indices) {
  if (term_indices.empty() || term_indices.size() > 4)
    throw ValidationError("a row carries 1 to 4 terms");
  for (uint32_t t : term_indices)
    if (t >= vars.size()) throw ValidationError("term references unknown variable");
  ineqs.push_back({sign, std::move(term_indices)});
}

namespace {

struct Term {
  uint32_t var;
  long long coef;  // signed; rows are sums of coef*var compared against rhs
  auto operator<=>(const Term&) const = default;
};

// every row is normalized to "sum of coef*var >= rhs":
//   sum >= tau   stays as is,
//   sum < tau    becomes -sum >= -(tau-1),
// and subtracting a <-row from a >=-row that shares terms gives a
// tau-free consequence ">= 1" which interval propagation can chase even
// though it cannot subtract rows on its own
struct Row {
  std::vector<Term> terms;  // distinct vars
  long long rhs = 0;
};

struct SolverState {
  uint32_t tau = 1;
  std::vector<Row> rows;
  std::vector<std::vector<uint32_t>> rows_of_var;
  const std::vector<std::string>* names = nullptr;
  // lazy relaxation pruning: after this many search nodes, try once to
  // refute the whole instance by projection (see fm_refutes)
  uint64_t nodes = 0;
  uint64_t fm_trigger = 3000;
  bool fm_done = false;
  bool root_refuted = false;
  std::vector<uint32_t> root_lo, root_hi;
};

long long floor_div(long long a, long long g) {
  return a >= 0 ? a / g : -((-a + g - 1) / g);
}

// Fourier-Motzkin elimination over the rows rewritten as integer "<= b"
// constraints (>= tau becomes -sum <= -tau, < tau becomes sum <= tau-1,
// plus the domain bounds). Interval propagation alone cannot chase the
// paper-style derivations that subtract one row from another (e.g. the
// adder chains A'' >= A' + 1), but those are nonnegative row combinations,
// exactly what projection exhausts. Rows are gcd-normalized with the bound
// floored, which is sound for integer solutions. Returns true only on a
// proven contradiction; resource caps make it give up with false.
bool fm_refutes(const SolverState& st, const std::vector<uint32_t>& lo,
                const std::vector<uint32_t>& hi) {
  size_t n = lo.size();
  std::vector<std::vector<long long>> rows;
  auto push_row = [&](std::vector<long long> r) {
    // r has n coefficients then the bound
    long long g = 0;
    for (size_t v = 0; v < n; v++) g = std::gcd(g, r[v] < 0 ? -r[v] : r[v]);
    if (g == 0) return r[n] >= 0;  // empty support: contradiction iff b < 0
    if (g > 1) {
      for (size_t v = 0; v < n; v++) r[v] /= g;
      r[n] = floor_div(r[n], g);
    }
    // drop rows no assignment inside the box can violate
    long long max_lhs = 0;
    for (size_t v = 0; v < n; v++)
      max_lhs += r[v] > 0 ? r[v] * (long long)hi[v] : r[v] * (long long)lo[v];
    if (max_lhs <= r[n]) return true;
    rows.push_back(std::move(r));
    return true;
  };

  for (const Row& row : st.rows) {
    std::vector<long long> r(n + 1, 0);
    for (const Term& t : row.terms) r[t.var] = -t.coef;
    r[n] = -row.rhs;
    if (!push_row(std::move(r))) return true;
  }
  // bound rows go in unfiltered: push_row's redundancy test is relative to
  // the box, so it would drop the box itself and leave variables one-sided
  for (size_t v = 0; v < n; v++) {
    std::vector<long long> up(n + 1, 0), down(n + 1, 0);
    up[v] = 1;
    up[n] = hi[v];
    down[v] = -1;
    down[n] = -(long long)lo[v];
    rows.push_back(std::move(up));
    rows.push_back(std::move(down));
  }

  const size_t row_cap = 20000;
  const long long coef_cap = 1ll << 40;
  std::vector<char> remaining(n, 1);
  for (size_t round = 0; round < n; round++) {
    // min-fill: eliminate the variable combining the fewest row pairs
    size_t pick = n;
    uint64_t best = 0;
    for (size_t v = 0; v < n; v++) {
      if (!remaining[v]) continue;
      uint64_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r[v] > 0) pos++;
        if (r[v] < 0) neg++;
      }
      uint64_t score = pos * neg;
      if (pick == n || score < best) pick = v, best = score;
    }
    if (pick == n) break;
    remaining[pick] = 0;
    std::vector<std::vector<long long>> keep, pos, neg;
    for (auto& r : rows) {
      if (r[pick] > 0)
        pos.push_back(std::move(r));
      else if (r[pick] < 0)
        neg.push_back(std::move(r));
      else
        keep.push_back(std::move(r));
    }
    rows = std::move(keep);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        long long cp = -q[pick], cq = p[pick];
        std::vector<long long> r(n + 1);
        for (size_t v = 0; v <= n; v++) {
          __int128 val = (__int128)cp * p[v] + (__int128)cq * q[v];
          if (val > coef_cap || val < -coef_cap) return false;  // give up
          r[v] = (long long)val;
        }
        if (!push_row(std::move(r))) return true;
        if (rows.size() > row_cap) return false;  // give up
      }
    }
  }
  return false;
}

long long div_floor(long long a, long long b) {  // b > 0
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

bool propagate(const SolverState& st, std::vector<uint32_t>& lo,
               std::vector<uint32_t>& hi, std::vector<uint32_t> queue);

// root-level difference chase. The adder compositions prove their thresholds
// by subtracting rows and chaining the resulting "v - w >= c" facts through
// shared variables; interval propagation forgets that the two ends of a
// difference are correlated, so it cannot follow those chains. Here we keep
// the best known lower bound on v - w for every pair, seed it from the rows
// (one +1 term against one -1 term, every other term pushed to its interval
// extreme), close transitively, and fold the results back into the interval
// bounds. Each step is a valid consequence, so stopping early is sound; a
// false return means the bounds clashed and the system is infeasible.
bool difference_chase(const SolverState& st, std::vector<uint32_t>& lo,
                      std::vector<uint32_t>& hi) {
  size_t n = lo.size();
  if (n == 0 || n > 512) return true;
  const long long none = std::numeric_limits<long long>::min();
  const long long clamp = 1ll << 50;
  std::vector<long long> d(n * n, none);  // d[v*n+w] = best lb of v - w
  std::vector<uint32_t> all_rows(st.rows.size());
  for (uint32_t r = 0; r < all_rows.size(); r++) all_rows[r] = r;

  bool bad = false;
  auto relax = [&](uint32_t v, uint32_t w, long long c) {
    if (c > clamp) c = clamp;
    if (v == w) {
      if (c > 0) bad = true;
      return false;
    }
    long long& cur = d[v * n + w];
    if (cur != none && cur >= c) return false;
    cur = c;
    return true;
  };

  for (size_t round = 0; round < 10 * n + 20; round++) {
    bool changed = false;
    for (const Row& row : st.rows) {
      for (size_t a = 0; a < row.terms.size(); a++) {
        if (row.terms[a].coef != 1) continue;
        for (size_t b = 0; b < row.terms.size(); b++) {
          if (a == b || row.terms[b].coef != -1) continue;
          long long c = row.rhs;
          std::vector<size_t> rest;
          for (size_t t = 0; t < row.terms.size(); t++)
            if (t != a && t != b) rest.push_back(t);
          if (rest.size() == 2 && row.terms[rest[0]].coef == 1 &&
              row.terms[rest[1]].coef == -1) {
            // the leftover is itself a difference x - y; its tightest upper
            // bound may be a known difference bound rather than the box
            uint32_t x = row.terms[rest[0]].var, y = row.terms[rest[1]].var;
            long long ub = (long long)hi[x] - lo[y];
            if (d[y * n + x] != none) ub = std::min(ub, -d[y * n + x]);
            c -= ub;
          } else if (rest.size() == 2 && row.terms[rest[0]].coef == -1 &&
                     row.terms[rest[1]].coef == 1) {
            uint32_t x = row.terms[rest[1]].var, y = row.terms[rest[0]].var;
            long long ub = (long long)hi[x] - lo[y];
            if (d[y * n + x] != none) ub = std::min(ub, -d[y * n + x]);
            c -= ub;
          } else {
            for (size_t t : rest) {
              const Term& o = row.terms[t];
              c -= o.coef * (long long)(o.coef > 0 ? hi[o.var] : lo[o.var]);
            }
          }
          changed |= relax(row.terms[a].var, row.terms[b].var, c);
          if (bad) return false;
        }
      }
    }
    for (size_t v = 0; v < n; v++)
      for (size_t u = 0; u < n; u++) {
        if (d[u * n + v] == none) continue;
        for (size_t w = 0; w < n; w++) {
          if (d[v * n + w] == none) continue;
          changed |= relax(static_cast<uint32_t>(u), static_cast<uint32_t>(w),
                           d[u * n + v] + d[v * n + w]);
          if (bad) return false;
        }
      }
    bool moved = false;
    for (size_t v = 0; v < n; v++)
      for (size_t w = 0; w < n; w++) {
        long long c = d[v * n + w];
        if (c == none) continue;
        long long nl = (long long)lo[w] + c;  // v >= w + c
        if (nl > (long long)lo[v]) {
          if (nl > (long long)hi[v]) return false;
          lo[v] = static_cast<uint32_t>(nl);
          moved = true;
        }
        long long nh = (long long)hi[v] - c;  // w <= v - c
        if (nh < (long long)hi[w]) {
          if (nh < (long long)lo[w]) return false;
          hi[w] = static_cast<uint32_t>(nh);
          moved = true;
        }
      }
    if (moved && !propagate(st, lo, hi, all_rows)) return false;
    if (!changed && !moved) break;
  }
  return true;
}

long long div_ceil(long long a, long long b) {  // b > 0
  return a > 0 ? (a + b - 1) / b : -(-a / b);
}

bool propagate(const SolverState& st, std::vector<uint32_t>& lo,
               std::vector<uint32_t>& hi, std::vector<uint32_t> queue) {
  std::vector<char> queued(st.rows.size(), 0);
  for (uint32_t r : queue) queued[r] = 1;
  while (!queue.empty()) {
    uint32_t r = queue.back();
    queue.pop_back();
    queued[r] = 0;
    const Row& row = st.rows[r];
    long long max_lhs = 0;
    for (const Term& t : row.terms)
      max_lhs += t.coef * (long long)(t.coef > 0 ? hi[t.var] : lo[t.var]);
    if (max_lhs < row.rhs) return false;
    for (const Term& t : row.terms) {
      long long own = t.coef * (long long)(t.coef > 0 ? hi[t.var] : lo[t.var]);
      long long need = row.rhs - (max_lhs - own);  // coef*x >= need
      long long nl = lo[t.var], nh = hi[t.var];
      if (t.coef > 0)
        nl = div_ceil(need, t.coef);  // x >= need/coef
      else
        nh = div_floor(-need, -t.coef);  // x <= need/coef, coef < 0
      if (t.coef > 0 ? nl > lo[t.var] : nh < hi[t.var]) {
        if (nl > (long long)hi[t.var] || nh < (long long)lo[t.var]) return false;
        if (t.coef > 0)
          lo[t.var] = static_cast<uint32_t>(nl);
        else
          hi[t.var] = static_cast<uint32_t>(nh);
        for (uint32_t r2 : st.rows_of_var[t.var])
          if (!queued[r2]) queued[r2] = 1, queue.push_back(r2);
      }
    }
  }
  return true;
}

bool search(SolverState& st, std::vector<uint32_t> lo, std::vector<uint32_t> hi,
            std::vector<uint32_t>& out) {
  if (st.root_refuted) return false;
  if (!st.fm_done && ++st.nodes >= st.fm_trigger) {
    st.fm_done = true;
    if (fm_refutes(st, st.root_lo, st.root_hi)) {
      st.root_refuted = true;
      return false;
    }
  }
  // fail-first: narrowest domain, then most row occurrences, then index
  size_t n = lo.size();
  size_t pick = n;
  uint64_t best_width = 0;
  for (size_t v = 0; v < n; v++) {
    if (lo[v] == hi[v]) continue;
    uint64_t width = hi[v] - lo[v];
    if (pick == n || width < best_width ||
        (width == best_width &&
         st.rows_of_var[v].size() > st.rows_of_var[pick].size())) {
      pick = v;
      best_width = width;
    }
  }
  if (pick == n) {
    out = lo;
    return true;
  }
  // cheap shot: the all-lower-bounds corner often satisfies everything once
  // propagation has pulled the bounds together
  bool corner_ok = true;
  for (const Row& row : st.rows) {
    long long sum = 0;
    for (const Term& t : row.terms) sum += t.coef * (long long)lo[t.var];
    if (sum < row.rhs) {
      corner_ok = false;
      break;
    }
  }
  if (corner_ok) {
    out = lo;
    return true;
  }
  for (uint32_t val = lo[pick]; val <= hi[pick]; val++) {
    std::vector<uint32_t> lo2 = lo, hi2 = hi;
    lo2[pick] = hi2[pick] = val;
    if (propagate(st, lo2, hi2, st.rows_of_var[pick]) &&
        search(st, std::move(lo2), std::move(hi2), out))
      return true;
  }
  return false;
}

std::optional<Assignment> decide_impl(const TauInequalitySystem& sys, uint32_t tau,
                                      const std::map<std::string, uint32_t>* caps,
                                      uint32_t floor_all) {
  if (tau < 1) throw ValidationError("tau must be positive");
  size_t n = sys.vars.size();
  SolverState st;
  st.tau = tau;
  st.names = &sys.vars;
  st.rows_of_var.assign(n, {});

  // multiplicity form of each original row, for capping and subtraction
  std::vector<std::map<uint32_t, uint32_t>> mult(sys.ineqs.size());
  for (size_t i = 0; i < sys.ineqs.size(); i++)
    for (uint32_t v : sys.ineqs[i].terms) mult[i][v]++;

  auto add_row = [&](Row row) {
    uint32_t r = static_cast<uint32_t>(st.rows.size());
    for (const Term& t : row.terms) st.rows_of_var[t.var].push_back(r);
    st.rows.push_back(std::move(row));
  };

  for (size_t i = 0; i < sys.ineqs.size(); i++) {
    Row row;
    bool geq = sys.ineqs[i].sign == Sign::GEQ_TAU;
    for (const auto& [v, m] : mult[i])
      row.terms.push_back({v, geq ? (long long)m : -(long long)m});
    row.rhs = geq ? (long long)tau : -((long long)tau - 1);
    add_row(std::move(row));
  }

  // tau-free consequences: (>= tau row) minus (< tau row) sharing a term
  // gives "difference >= 1"; these let interval propagation follow the
  // chained bounds that the gadget constructions rely on
  std::set<std::pair<std::vector<Term>, long long>> seen;
  auto term_key = [](const Row& r) { return std::make_pair(r.terms, r.rhs); };
  for (size_t gi = 0; gi < sys.ineqs.size(); gi++) {
    if (sys.ineqs[gi].sign != Sign::GEQ_TAU) continue;
    for (size_t li = 0; li < sys.ineqs.size(); li++) {
      if (sys.ineqs[li].sign != Sign::LT_TAU) continue;
      bool shares = false;
      for (const auto& [v, m] : mult[gi])
        if (mult[li].count(v)) {
          shares = true;
          break;
        }
      if (!shares) continue;
      Row row;
      row.rhs = 1;
      std::map<uint32_t, long long> coef;
      for (const auto& [v, m] : mult[gi]) coef[v] += m;
      for (const auto& [v, m] : mult[li]) coef[v] -= m;
      for (const auto& [v, c] : coef)
        if (c != 0) row.terms.push_back({v, c});
      if (seen.insert(term_key(row)).second) add_row(std::move(row));
    }
  }

  std::vector<uint32_t> lo(n, floor_all), hi(n, tau);
  if (sys.strict_vars)
    for (auto& h : hi) h = tau - 1;
  for (size_t i = 0; i < sys.ineqs.size(); i++) {
    if (sys.ineqs[i].sign != Sign::LT_TAU) continue;
    for (const auto& [v, m] : mult[i])
      hi[v] = std::min(hi[v], (tau - 1) / m);
  }
  if (caps) {
    for (const auto& [name, cap] : *caps)
      hi[sys.var_index(name)] = std::min(hi[sys.var_index(name)], cap);
  }
  for (size_t v = 0; v < n; v++)
    if (lo[v] > hi[v]) return std::nullopt;

  std::vector<uint32_t> all_rows(st.rows.size());
  for (uint32_t r = 0; r < all_rows.size(); r++) all_rows[r] = r;
  if (!propagate(st, lo, hi, all_rows)) return std::nullopt;
  if (!difference_chase(st, lo, hi)) return std::nullopt;
  st.root_lo = lo;
  st.root_hi = hi;

  std::vector<uint32_t> values;
  if (!search(st, std::move(lo), std::move(hi), values)) return std::nullopt;

  // paranoia: evaluate every row before handing the assignment out
  for (const auto& iq : sys.ineqs) {
    uint64_t sum = 0;
    for (uint32_t v : iq.terms) sum += values[v];
    bool ok = iq.sign == Sign::GEQ_TAU ? sum >= tau : sum < tau;
    if (!ok) throw std::logic_error("solver returned an invalid assignment");
  }
  Assignment out;
  for (size_t v = 0; v < n; v++) out[sys.vars[v]] = values[v];
  return out;
}

}  // namespace

std::optional<Assignment> decide(const TauInequalitySystem& sys, uint32_t tau) {
  return decide_impl(sys, tau, nullptr, 0);
}

std::optional<Assignment> decide_capped(const TauInequalitySystem& sys, uint32_t tau,
                                        const std::map<std::string, uint32_t>& caps) {
  return decide_impl(sys, tau, &caps, 0);
}

std::optional<Assignment> decide_positive(const TauInequalitySystem& sys, uint32_t tau) {
  return decide_impl(sys, tau, nullptr, 1);
}

std::optional<std::pair<uint32_t, Assignment>> minimize_tau(
    const TauInequalitySystem& sys, uint32_t tau_max) {
  if (tau_max < 1) throw ValidationError("tau_max must be positive");
  for (uint32_t tau = 1; tau <= tau_max; tau++) {
    auto sol = decide(sys, tau);
    if (sol) return std::make_pair(tau, std::move(*sol));
  }
  return std::nullopt;
}

bool is_tp43(const TauInequalitySystem& sys) {
  for (const auto& iq : sys.ineqs) {
    size_t limit = iq.sign == Sign::GEQ_TAU ? 4 : 3;
    if (iq.terms.size() > limit) return false;
  }
  return true;
}

namespace {

int part_of(const QuadPartition& p, const std::string& name) {
  for (int i = 0; i < 4; i++)
    for (const auto& v : p.parts[i])
      if (v == name) return i;
  return -1;
}

}  // namespace

bool check_quadripartite(const TauInequalitySystem& sys, const QuadPartition& p) {
  std::map<std::string, int> part;
  size_t total = 0;
  for (int i = 0; i < 4; i++) {
    for (const auto& name : p.parts[i]) {
      if (!sys.has_var(name))
        throw ValidationError("partition names unknown variable: " + name);
      if (part.count(name))
        throw ValidationError("partition repeats variable: " + name);
      part[name] = i;
      total++;
    }
  }
  if (total != sys.vars.size())
    throw ValidationError("partition does not cover the variables");
  for (const auto& iq : sys.ineqs) {
    int seen_mask = 0;
    for (uint32_t t : iq.terms) {
      int pi = part.at(sys.vars[t]);
      if (seen_mask & (1 << pi)) return false;
      seen_mask |= 1 << pi;
    }
  }
  return true;
}

namespace {

void put(QuadPartition& p, int part, const std::string& name) {
  p.parts[part].push_back(name);
}

// append {v + v.pos >= tau, v.pos < tau} to sys, aux in the given part
void add_positivity_rows(TauInequalitySystem& sys, QuadPartition& p,
                         const std::string& v, int aux_part) {
  std::string aux = v + ".pos";
  sys.add_var(aux);
  put(p, aux_part, aux);
  sys.add(Sign::GEQ_TAU, {v, aux});
  sys.add(Sign::LT_TAU, {aux});
}

}  // namespace

GadgetFragment gadget_positivity(const std::string& target) {
  GadgetFragment frag;
  QuadPartition p;
  frag.system.add_var(target);
  put(p, 0, target);
  add_positivity_rows(frag.system, p, target, 3);
  frag.system.partition = p;
  frag.interface_vars["target"] = target;
  return frag;
}

GadgetFragment gadget_adder(uint32_t i, const std::string& base,
                            const std::string& ns_in) {
  if (i < 1) throw ValidationError("adder level must be >= 1");
  std::string ns = ns_in.empty() ? base + ".g" + std::to_string(i) : ns_in;
  GadgetFragment frag;
  TauInequalitySystem& sys = frag.system;
  QuadPartition p;

  auto a_part = [](uint32_t k) { return k % 2 == 0 ? 0 : 1; };
  auto fresh = [&](const std::string& suffix, int part) {
    std::string name = ns + "." + suffix;
    sys.add_var(name);
    put(p, part, name);
    add_positivity_rows(sys, p, name, 3);
    return name;
  };

  sys.add_var(base);  // A_i; positivity is the caller's concern
  put(p, a_part(i), base);

  std::string x0 = fresh("x0", 0);
  std::vector<std::string> A(i + 1), Ap(i + 1), App(i + 1), Bp(i + 1), Bpp(i + 1);
  A[i] = base;
  for (uint32_t k = 1; k < i; k++) A[k] = fresh("A" + std::to_string(k), a_part(k));
  for (uint32_t k = 1; k <= i; k++) {
    Ap[k] = fresh("Ap" + std::to_string(k), a_part(k));
    App[k] = fresh("App" + std::to_string(k), a_part(k));
    Bp[k] = fresh("Bp" + std::to_string(k), 2);
    Bpp[k] = fresh("Bpp" + std::to_string(k), 2);
  }
  std::string z1 = fresh("z1", 0);
  std::string z2 = fresh("z2", 0);
  std::string xb = fresh("xb", 2);
  std::string xc = fresh("xc", 2);

  // 5 + (i-1) + 4i core variables plus the base
  size_t core = 5 + (i - 1) + 4 * i + 1;
  if (core != 5 * size_t(i) + 5)
    throw std::logic_error("adder variable count is off");

  sys.add(Sign::GEQ_TAU, {Ap[1], Bp[1], x0});
  sys.add(Sign::GEQ_TAU, {App[1], Bpp[1], x0});
  sys.add(Sign::LT_TAU, {A[1], Bp[1], x0});
  sys.add(Sign::LT_TAU, {Ap[1], Bpp[1], x0});
  for (uint32_t j = 2; j <= i; j++) {
    sys.add(Sign::GEQ_TAU, {A[j - 1], Bp[j], Ap[j]});
    sys.add(Sign::GEQ_TAU, {A[j - 1], Bpp[j], App[j]});
    sys.add(Sign::LT_TAU, {App[j - 1], Bp[j], A[j]});
    sys.add(Sign::LT_TAU, {Ap[j], Bpp[j], App[j - 1]});
  }
  sys.add(Sign::LT_TAU, {App[i], xb});
  sys.add(Sign::LT_TAU, {z1, xc});
  sys.add(Sign::GEQ_TAU, {z1, xb});
  sys.add(Sign::GEQ_TAU, {z2, xc});

  sys.partition = p;
  frag.interface_vars["base"] = base;
  frag.interface_vars["output"] = z2;
  return frag;
}

GadgetFragment gadget_adder_two(const std::string& base, const std::string& ns_in) {
  std::string ns = ns_in.empty() ? base + ".d" : ns_in;
  GadgetFragment frag;
  TauInequalitySystem& sys = frag.system;
  QuadPartition p;
  auto fresh = [&](const std::string& suffix, int part) {
    std::string name = ns + "." + suffix;
    sys.add_var(name);
    put(p, part, name);
    add_positivity_rows(sys, p, name, 3);
    return name;
  };
  sys.add_var(base);
  put(p, 0, base);
  std::string z1 = fresh("z1", 0);
  std::string z2 = fresh("z2", 0);
  std::string xb = fresh("xb", 2);
  std::string xc = fresh("xc", 2);
  sys.add(Sign::LT_TAU, {base, xb});
  sys.add(Sign::LT_TAU, {z1, xc});
  sys.add(Sign::GEQ_TAU, {z1, xb});
  sys.add(Sign::GEQ_TAU, {z2, xc});
  sys.partition = p;
  frag.interface_vars["base"] = base;
  frag.interface_vars["output"] = z2;
  return frag;
}

void embed_fragment(TauInequalitySystem& host, const GadgetFragment& frag) {
  if (!frag.system.partition)
    throw std::logic_error("fragment lacks a partition");
  if (!host.partition) host.partition = QuadPartition{};
  const QuadPartition& fp = *frag.system.partition;
  QuadPartition& hp = *host.partition;

  // pick the part bijection pinned by the shared variables
  int map[4] = {-1, -1, -1, -1};
  bool used[4] = {false, false, false, false};
  for (const auto& v : frag.system.vars) {
    if (!host.has_var(v)) continue;
    int f = part_of(fp, v);
    int h = part_of(hp, v);
    if (f < 0 || h < 0)
      throw std::logic_error("shared variable missing from a partition: " + v);
    if (map[f] == h) continue;
    if (map[f] != -1 || used[h])
      throw ValidationError("fragment parts clash with host parts at: " + v);
    map[f] = h;
    used[h] = true;
  }
  for (int f = 0; f < 4; f++) {
    if (map[f] != -1) continue;
    for (int h = 0; h < 4; h++) {
      if (!used[h]) {
        map[f] = h;
        used[h] = true;
        break;
      }
    }
  }

  for (const auto& v : frag.system.vars) {
    if (host.has_var(v)) continue;
    host.add_var(v);
    put(hp, map[part_of(fp, v)], v);
  }
  for (const auto& iq : frag.system.ineqs) {
    std::vector<std::string> names;
    for (uint32_t t : iq.terms) names.push_back(frag.system.vars[t]);
    host.add(iq.sign, names);
  }
}

GadgetFragment gadget_lower_bound(uint32_t m, const std::string& ns) {
  if (m < 1) throw ValidationError("lower bound target must be >= 1");
  GadgetFragment out;
  TauInequalitySystem& sys = out.system;
  sys.partition = QuadPartition{};
  std::string chain = ns + ".v0";
  if (m & 1) {
    embed_fragment(sys, gadget_positivity(chain));
  } else {
    sys.add_var(chain);
    put(*sys.partition, 0, chain);
  }
  for (uint32_t bit = 1; (1u << bit) <= m; bit++) {
    if (!(m & (1u << bit))) continue;
    std::string stage_ns = ns + ".s" + std::to_string(bit);
    GadgetFragment stage = bit == 1 ? gadget_adder_two(chain, stage_ns)
                                    : gadget_adder(bit - 1, chain, stage_ns);
    // fragment carries the chain variable in a private part; align it with
    // the part it already holds in the composition
    embed_fragment(sys, stage);
    chain = stage.interface_vars.at("output");
  }
  out.interface_vars["output"] = chain;
  return out;
}

TauInequalitySystem system_min_tau(uint32_t k) {
  if (k < 2) throw ValidationError("threshold must be >= 2");
  GadgetFragment lb = gadget_lower_bound(k - 1, "m");
  TauInequalitySystem sys = std::move(lb.system);
  const std::string& out = lb.interface_vars.at("output");
  std::string cap = "m.cap";
  sys.add_var(cap);
  put(*sys.partition, (part_of(*sys.partition, out) + 1) % 4, cap);
  sys.add(Sign::LT_TAU, {out, cap});
  sys.strict_vars = true;

  if (!is_tp43(sys)) throw std::logic_error("min-tau system left the arity class");
  if (!check_quadripartite(sys, *sys.partition))
    throw std::logic_error("min-tau system is not quadripartite");
  for (uint32_t tau = 1; tau <= k + 3; tau++) {
    bool feasible = decide(sys, tau).has_value();
    if (feasible != (tau >= k))
      throw std::logic_error("min-tau system misbehaves at tau=" + std::to_string(tau));
  }
  return sys;
}

}  // namespace tastp
