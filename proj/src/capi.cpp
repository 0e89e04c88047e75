#include <cstdlib>
#include <cstring>
#include <sstream>

#include "atam.hpp"
#include "coopsets.hpp"
#include "engine.hpp"
#include "reductions.hpp"
#include "shapegen.hpp"
#include "tastp.h"
#include "textio.hpp"
#include "tp.hpp"

using namespace tastp;

struct tastp_tas {
  Tas v;
};
struct tastp_sftas {
  StrengthFreeTas v;
};
struct tastp_tp {
  TauInequalitySystem v;
};
struct tastp_sat {
  OneInThreeInstance v;
};
struct tastp_shape {
  Shape v;
};

namespace {

thread_local std::string g_error;

char* dup_str(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** slot, const std::string& s) {
  if (slot) *slot = dup_str(s);
}

int fail_code(const std::string& msg, int code) {
  g_error = msg;
  return code;
}

int null_arg() { return fail_code("null argument", TASTP_EINVAL); }

template <typename F>
int guarded(F&& f) {
  g_error.clear();
  try {
    return f();
  } catch (const std::exception& e) {
    return fail_code(e.what(), TASTP_EINVAL);
  }
}

template <typename H, typename F>
H* make_handle(F&& f) {
  g_error.clear();
  try {
    return new H{f()};
  } catch (const std::exception& e) {
    g_error = e.what();
    return nullptr;
  }
}

template <typename F>
char* make_str(F&& f) {
  g_error.clear();
  try {
    return dup_str(f());
  } catch (const std::exception& e) {
    g_error = e.what();
    return nullptr;
  }
}

SimulationBounds to_bounds(const tastp_bounds* b) {
  SimulationBounds out;
  if (!b) return out;
  if (b->max_assemblies) out.max_assemblies = size_t(b->max_assemblies);
  if (b->max_size) out.max_size = size_t(b->max_size);
  if (b->has_region) {
    if (b->x1 < b->x0 || b->y1 < b->y0)
      throw ValidationError("region box corners are out of order");
    long long w = (long long)b->x1 - b->x0 + 1;
    long long h = (long long)b->y1 - b->y0 + 1;
    if (w * h > 4000000) throw ValidationError("region box has over 4000000 cells");
    Shape region;
    for (int x = b->x0; x <= b->x1; x++)
      for (int y = b->y0; y <= b->y1; y++) region.insert({x, y});
    out.region = std::move(region);
  }
  return out;
}

std::string assignment_text(const Assignment& a) {
  std::ostringstream out;
  for (const auto& [name, value] : a) out << name << ' ' << value << "\n";
  return out.str();
}

std::string bool_assignment_text(const BoolAssignment& a) {
  std::ostringstream out;
  for (const auto& [name, value] : a) out << name << ' ' << (value ? 1 : 0) << "\n";
  return out.str();
}

std::string strengths_text(const StrengthFunction& g) {
  std::ostringstream out;
  for (const auto& [label, value] : g.entries()) out << label << ' ' << value << "\n";
  return out.str();
}

std::string plan_text(const ShapePlan& pl) {
  std::ostringstream out;
  out << "h " << pl.h << "\n";
  out << "bit_len " << pl.bit_len << "\n";
  out << "scaffold_len " << pl.scaffold_len << "\n";
  out << "aux_count " << pl.aux_count << "\n";
  out << "instance_count " << pl.instance_count << "\n";
  out << "overhead " << pl.overhead << "\n";
  for (const TreeSpec& ts : pl.tree_specs)
    out << "tree " << ts.id << " type " << dir_char(ts.tree_type) << " bits "
        << ts.bits << " height " << ts.height << "\n";
  for (size_t r = 0; r < pl.component_specs.size(); r++) {
    const ComponentSpec& cs = pl.component_specs[r];
    out << "component " << r
        << (cs.inequality.sign == Sign::GEQ_TAU ? " geq" : " less") << " pillars ";
    for (size_t i = 0; i < cs.pillar_specs.size(); i++)
      out << (i ? "," : "") << cs.pillar_specs[i].id;
    out << " aux " << (cs.aux_spec ? cs.aux_spec->id : "-") << "\n";
  }
  for (const Mount& m : pl.mounts)
    out << "mount " << m.what << ' ' << m.anchor.x << ' ' << m.anchor.y << "\n";
  return out.str();
}

std::string breakdown_text(const std::map<std::string, size_t>& counts) {
  std::ostringstream out;
  for (const auto& [group, n] : counts) out << group << ' ' << n << "\n";
  return out.str();
}

// cross-check the plan against shapes rebuilt through the public per-item
// builders: every mounted footprint must land inside the shape and the
// cell bookkeeping must balance exactly
void verify_build(const Shape& shape, const ShapePlan& pl) {
  if (!is_connected(shape))
    throw ValidationError("verification failed: shape is not connected");
  size_t total = size_t(pl.scaffold_len) + pl.instance_count;
  for (const Mount& m : pl.mounts) {
    size_t hash = m.what.find('#');
    if (hash == std::string::npos)
      throw ValidationError("verification failed: unrecognized mount tag " + m.what);
    std::string item = m.what.substr(0, hash);
    Shape local;
    const TreeSpec* ts = nullptr;
    for (const TreeSpec& cand : pl.tree_specs)
      if (cand.id == item) ts = &cand;
    if (ts) {
      local = build_variable_tree(*ts);
    } else if (item.rfind("row", 0) == 0) {
      size_t r = std::stoul(item.substr(3));
      if (r >= pl.component_specs.size())
        throw ValidationError("verification failed: mount row out of range");
      const ComponentSpec& cs = pl.component_specs[r];
      local = cs.inequality.sign == Sign::GEQ_TAU ? build_geq_component(cs)
                                                  : build_less_component(cs);
    } else {
      throw ValidationError("verification failed: unrecognized mount tag " + m.what);
    }
    for (Position p : local)
      if (!shape.count({p.x + m.anchor.x, p.y + m.anchor.y}))
        throw ValidationError("verification failed: mounted cells of " + m.what +
                              " fall outside the shape");
    total += local.size();
  }
  if (total != shape.size())
    throw ValidationError("verification failed: plan cell bookkeeping is off");
}

}  // namespace

extern "C" {

const char* tastp_version(void) { return "0.1.0"; }

const char* tastp_last_error(void) { return g_error.c_str(); }

void tastp_free_str(char* s) { std::free(s); }

/* ---- parsing and serialization ---- */

tastp_tas* tastp_tas_parse(const char* text) {
  if (!text) return (null_arg(), nullptr);
  return make_handle<tastp_tas>([&] { return read_tas(text); });
}

char* tastp_tas_write(const tastp_tas* t) {
  if (!t) return (null_arg(), nullptr);
  return make_str([&] { return write_tas(t->v); });
}

void tastp_tas_free(tastp_tas* t) { delete t; }

tastp_sftas* tastp_sftas_parse(const char* text) {
  if (!text) return (null_arg(), nullptr);
  return make_handle<tastp_sftas>([&] { return read_sftas(text); });
}

char* tastp_sftas_write(const tastp_sftas* s) {
  if (!s) return (null_arg(), nullptr);
  return make_str([&] { return write_sftas(s->v); });
}

void tastp_sftas_free(tastp_sftas* s) { delete s; }

tastp_tp* tastp_tp_parse(const char* text) {
  if (!text) return (null_arg(), nullptr);
  return make_handle<tastp_tp>([&] { return read_tp(text); });
}

char* tastp_tp_write(const tastp_tp* s) {
  if (!s) return (null_arg(), nullptr);
  return make_str([&] { return write_tp(s->v); });
}

void tastp_tp_free(tastp_tp* s) { delete s; }

tastp_sat* tastp_sat_parse(const char* text) {
  if (!text) return (null_arg(), nullptr);
  return make_handle<tastp_sat>([&] { return read_sat(text); });
}

char* tastp_sat_write(const tastp_sat* s) {
  if (!s) return (null_arg(), nullptr);
  return make_str([&] { return write_sat(s->v); });
}

void tastp_sat_free(tastp_sat* s) { delete s; }

tastp_shape* tastp_shape_parse(const char* text) {
  if (!text) return (null_arg(), nullptr);
  return make_handle<tastp_shape>([&] { return read_shape(text); });
}

char* tastp_shape_write(const tastp_shape* s) {
  if (!s) return (null_arg(), nullptr);
  return make_str([&] { return write_shape(s->v); });
}

void tastp_shape_free(tastp_shape* s) { delete s; }

/* ---- inequality systems ---- */

int tastp_tp_decide(const tastp_tp* sys, uint32_t tau, char** witness) {
  if (witness) *witness = nullptr;
  if (!sys) return null_arg();
  return guarded([&] {
    if (tau < 1) throw ValidationError("tau must be positive");
    auto sol = decide(sys->v, tau);
    if (!sol) return TASTP_NO;
    put(witness, assignment_text(*sol));
    return TASTP_OK;
  });
}

int tastp_tp_minimize(const tastp_tp* sys, uint32_t tau_max, uint32_t* tau_out,
                      char** witness) {
  if (witness) *witness = nullptr;
  if (!sys || !tau_out) return null_arg();
  return guarded([&] {
    if (tau_max < 1) throw ValidationError("tau_max must be positive");
    auto best = minimize_tau(sys->v, tau_max);
    if (!best) return TASTP_NO;
    *tau_out = best->first;
    put(witness, assignment_text(best->second));
    return TASTP_OK;
  });
}

int tastp_tp_is_quadripartite(const tastp_tp* sys) {
  if (!sys) return null_arg();
  return guarded([&] {
    if (!sys->v.partition)
      throw ValidationError("system carries no partition");
    return check_quadripartite(sys->v, *sys->v.partition) ? TASTP_OK : TASTP_NO;
  });
}

/* ---- reductions ---- */

int tastp_sat_solve(const tastp_sat* inst, char** assignment) {
  if (assignment) *assignment = nullptr;
  if (!inst) return null_arg();
  return guarded([&] {
    auto a = brute_force_1in3(inst->v);
    if (!a) return TASTP_NO;
    put(assignment, bool_assignment_text(*a));
    return TASTP_OK;
  });
}

tastp_sat* tastp_sat_reduce_quad(const tastp_sat* inst) {
  if (!inst) return (null_arg(), nullptr);
  return make_handle<tastp_sat>([&] { return monotone_to_quadripartite(inst->v); });
}

tastp_tp* tastp_sat_reduce_tp(const tastp_sat* inst, uint32_t tau) {
  if (!inst) return (null_arg(), nullptr);
  return make_handle<tastp_tp>([&] { return quad1in3_to_tp(inst->v, tau); });
}

tastp_tp* tastp_sat_reduce_tp_min(const tastp_sat* inst) {
  if (!inst) return (null_arg(), nullptr);
  return make_handle<tastp_tp>([&] { return tp_min_variant(inst->v); });
}

tastp_sftas* tastp_tp_reduce_sftas(const tastp_tp* sys) {
  if (!sys) return (null_arg(), nullptr);
  return make_handle<tastp_sftas>([&] { return tp_to_sftas(sys->v); });
}

/* ---- strength-free tile sets ---- */

int tastp_sftas_find_strength(const tastp_sftas* sf, uint32_t tau,
                              char** strengths) {
  if (strengths) *strengths = nullptr;
  if (!sf) return null_arg();
  return guarded([&] {
    if (tau < 1) throw ValidationError("tau must be positive");
    auto g = find_strength(sf->v, tau);
    if (!g) return TASTP_NO;
    put(strengths, strengths_text(*g));
    return TASTP_OK;
  });
}

int tastp_sftas_find_opt(const tastp_sftas* sf, uint32_t tau_max,
                         uint32_t* tau_out, char** strengths) {
  if (strengths) *strengths = nullptr;
  if (!sf || !tau_out) return null_arg();
  return guarded([&] {
    if (tau_max < 1) throw ValidationError("tau_max must be positive");
    auto best = find_opt_strength(sf->v, tau_max);
    if (!best) return TASTP_NO;
    *tau_out = best->second;
    put(strengths, strengths_text(best->first));
    return TASTP_OK;
  });
}

tastp_tp* tastp_sftas_inequalities(const tastp_sftas* sf) {
  if (!sf) return (null_arg(), nullptr);
  return make_handle<tastp_tp>([&] { return sftas_to_inequalities(sf->v); });
}

tastp_sftas* tastp_tas_strength_free(const tastp_tas* t) {
  if (!t) return (null_arg(), nullptr);
  return make_handle<tastp_sftas>([&] { return strength_free(t->v); });
}

int tastp_tas_locally_equivalent(const tastp_tas* a, const tastp_tas* b) {
  if (!a || !b) return null_arg();
  return guarded([&] { return locally_equivalent(a->v, b->v) ? TASTP_OK : TASTP_NO; });
}

/* ---- shapes and witness tile sets ---- */

int tastp_shape_heights(const tastp_tp* sys, uint32_t* min_out, uint32_t* def_out) {
  if (!sys) return null_arg();
  return guarded([&] {
    if (min_out) *min_out = min_height(sys->v);
    if (def_out) *def_out = default_height(sys->v);
    return TASTP_OK;
  });
}

int tastp_shape_build(const tastp_tp* sys, uint32_t height, int verify,
                      tastp_shape** shape_out, char** plan) {
  if (shape_out) *shape_out = nullptr;
  if (plan) *plan = nullptr;
  if (!sys) return null_arg();
  return guarded([&] {
    const TauInequalitySystem& s = sys->v;
    if (!s.partition) throw ValidationError("system carries no partition");
    uint32_t h = height ? height : default_height(s);
    auto [shape, pl] = build_shape(s, *s.partition, h);
    if (verify) verify_build(shape, pl);
    put(plan, plan_text(pl));
    if (shape_out) *shape_out = new tastp_shape{std::move(shape)};
    return TASTP_OK;
  });
}

int tastp_shape_witness(const tastp_tp* sys, uint32_t tau, uint32_t height,
                        tastp_tas** tas_out, char** breakdown) {
  if (tas_out) *tas_out = nullptr;
  if (breakdown) *breakdown = nullptr;
  if (!sys) return null_arg();
  return guarded([&] {
    const TauInequalitySystem& s = sys->v;
    if (!s.partition) throw ValidationError("system carries no partition");
    if (tau < 1) throw ValidationError("tau must be positive");
    uint32_t h = height ? height : default_height(s);
    // the builder needs every value in [1, tau): positive so each tip carries
    // a real bond, below tau so no tip attaches without cooperation
    TauInequalitySystem probe = s;
    probe.strict_vars = true;
    auto sol = decide_positive(probe, tau);
    if (!sol) return TASTP_NO;
    WitnessTas w = build_witness_tas(s, *s.partition, *sol, tau, h);
    put(breakdown, breakdown_text(w.type_count_breakdown));
    if (tas_out) *tas_out = new tastp_tas{std::move(w.tas)};
    return TASTP_OK;
  });
}

char* tastp_shape_render(const tastp_shape* s, int svg) {
  if (!s) return (null_arg(), nullptr);
  return make_str(
      [&] { return render_shape(s->v, svg ? RenderStyle::svg : RenderStyle::ascii); });
}

/* ---- simulation ---- */

char* tastp_sim_frontier(const tastp_tas* t, const char* assembly_text) {
  if (!t) return (null_arg(), nullptr);
  return make_str([&] {
    Assembly a = assembly_text ? read_assembly(assembly_text, t->v) : t->v.seed;
    std::ostringstream out;
    for (const AttachmentEvent& e : frontier(t->v, a))
      out << e.position.x << ' ' << e.position.y << ' ' << t->v.name_of(e.tile)
          << ' ' << e.strength << "\n";
    return out.str();
  });
}

int tastp_sim_terminals(const tastp_tas* t, const tastp_bounds* bounds,
                        char** report) {
  if (report) *report = nullptr;
  if (!t) return null_arg();
  return guarded([&] {
    TerminalReport rep = terminal_assemblies(t->v, to_bounds(bounds));
    if (rep.exceeded)
      return fail_code("resource budget exceeded after exploring " +
                           std::to_string(rep.explored) + " assemblies",
                       TASTP_LIMIT);
    std::ostringstream out;
    out << "terminals " << rep.terminals.size() << "\n";
    for (const Assembly& a : rep.terminals) out << "\n" << write_assembly(a, t->v);
    put(report, out.str());
    return TASTP_OK;
  });
}

int tastp_sim_strict(const tastp_tas* t, const tastp_shape* s,
                     const tastp_bounds* bounds, char** witness) {
  if (witness) *witness = nullptr;
  if (!t || !s) return null_arg();
  return guarded([&] {
    StrictAssemblyVerdict v = strictly_self_assembles(t->v, s->v, to_bounds(bounds));
    switch (v.outcome) {
      case Verdict::yes:
        return TASTP_OK;
      case Verdict::no:
        if (v.witness) put(witness, write_assembly(*v.witness, t->v));
        return TASTP_NO;
      default:
        return fail_code("resource budget exceeded", TASTP_LIMIT);
    }
  });
}

int tastp_sim_directed(const tastp_tas* t, const tastp_bounds* bounds) {
  if (!t) return null_arg();
  return guarded([&] {
    switch (is_directed(t->v, to_bounds(bounds))) {
      case Verdict::yes:
        return TASTP_OK;
      case Verdict::no:
        return TASTP_NO;
      default:
        return fail_code("resource budget exceeded", TASTP_LIMIT);
    }
  });
}

/* ---- micro tile-complexity oracle ---- */

int tastp_oracle_tile_complexity(const tastp_shape* s, uint32_t tau, int up_to,
                                 uint32_t max_types, uint32_t max_labels,
                                 uint32_t* k_out) {
  if (!s || !k_out) return null_arg();
  return guarded([&] {
    auto k = up_to ? tile_complexity_up_to(s->v, tau, max_types, max_labels)
                   : tile_complexity_oracle(s->v, tau, max_types, max_labels);
    if (!k) return TASTP_NO;
    *k_out = *k;
    return TASTP_OK;
  });
}

}  // extern "C"
