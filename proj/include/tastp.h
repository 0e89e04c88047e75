#ifndef TASTP_H
#define TASTP_H

/* C interface to the tile self-assembly workbench: temperature-threshold
 * inequality systems, one-in-three SAT reductions, cooperation-set search,
 * shape and witness construction, and bounded simulation.
 *
 * Conventions: every object is an opaque handle created by a *_parse call
 * and released by the matching *_free. Handle inputs and outputs use the
 * library's text formats throughout. Functions returning int use the
 * TASTP_* status codes; functions returning pointers yield NULL on error.
 * On EINVAL and LIMIT the per-thread message of tastp_last_error() is set;
 * it stays valid until the same thread calls into the library again.
 * Strings returned through char* or char** are heap copies the caller
 * releases with tastp_free_str. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define TASTP_OK 0     /* success / affirmative answer */
#define TASTP_NO 1     /* clean negative answer (infeasible, unsat, no) */
#define TASTP_EINVAL 2 /* malformed input, bad argument, unusable state */
#define TASTP_LIMIT 3  /* resource budget exceeded before an answer */

typedef struct tastp_tas tastp_tas;     /* tile set with glue strengths */
typedef struct tastp_sftas tastp_sftas; /* strength-free tile set */
typedef struct tastp_tp tastp_tp;       /* temperature inequality system */
typedef struct tastp_sat tastp_sat;     /* one-in-three instance */
typedef struct tastp_shape tastp_shape; /* set of unit cells */

/* simulation budgets; pass NULL anywhere a tastp_bounds* is accepted to use
 * the defaults. a zero max_* field also means default. when has_region is
 * nonzero, growth outside the inclusive box [x0,x1] x [y0,y1] is treated as
 * out of budget. */
typedef struct tastp_bounds {
  int has_region;
  int x0, y0, x1, y1;
  uint64_t max_assemblies;
  uint64_t max_size;
} tastp_bounds;

const char* tastp_version(void);
const char* tastp_last_error(void);
void tastp_free_str(char* s);

/* ---- parsing and serialization ---- */

tastp_tas* tastp_tas_parse(const char* text);
char* tastp_tas_write(const tastp_tas* t);
void tastp_tas_free(tastp_tas* t);

tastp_sftas* tastp_sftas_parse(const char* text);
char* tastp_sftas_write(const tastp_sftas* s);
void tastp_sftas_free(tastp_sftas* s);

tastp_tp* tastp_tp_parse(const char* text);
char* tastp_tp_write(const tastp_tp* s);
void tastp_tp_free(tastp_tp* s);

tastp_sat* tastp_sat_parse(const char* text);
char* tastp_sat_write(const tastp_sat* s);
void tastp_sat_free(tastp_sat* s);

tastp_shape* tastp_shape_parse(const char* text);
char* tastp_shape_write(const tastp_shape* s);
void tastp_shape_free(tastp_shape* s);

/* ---- inequality systems ---- */

/* OK: feasible at tau, witness set to "name value" lines.
 * NO: infeasible. witness may be NULL when the caller only wants the bit. */
int tastp_tp_decide(const tastp_tp* sys, uint32_t tau, char** witness);

/* least feasible temperature in [1, tau_max]. OK sets *tau_out and the
 * witness; NO means infeasible across the whole range. */
int tastp_tp_minimize(const tastp_tp* sys, uint32_t tau_max, uint32_t* tau_out,
                      char** witness);

/* OK: the system carries a partition and no row touches a part twice.
 * NO: it carries one that some row violates. EINVAL: no partition. */
int tastp_tp_is_quadripartite(const tastp_tp* sys);

/* ---- reductions ---- */

/* OK: satisfiable with exactly one true literal per clause; assignment is
 * "name 0|1" lines. NO: unsatisfiable. */
int tastp_sat_solve(const tastp_sat* inst, char** assignment);

/* monotone instance -> equisatisfiable four-part instance */
tastp_sat* tastp_sat_reduce_quad(const tastp_sat* inst);

/* four-part instance -> inequality system feasible at tau iff satisfiable;
 * tau >= 4 */
tastp_tp* tastp_sat_reduce_tp(const tastp_sat* inst, uint32_t tau);

/* four-part instance -> the temperature-minimization system whose least
 * feasible temperature is 4 exactly when the instance is satisfiable */
tastp_tp* tastp_sat_reduce_tp_min(const tastp_sat* inst);

/* clause-shaped system -> strength-free tile set whose realizable
 * temperatures match the system's feasible ones */
tastp_sftas* tastp_tp_reduce_sftas(const tastp_tp* sys);

/* ---- strength-free tile sets ---- */

/* OK: a strength function realizes the cooperation behavior at tau;
 * strengths is "label value" lines. NO: none exists at tau. */
int tastp_sftas_find_strength(const tastp_sftas* sf, uint32_t tau,
                              char** strengths);

/* least realizable temperature in [1, tau_max]; OK sets *tau_out */
int tastp_sftas_find_opt(const tastp_sftas* sf, uint32_t tau_max,
                         uint32_t* tau_out, char** strengths);

/* the inequality system whose solutions at tau are exactly the strength
 * functions realizing this cooperation behavior */
tastp_tp* tastp_sftas_inequalities(const tastp_sftas* sf);

/* forget concrete strengths, keep each tile's cooperation behavior */
tastp_sftas* tastp_tas_strength_free(const tastp_tas* t);

/* OK: same tiles, same seed, same cooperation set for every tile. NO: not. */
int tastp_tas_locally_equivalent(const tastp_tas* a, const tastp_tas* b);

/* ---- shapes and witness tile sets ---- */

/* smallest accepted tree height and the default height for this system */
int tastp_shape_heights(const tastp_tp* sys, uint32_t* min_out, uint32_t* def_out);

/* build the system's target shape. height 0 means the default. when verify
 * is nonzero the plan bookkeeping is cross-checked against shapes rebuilt
 * through the public per-item builders, failing with EINVAL on mismatch.
 * plan receives a structured text report of specs, offsets and constants;
 * shape_out and plan may be NULL independently. */
int tastp_shape_build(const tastp_tp* sys, uint32_t height, int verify,
                      tastp_shape** shape_out, char** plan);

/* a tile set that strictly self-assembles the system's shape, built from a
 * solution found at tau with every variable in [1, tau) (NO when no such
 * solution exists). breakdown receives "group count" lines summing to the
 * tile type count. */
int tastp_shape_witness(const tastp_tp* sys, uint32_t tau, uint32_t height,
                        tastp_tas** tas_out, char** breakdown);

/* render to ASCII art (svg = 0) or an SVG document (svg nonzero) */
char* tastp_shape_render(const tastp_shape* s, int svg);

/* ---- simulation ---- */

/* attachable (position, tile, strength) events as "x y name strength"
 * lines, for the given assembly text or for the seed when assembly_text is
 * NULL. empty result means a terminal assembly. */
char* tastp_sim_frontier(const tastp_tas* t, const char* assembly_text);

/* exhaustive terminal enumeration under bounds. OK: report holds a
 * "terminals <n>" header plus one "x y name" block per terminal, blocks
 * separated by blank lines. LIMIT: budget hit first. */
int tastp_sim_terminals(const tastp_tas* t, const tastp_bounds* bounds,
                        char** report);

/* OK: the tile set grows exactly the given shape in every execution.
 * NO: it does not; witness receives an offending assembly. LIMIT: budget. */
int tastp_sim_strict(const tastp_tas* t, const tastp_shape* s,
                     const tastp_bounds* bounds, char** witness);

/* OK: every execution leads to the one terminal assembly. NO / LIMIT. */
int tastp_sim_directed(const tastp_tas* t, const tastp_bounds* bounds);

/* ---- micro tile-complexity oracle ---- */

/* least tile-type count that strictly self-assembles the shape at the given
 * temperature (or across temperatures 1..tau when up_to is nonzero), within
 * max_types and max_labels. OK sets *k_out; NO: none within the caps.
 * hard limits: at most 6 cells, 4 types, 4 labels. */
int tastp_oracle_tile_complexity(const tastp_shape* s, uint32_t tau, int up_to,
                                 uint32_t max_types, uint32_t max_labels,
                                 uint32_t* k_out);

#ifdef __cplusplus
}
#endif

#endif /* TASTP_H */
