#include <string>

#include "doctest.h"
#include "tastp.h"

namespace {

// adopt a library string and release it
std::string take(char* s) {
  std::string out = s ? s : "";
  tastp_free_str(s);
  return out;
}

const char* kBalanced =
    "vars: l1 l2 l3 l4\n"
    "l1 + l2 + l3 + l4 >= TAU\n"
    "l1 + l2 + l3 < TAU\n"
    "l1 + l2 + l4 < TAU\n"
    "l1 + l3 + l4 < TAU\n"
    "l2 + l3 + l4 < TAU\n";

const char* kTinyLine =
    "tau 1\n"
    "tiles:\n"
    "s N= W= S= E=a\n"
    "t N= W=a S= E=\n"
    "strengths:\n"
    "a 1\n"
    "seed:\n"
    "0 0 s\n";

const char* kOneRow =
    "vars: a b\n"
    "partition: N=a W=b S= E=\n"
    "a + b >= TAU\n";

}  // namespace

TEST_CASE("versioning and error reporting") {
  CHECK(std::string(tastp_version()) == "0.1.0");
  CHECK(tastp_tas_parse("not a tile set") == nullptr);
  CHECK(std::string(tastp_last_error()).find("line") != std::string::npos);
  tastp_tas* ok = tastp_tas_parse(kTinyLine);
  REQUIRE(ok);
  CHECK(std::string(tastp_last_error()).empty());  // cleared by success
  tastp_tas_free(ok);
  CHECK(tastp_tas_parse(nullptr) == nullptr);
  CHECK(std::string(tastp_last_error()) == "null argument");
}

TEST_CASE("handles round-trip their text") {
  tastp_tas* t = tastp_tas_parse(kTinyLine);
  REQUIRE(t);
  std::string text = take(tastp_tas_write(t));
  tastp_tas* t2 = tastp_tas_parse(text.c_str());
  REQUIRE(t2);
  CHECK(take(tastp_tas_write(t2)) == text);
  tastp_tas_free(t);
  tastp_tas_free(t2);

  tastp_tp* sys = tastp_tp_parse(kBalanced);
  REQUIRE(sys);
  std::string sys_text = take(tastp_tp_write(sys));
  tastp_tp* sys2 = tastp_tp_parse(sys_text.c_str());
  REQUIRE(sys2);
  CHECK(take(tastp_tp_write(sys2)) == sys_text);
  tastp_tp_free(sys);
  tastp_tp_free(sys2);

  tastp_shape* s = tastp_shape_parse("0 0\n1 0\n1 1\n");
  REQUIRE(s);
  CHECK(take(tastp_shape_write(s)) == "0 0\n1 0\n1 1\n");
  tastp_shape_free(s);
}

TEST_CASE("threshold decisions") {
  tastp_tp* sys = tastp_tp_parse(kBalanced);
  REQUIRE(sys);

  char* witness = nullptr;
  CHECK(tastp_tp_decide(sys, 3, &witness) == TASTP_NO);
  CHECK(witness == nullptr);
  CHECK(tastp_tp_decide(sys, 4, &witness) == TASTP_OK);
  CHECK(take(witness) == "l1 1\nl2 1\nl3 1\nl4 1\n");

  uint32_t best = 0;
  CHECK(tastp_tp_minimize(sys, 10, &best, &witness) == TASTP_OK);
  CHECK(best == 4);
  CHECK(take(witness).find("l1 1") == 0);
  CHECK(tastp_tp_minimize(sys, 3, &best, nullptr) == TASTP_NO);

  CHECK(tastp_tp_decide(sys, 0, nullptr) == TASTP_EINVAL);
  CHECK(tastp_tp_decide(nullptr, 4, nullptr) == TASTP_EINVAL);
  CHECK(tastp_tp_is_quadripartite(sys) == TASTP_EINVAL);  // no partition
  tastp_tp_free(sys);

  tastp_tp* quad = tastp_tp_parse(kOneRow);
  REQUIRE(quad);
  CHECK(tastp_tp_is_quadripartite(quad) == TASTP_OK);
  tastp_tp_free(quad);
}

TEST_CASE("reduction pipeline end to end") {
  tastp_sat* sat = tastp_sat_parse("vars: x y z\nx y z\n");
  REQUIRE(sat);
  char* assignment = nullptr;
  REQUIRE(tastp_sat_solve(sat, &assignment) == TASTP_OK);
  CHECK(take(assignment).find("x 1") != std::string::npos);

  tastp_sat* quad = tastp_sat_reduce_quad(sat);
  REQUIRE(quad);
  std::string quad_text = take(tastp_sat_write(quad));
  CHECK(quad_text.find("part U1:") != std::string::npos);
  CHECK(tastp_sat_solve(quad, nullptr) == TASTP_OK);

  tastp_tp* tp4 = tastp_sat_reduce_tp(quad, 4);
  REQUIRE(tp4);
  CHECK(tastp_tp_is_quadripartite(tp4) == TASTP_OK);
  CHECK(tastp_tp_decide(tp4, 4, nullptr) == TASTP_OK);

  tastp_tp* tpmin = tastp_sat_reduce_tp_min(quad);
  REQUIRE(tpmin);
  uint32_t best = 0;
  CHECK(tastp_tp_minimize(tpmin, 4, &best, nullptr) == TASTP_OK);
  CHECK(best == 4);

  tastp_sftas* sf = tastp_tp_reduce_sftas(tpmin);
  REQUIRE(sf);
  char* strengths = nullptr;
  CHECK(tastp_sftas_find_strength(sf, 4, &strengths) == TASTP_OK);
  CHECK(!take(strengths).empty());
  uint32_t opt = 0;
  CHECK(tastp_sftas_find_opt(sf, 6, &opt, nullptr) == TASTP_OK);
  CHECK(opt == 4);

  std::string sf_text = take(tastp_sftas_write(sf));
  tastp_sftas* sf2 = tastp_sftas_parse(sf_text.c_str());
  REQUIRE(sf2);
  CHECK(take(tastp_sftas_write(sf2)) == sf_text);

  tastp_tp* liberated = tastp_sftas_inequalities(sf);
  REQUIRE(liberated);
  CHECK(take(tastp_tp_write(liberated)).find("TAU") != std::string::npos);

  tastp_tp_free(liberated);
  tastp_sftas_free(sf2);
  tastp_sftas_free(sf);
  tastp_tp_free(tpmin);
  tastp_tp_free(tp4);
  tastp_sat_free(quad);
  tastp_sat_free(sat);
}

TEST_CASE("unsatisfiable instances answer no everywhere") {
  tastp_sat* sat = tastp_sat_parse(
      "vars: a b c d\n"
      "a b c\n"
      "a b d\n"
      "a c d\n"
      "b c d\n");
  REQUIRE(sat);
  CHECK(tastp_sat_solve(sat, nullptr) == TASTP_NO);
  tastp_sat* quad = tastp_sat_reduce_quad(sat);
  REQUIRE(quad);
  CHECK(tastp_sat_solve(quad, nullptr) == TASTP_NO);
  tastp_tp* tpmin = tastp_sat_reduce_tp_min(quad);
  REQUIRE(tpmin);
  uint32_t best = 0;
  CHECK(tastp_tp_minimize(tpmin, 4, &best, nullptr) == TASTP_NO);
  tastp_tp_free(tpmin);
  tastp_sat_free(quad);
  tastp_sat_free(sat);
}

TEST_CASE("shape building and witness simulation") {
  tastp_tp* sys = tastp_tp_parse(kOneRow);
  REQUIRE(sys);

  uint32_t mn = 0, def = 0;
  REQUIRE(tastp_shape_heights(sys, &mn, &def) == TASTP_OK);
  CHECK(mn <= 6);
  CHECK(def >= mn);

  tastp_shape* shape = nullptr;
  char* plan = nullptr;
  REQUIRE(tastp_shape_build(sys, 6, 1, &shape, &plan) == TASTP_OK);
  REQUIRE(shape);
  std::string plan_text = take(plan);
  CHECK(plan_text.find("h 6") == 0);
  CHECK(plan_text.find("scaffold_len") != std::string::npos);
  CHECK(plan_text.find("mount a#1") != std::string::npos);

  std::string ascii = take(tastp_shape_render(shape, 0));
  CHECK(ascii.find('#') != std::string::npos);
  std::string svg = take(tastp_shape_render(shape, 1));
  CHECK(svg.find("<svg") != std::string::npos);

  tastp_tas* witness = nullptr;
  char* breakdown = nullptr;
  REQUIRE(tastp_shape_witness(sys, 4, 6, &witness, &breakdown) == TASTP_OK);
  REQUIRE(witness);
  CHECK(take(breakdown).find("scaffold") != std::string::npos);

  CHECK(tastp_sim_strict(witness, shape, nullptr, nullptr) == TASTP_OK);
  CHECK(tastp_sim_directed(witness, nullptr) == TASTP_OK);

  std::string events = take(tastp_sim_frontier(witness, nullptr));
  CHECK(!events.empty());

  // at tau=1 no value fits in [1, tau), so there is no usable witness
  CHECK(tastp_shape_witness(sys, 1, 6, nullptr, nullptr) == TASTP_NO);

  // feasible only by zeroing b: satisfiable for the decision procedure, but
  // a witness needs every strength positive, so the builder reports NO
  tastp_tp* forced = tastp_tp_parse(
      "vars: a b\npartition: N=a W=b S= E=\n"
      "a + b >= TAU\nb + b + b + b < TAU\n");
  REQUIRE(forced);
  char* forced_sol = nullptr;
  CHECK(tastp_tp_decide(forced, 4, &forced_sol) == TASTP_OK);
  CHECK(take(forced_sol).find("b 0") != std::string::npos);
  CHECK(tastp_shape_witness(forced, 4, 6, nullptr, nullptr) == TASTP_NO);
  tastp_tp_free(forced);

  tastp_tas_free(witness);
  tastp_shape_free(shape);
  tastp_tp_free(sys);
}

TEST_CASE("bounded simulation reports limits") {
  tastp_tas* t = tastp_tas_parse(kTinyLine);
  REQUIRE(t);

  char* report = nullptr;
  REQUIRE(tastp_sim_terminals(t, nullptr, &report) == TASTP_OK);
  std::string full = take(report);
  CHECK(full.find("terminals 1") == 0);
  CHECK(full.find("1 0 t") != std::string::npos);

  tastp_bounds tight{};
  tight.max_size = 1;
  CHECK(tastp_sim_terminals(t, &tight, &report) == TASTP_LIMIT);
  CHECK(std::string(tastp_last_error()).find("exceeded") != std::string::npos);

  tastp_bounds fenced{};
  fenced.has_region = 1;
  fenced.x0 = 0;
  fenced.y0 = 0;
  fenced.x1 = 0;
  fenced.y1 = 0;
  CHECK(tastp_sim_terminals(t, &fenced, &report) == TASTP_LIMIT);

  tastp_bounds bad{};
  bad.has_region = 1;
  bad.x1 = -1;
  CHECK(tastp_sim_terminals(t, &bad, &report) == TASTP_EINVAL);

  // the two-cell line is exactly what the system grows
  tastp_shape* line = tastp_shape_parse("0 0\n1 0\n");
  REQUIRE(line);
  CHECK(tastp_sim_strict(t, line, nullptr, nullptr) == TASTP_OK);
  tastp_shape_free(line);

  tastp_shape* off = tastp_shape_parse("0 0\n0 1\n");
  REQUIRE(off);
  char* bad_witness = nullptr;
  CHECK(tastp_sim_strict(t, off, nullptr, &bad_witness) == TASTP_NO);
  CHECK(take(bad_witness).find("1 0 t") != std::string::npos);  // escape east
  tastp_shape_free(off);

  CHECK(tastp_sim_directed(t, nullptr) == TASTP_OK);
  CHECK(tastp_sim_frontier(t, "0 0 nosuch\n") == nullptr);
  CHECK(!std::string(tastp_last_error()).empty());
  tastp_tas_free(t);
}

TEST_CASE("local equivalence across scaled strengths") {
  tastp_tas* one = tastp_tas_parse(kTinyLine);
  tastp_tas* two = tastp_tas_parse(
      "tau 2\n"
      "tiles:\n"
      "s N= W= S= E=a\n"
      "t N= W=a S= E=\n"
      "strengths:\n"
      "a 2\n"
      "seed:\n"
      "0 0 s\n");
  REQUIRE(one);
  REQUIRE(two);
  CHECK(tastp_tas_locally_equivalent(one, two) == TASTP_OK);

  tastp_sftas* sf = tastp_tas_strength_free(one);
  REQUIRE(sf);
  CHECK(take(tastp_sftas_write(sf)).find("coop") != std::string::npos);
  tastp_sftas_free(sf);
  tastp_tas_free(one);
  tastp_tas_free(two);
}

TEST_CASE("micro oracle") {
  tastp_shape* single = tastp_shape_parse("0 0\n");
  tastp_shape* duo = tastp_shape_parse("0 0\n1 0\n");
  REQUIRE(single);
  REQUIRE(duo);
  uint32_t k = 0;
  CHECK(tastp_oracle_tile_complexity(single, 1, 0, 4, 4, &k) == TASTP_OK);
  CHECK(k == 1);
  CHECK(tastp_oracle_tile_complexity(duo, 1, 0, 4, 4, &k) == TASTP_OK);
  CHECK(k == 2);
  CHECK(tastp_oracle_tile_complexity(duo, 2, 1, 4, 4, &k) == TASTP_OK);
  CHECK(k == 2);
  CHECK(tastp_oracle_tile_complexity(duo, 1, 0, 1, 4, &k) == TASTP_NO);

  tastp_shape* wide = tastp_shape_parse("0 0\n1 0\n2 0\n3 0\n4 0\n5 0\n6 0\n");
  REQUIRE(wide);
  CHECK(tastp_oracle_tile_complexity(wide, 1, 0, 4, 4, &k) == TASTP_EINVAL);
  tastp_shape_free(wide);
  tastp_shape_free(duo);
  tastp_shape_free(single);
}
