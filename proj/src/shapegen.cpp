#include "shapegen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tastp {
namespace {

// cells of one tree with assembly-order parents, relative to the port cell
// at (0,0). the base cell's parent lies on the baseline below it and is not
// itself a tree cell.
struct tree_layout {
  std::map<Position, Position> parent;
  Position tip{};
  Position base{};
};

uint32_t bit_len_for(size_t tree_count) {
  uint32_t b = 0;
  while ((size_t(1) << b) < tree_count) b++;
  return b;
}

std::string bits_for(size_t index, uint32_t width) {
  std::string out(width, '0');
  for (uint32_t k = 0; k < width; k++)
    if (index >> (width - 1 - k) & 1) out[k] = '1';
  return out;
}

void check_tree_spec(const TreeSpec& spec) {
  if (spec.id.empty()) throw ValidationError("tree id must be nonempty");
  for (char c : spec.bits)
    if (c != '0' && c != '1')
      throw ValidationError("tree bits must be a 0/1 string");
  uint32_t b = uint32_t(spec.bits.size());
  // the trunk must out-rise the bit pattern and the bit run must stay above
  // the baseline
  if (spec.height < b + 4 || spec.height < 2 * b)
    throw ValidationError("tree height too small for its bit pattern");
}

tree_layout layout_tree(const TreeSpec& spec) {
  check_tree_spec(spec);
  int h = int(spec.height);
  int B = int(spec.bits.size());
  tree_layout t;
  auto put = [&](int x, int y, int px, int py) {
    if (!t.parent.emplace(Position{x, y}, Position{px, py}).second)
      throw std::logic_error("tree layout places a cell twice");
  };
  switch (spec.tree_type) {
    case Dir::S:
      // tip and trunk share the port column, the bit run hugs the trunk
      t.tip = {0, -1};
      t.base = {0, -(h + 1)};
      put(0, -1, 0, -2);
      for (int y = -2; y >= -(h + 1); y--) put(0, y, 0, y - 1);
      if (B > 0) {
        put(1, -2, 0, -2);
        for (int y = -3; y >= -(2 * B + 1); y--) put(1, y, 1, y + 1);
        for (int j = 1; j <= B; j++)
          if (spec.bits[size_t(j) - 1] == '1')
            put(2, -(2 * j + 1), 1, -(2 * j + 1));
      }
      break;
    case Dir::W:
      // a short arm pushes the trunk clear of the port column
      t.tip = {-1, 0};
      t.base = {-4, -(h + 1)};
      put(-1, 0, -2, 0);
      put(-2, 0, -3, 0);
      put(-3, 0, -4, 0);
      for (int y = 0; y >= -(h + 1); y--) put(-4, y, -4, y - 1);
      if (B > 0) {
        put(-2, -1, -2, 0);
        for (int y = -2; y >= -2 * B; y--) put(-2, y, -2, y + 1);
        for (int j = 1; j <= B; j++)
          if (spec.bits[size_t(j) - 1] == '1') put(-3, -2 * j, -2, -2 * j);
      }
      break;
    case Dir::E:
      t.tip = {1, 0};
      t.base = {4, -(h + 1)};
      put(1, 0, 2, 0);
      put(2, 0, 3, 0);
      put(3, 0, 4, 0);
      for (int y = 0; y >= -(h + 1); y--) put(4, y, 4, y - 1);
      if (B > 0) {
        put(2, 1, 2, 0);
        for (int y = 2; y <= 2 * B; y++) put(2, y, 2, y - 1);
        for (int j = 1; j <= B; j++)
          if (spec.bits[size_t(j) - 1] == '1') put(3, 2 * j, 2, 2 * j);
      }
      break;
    case Dir::N: {
      // the trunk rises east of the port, an overhead arm carries a riser
      // back down to the tip; the arm row clears every bit run
      int K = std::max(3, 2 * B + 1);
      t.tip = {0, 1};
      t.base = {6, -(h + 1)};
      put(0, 1, 0, 2);
      put(0, K, 1, K);
      for (int y = K - 1; y >= 2; y--) put(0, y, 0, y + 1);
      for (int x = 1; x <= 5; x++) put(x, K, x + 1, K);
      put(6, K, 6, K - 1);
      for (int y = K - 1; y >= -(h + 1); y--) put(6, y, 6, y - 1);
      if (B > 0) {
        put(-1, 2, 0, 2);
        for (int y = 3; y <= 2 * B + 1; y++) put(-1, y, -1, y - 1);
        for (int j = 1; j <= B; j++)
          if (spec.bits[size_t(j) - 1] == '1')
            put(-2, 2 * j + 1, -1, 2 * j + 1);
      }
      break;
    }
  }
  return t;
}

Shape cells_of(const tree_layout& t) {
  Shape s;
  for (const auto& [p, q] : t.parent) s.insert(p);
  return s;
}

Shape shifted(const Shape& s, Position by) {
  Shape out;
  for (Position p : s) out.insert({p.x + by.x, p.y + by.y});
  return out;
}

Shape merged(const std::vector<Shape>& parts) {
  Shape out;
  size_t total = 0;
  for (const Shape& s : parts) {
    total += s.size();
    out.insert(s.begin(), s.end());
  }
  if (out.size() != total)
    throw std::logic_error("bundled tree cells overlap");
  return out;
}

// all trees of one gadget share the port at (0,0)
Shape bundle(const std::vector<const TreeSpec*>& specs, bool fill_center) {
  std::vector<Shape> parts;
  for (const TreeSpec* s : specs) parts.push_back(cells_of(layout_tree(*s)));
  if (fill_center) parts.push_back(Shape{{0, 0}});
  return merged(parts);
}

// mounted trees additionally get a post cell hugging the base from the
// west; the post lets the shared base tile attach by cooperation instead
// of hanging off one full strength rung, which would let the rung tiles of
// one tree swap between its columns
Position post_cell(const tree_layout& lay) {
  return {lay.base.x - 1, lay.base.y};
}

Shape bundle_mounted(const std::vector<const TreeSpec*>& specs,
                     bool fill_center) {
  std::vector<Shape> parts;
  for (const TreeSpec* s : specs) {
    tree_layout lay = layout_tree(*s);
    Shape c = cells_of(lay);
    c.insert(post_cell(lay));
    parts.push_back(std::move(c));
  }
  if (fill_center) parts.push_back(Shape{{0, 0}});
  return merged(parts);
}

void check_component(const ComponentSpec& spec) {
  bool less = spec.inequality.sign == Sign::LT_TAU;
  size_t limit = less ? 3 : 4;
  if (spec.pillar_specs.empty() || spec.pillar_specs.size() > limit)
    throw ValidationError("component has a bad pillar count");
  if (spec.inequality.terms.size() != spec.pillar_specs.size())
    throw ValidationError("component pillars do not match the row terms");
  if (less != spec.aux_spec.has_value())
    throw ValidationError("auxiliary tree present iff the row is a <-row");
  std::set<Dir> dirs;
  std::set<std::string> ids;
  std::set<uint32_t> heights;
  auto note = [&](const TreeSpec& ts) {
    if (!dirs.insert(ts.tree_type).second)
      throw ValidationError("component trees must have distinct types");
    if (!ids.insert(ts.id).second)
      throw ValidationError("component trees must have distinct ids");
    heights.insert(ts.height);
  };
  for (const TreeSpec& ts : spec.pillar_specs) note(ts);
  if (spec.aux_spec) note(*spec.aux_spec);
  if (heights.size() > 1)
    throw ValidationError("component trees must share one height");
}

std::vector<const TreeSpec*> component_trees(const ComponentSpec& spec) {
  std::vector<const TreeSpec*> trees;
  for (const TreeSpec& ts : spec.pillar_specs) trees.push_back(&ts);
  if (spec.aux_spec) trees.push_back(&*spec.aux_spec);
  return trees;
}

constexpr int width_gap = 3;  // empty columns between mounted items

// gadgets of a <-component in layout order: the full bundle first, then one
// bundle per omitted tree, ordered by the omitted id
struct gadget {
  std::vector<const TreeSpec*> trees;
  bool fill_center = false;
};

std::vector<gadget> less_gadgets(const ComponentSpec& spec) {
  std::vector<const TreeSpec*> all = component_trees(spec);
  std::vector<gadget> out;
  out.push_back({all, true});
  std::vector<const TreeSpec*> omit = all;
  std::sort(omit.begin(), omit.end(),
            [](const TreeSpec* a, const TreeSpec* b) { return a->id < b->id; });
  for (const TreeSpec* skip : omit) {
    gadget g;
    for (const TreeSpec* t : all)
      if (t != skip) g.trees.push_back(t);
    out.push_back(g);
  }
  return out;
}

// horizontal offsets placing shapes side by side with the standard gap,
// the first shape kept where it is
std::vector<int> row_offsets(const std::vector<Shape>& shapes) {
  std::vector<int> offs;
  int cursor = 0;
  for (size_t i = 0; i < shapes.size(); i++) {
    int mn = shapes[i].begin()->x, mx = mn;
    for (Position p : shapes[i]) {
      mn = std::min(mn, p.x);
      mx = std::max(mx, p.x);
    }
    int off = i == 0 ? 0 : cursor - mn;
    offs.push_back(off);
    cursor = off + mx + 1 + width_gap;
  }
  return offs;
}

struct tree_instance {
  const TreeSpec* spec;
  Position anchor;  // absolute port position
};

struct planned {
  ShapePlan plan;
  Shape shape;
  std::vector<tree_instance> instances;
  std::vector<std::pair<size_t, Position>> filled_centers;  // row, position
};

// variable trees in system order, then one auxiliary tree per <-row with an
// id no variable name shadows
std::pair<std::vector<TreeSpec>, size_t> plan_trees(
    const TauInequalitySystem& sys, const QuadPartition& partition,
    uint32_t h) {
  auto dir_of = [&](const std::string& name) {
    for (size_t i = 0; i < 4; i++)
      for (const std::string& v : partition.parts[i])
        if (v == name) return Dir(i);
    throw std::logic_error("variable missing from its partition");
  };
  size_t lt_rows = 0;
  for (const TauInequality& row : sys.ineqs)
    if (row.sign == Sign::LT_TAU) lt_rows++;
  uint32_t bl = bit_len_for(sys.vars.size() + lt_rows);
  if (h < bl + 4 || h < 2 * bl)
    throw ValidationError("height too small for this system's bit patterns");
  std::vector<TreeSpec> specs;
  for (size_t i = 0; i < sys.vars.size(); i++)
    specs.push_back({sys.vars[i], dir_of(sys.vars[i]), bits_for(i, bl), h});
  std::string pfx = "lt";
  for (bool clash = true; clash;) {
    clash = false;
    for (const std::string& v : sys.vars)
      if (v.compare(0, pfx.size(), pfx) == 0) clash = true;
    if (clash) pfx += "_";
  }
  size_t seq = 0;
  for (const TauInequality& row : sys.ineqs) {
    if (row.sign != Sign::LT_TAU) continue;
    std::set<Dir> used;
    for (uint32_t ti : row.terms) used.insert(dir_of(sys.vars[ti]));
    Dir free = Dir::N;
    for (Dir d : kDirs)
      if (!used.count(d)) {
        free = d;
        break;
      }
    specs.push_back({pfx + std::to_string(seq), free,
                     bits_for(sys.vars.size() + seq, bl), h});
    seq++;
  }
  return {std::move(specs), lt_rows};
}

planned plan_layout(const TauInequalitySystem& sys,
                    const QuadPartition& partition, uint32_t h) {
  if (!is_tp43(sys))
    throw ValidationError("system rows exceed the 4/3 term limits");
  if (!check_quadripartite(sys, partition))
    throw ValidationError("system is not quadripartite under this partition");
  for (const TauInequality& row : sys.ineqs)
    if (row.terms.empty())
      throw ValidationError("rows must carry at least one term");

  planned out;
  auto [specs, lt_rows] = plan_trees(sys, partition, h);
  out.plan.h = h;
  out.plan.bit_len = bit_len_for(sys.vars.size() + lt_rows);
  out.plan.aux_count = lt_rows;
  out.plan.tree_specs = specs;

  auto spec_of = [&](const std::string& id) -> const TreeSpec* {
    for (const TreeSpec& ts : out.plan.tree_specs)
      if (ts.id == id) return &ts;
    throw std::logic_error("unknown tree id");
  };

  size_t aux_seen = 0;
  for (const TauInequality& row : sys.ineqs) {
    ComponentSpec cs;
    cs.inequality = row;
    for (uint32_t ti : row.terms)
      cs.pillar_specs.push_back(*spec_of(sys.vars[ti]));
    std::sort(cs.pillar_specs.begin(), cs.pillar_specs.end(),
              [](const TreeSpec& a, const TreeSpec& b) {
                return a.tree_type < b.tree_type;
              });
    if (row.sign == Sign::LT_TAU)
      cs.aux_spec = out.plan.tree_specs[sys.vars.size() + aux_seen++];
    check_component(cs);
    out.plan.component_specs.push_back(cs);
  }

  // mount everything on one baseline: two copies per variable tree, per
  // auxiliary tree and per row component, left to right
  int cursor = 2;
  Position base_cell{0, 0};
  std::vector<Shape> item_cells;
  auto mount = [&](const std::string& tag, const Shape& rel,
                   const std::vector<tree_instance>& rel_insts,
                   const std::vector<std::pair<size_t, Position>>& rel_centers) {
    int mn = rel.begin()->x, mx = mn;
    for (Position p : rel) {
      mn = std::min(mn, p.x);
      mx = std::max(mx, p.x);
    }
    Position anchor{cursor - mn, int(h) + 2};
    out.plan.mounts.push_back({tag, anchor});
    item_cells.push_back(shifted(rel, anchor));
    for (const tree_instance& ti : rel_insts)
      out.instances.push_back(
          {ti.spec, {anchor.x + ti.anchor.x, anchor.y + ti.anchor.y}});
    for (auto& [row, p] : rel_centers)
      out.filled_centers.push_back({row, {anchor.x + p.x, anchor.y + p.y}});
    cursor = anchor.x + mx + 1 + width_gap;
  };

  for (const TreeSpec& ts : out.plan.tree_specs) {
    Shape rel = bundle_mounted({spec_of(ts.id)}, false);
    for (int copy = 1; copy <= 2; copy++)
      mount(ts.id + "#" + std::to_string(copy), rel, {{spec_of(ts.id), {0, 0}}},
            {});
  }
  for (size_t r = 0; r < out.plan.component_specs.size(); r++) {
    const ComponentSpec& cs = out.plan.component_specs[r];
    std::vector<gadget> gads;
    if (cs.inequality.sign == Sign::GEQ_TAU)
      gads.push_back({component_trees(cs), true});
    else
      gads = less_gadgets(cs);
    std::vector<Shape> gshapes;
    for (const gadget& g : gads)
      gshapes.push_back(bundle_mounted(g.trees, g.fill_center));
    std::vector<int> offs = row_offsets(gshapes);
    Shape rel;
    std::vector<tree_instance> rel_insts;
    std::vector<std::pair<size_t, Position>> rel_centers;
    for (size_t gi = 0; gi < gads.size(); gi++) {
      Shape moved = shifted(gshapes[gi], {offs[gi], 0});
      size_t before = rel.size();
      rel.insert(moved.begin(), moved.end());
      if (rel.size() != before + moved.size())
        throw std::logic_error("component gadgets overlap");
      for (const TreeSpec* ts : gads[gi].trees)
        rel_insts.push_back({spec_of(ts->id), {offs[gi], 0}});
      if (gads[gi].fill_center) rel_centers.push_back({r, {offs[gi], 0}});
    }
    for (int copy = 1; copy <= 2; copy++)
      mount("row" + std::to_string(r) + "#" + std::to_string(copy), rel,
            rel_insts, rel_centers);
  }

  int scaffold_len = std::max(cursor - width_gap + 2, 3);
  out.plan.scaffold_len = scaffold_len;
  std::vector<Shape> all = {Shape{}};
  for (int x = 0; x < scaffold_len; x++) all[0].insert({x, 0});
  for (Shape& s : item_cells) all.push_back(std::move(s));
  out.shape = merged(all);
  if (!is_connected(out.shape))
    throw std::logic_error("planned shape is not connected");

  // the additive tile constant: shared tile types beyond h per tree, the
  // scaffold row, one post per mounted tree and one center type per row
  out.plan.instance_count = out.instances.size();
  size_t overhead =
      size_t(scaffold_len) + out.instances.size() + sys.ineqs.size();
  for (const TreeSpec& ts : out.plan.tree_specs)
    overhead += cells_of(layout_tree(ts)).size() - h;
  out.plan.overhead = overhead;
  return out;
}

Dir dir_to(Position from, Position to) {
  for (Dir d : kDirs)
    if (neighbor(from, d) == to) return d;
  throw std::logic_error("cells are not adjacent");
}

// tiles of one tree: a type per cell, every inner parent bond gets its own
// full strength label, the tip additionally shows the tree's value label.
// the base attaches by cooperation: a weak rung from the scaffold below
// plus a unit bond from the post beside it, so no single shared bond lets
// tiles hop between the tree's mounted columns.
struct tree_tiles {
  std::vector<std::string> names;
  std::vector<TileType> types;
  std::vector<std::string> edge_labels;
  std::string tip_label;
  std::string rung_label;  // scaffold to base, strength tau - 1
  std::string post_label;  // post to base, strength 1
};

tree_tiles make_tree_tiles(const TreeSpec& spec, const tree_layout& lay) {
  std::vector<Position> cells;
  for (const auto& [p, q] : lay.parent) cells.push_back(p);
  std::sort(cells.begin(), cells.end());
  std::map<Position, size_t> index;
  for (size_t k = 0; k < cells.size(); k++) index[cells[k]] = k;
  auto glab = [&](size_t k) { return spec.id + ".g" + std::to_string(k); };

  tree_tiles out;
  out.tip_label = spec.id + ".L";
  out.rung_label = spec.id + ".up";
  out.post_label = spec.id + ".in";
  std::vector<TileType> types(cells.size());
  for (size_t k = 0; k < cells.size(); k++) {
    Position p = cells[k];
    Position q = lay.parent.at(p);
    if (p == lay.base) {
      types[k].at(dir_to(p, q)) = out.rung_label;
      types[k].at(Dir::W) = out.post_label;
    } else {
      types[k].at(dir_to(p, q)) = glab(k);
      out.edge_labels.push_back(glab(k));
    }
  }
  // mirror every bond on the parent's facing side
  for (size_t k = 0; k < cells.size(); k++) {
    Position p = cells[k];
    Position q = lay.parent.at(p);
    auto it = index.find(q);
    if (it != index.end()) types[it->second].at(dir_to(q, p)) = glab(k);
  }
  size_t tip_k = index.at(lay.tip);
  types[tip_k].at(dir_to(lay.tip, {0, 0})) = out.tip_label;
  for (size_t k = 0; k < cells.size(); k++) {
    out.names.push_back(spec.id + ".c" + std::to_string(k));
    out.types.push_back(types[k]);
  }
  return out;
}

}  // namespace

Shape build_variable_tree(const TreeSpec& spec) {
  return cells_of(layout_tree(spec));
}

Shape build_geq_component(const ComponentSpec& spec) {
  if (spec.inequality.sign != Sign::GEQ_TAU)
    throw ValidationError("component row must be a >=-row");
  check_component(spec);
  return bundle(component_trees(spec), true);
}

Shape build_less_component(const ComponentSpec& spec) {
  if (spec.inequality.sign != Sign::LT_TAU)
    throw ValidationError("component row must be a <-row");
  check_component(spec);
  std::vector<gadget> gads = less_gadgets(spec);
  std::vector<Shape> gshapes;
  for (const gadget& g : gads) gshapes.push_back(bundle(g.trees, g.fill_center));
  std::vector<int> offs = row_offsets(gshapes);
  Shape out;
  for (size_t i = 0; i < gshapes.size(); i++) {
    Shape moved = shifted(gshapes[i], {offs[i], 0});
    size_t before = out.size();
    out.insert(moved.begin(), moved.end());
    if (out.size() != before + moved.size())
      throw std::logic_error("component gadgets overlap");
  }
  return out;
}

uint32_t min_height(const TauInequalitySystem& sys) {
  size_t lt_rows = 0;
  for (const TauInequality& row : sys.ineqs)
    if (row.sign == Sign::LT_TAU) lt_rows++;
  uint32_t b = bit_len_for(sys.vars.size() + lt_rows);
  return std::max(b + 4, 2 * b);
}

uint32_t default_height(const TauInequalitySystem& sys) {
  size_t lt_rows = 0;
  for (const TauInequality& row : sys.ineqs)
    if (row.sign == Sign::LT_TAU) lt_rows++;
  uint32_t b = bit_len_for(sys.vars.size() + lt_rows);
  return std::max(8u, 2 * b + 6);
}

std::pair<Shape, ShapePlan> build_shape(const TauInequalitySystem& sys,
                                        const QuadPartition& partition,
                                        uint32_t h) {
  planned p = plan_layout(sys, partition, h);
  return {std::move(p.shape), std::move(p.plan)};
}

WitnessTas build_witness_tas(const TauInequalitySystem& sys,
                             const QuadPartition& partition,
                             const Assignment& solution, uint32_t tau,
                             uint32_t h) {
  planned p = plan_layout(sys, partition, h);
  if (tau < 1) throw ValidationError("tau must be at least 1");
  auto value_of = [&](const std::string& v) {
    auto it = solution.find(v);
    if (it == solution.end())
      throw ValidationError("solution misses variable " + v);
    return it->second;
  };
  for (const std::string& v : sys.vars) {
    uint32_t val = value_of(v);
    if (val < 1 || val >= tau)
      throw ValidationError("witness values must lie in [1, tau)");
  }
  std::vector<uint32_t> row_sums;
  for (const TauInequality& row : sys.ineqs) {
    uint64_t sum = 0;
    for (uint32_t ti : row.terms) sum += value_of(sys.vars[ti]);
    bool ok = row.sign == Sign::GEQ_TAU ? sum >= tau : sum < tau;
    if (!ok) throw ValidationError("solution does not satisfy every row");
    row_sums.push_back(uint32_t(sum));
  }

  std::vector<std::string> names;
  std::vector<TileType> types;
  std::map<std::string, uint32_t> strengths;
  WitnessTas out;

  // value labels: a variable tip binds with its witness value, an auxiliary
  // tip with the gap its <-row leaves below tau
  std::map<std::string, uint32_t> tip_strength;
  for (const std::string& v : sys.vars) tip_strength[v + ".L"] = value_of(v);
  size_t aux_at = sys.vars.size();
  for (size_t r = 0; r < sys.ineqs.size(); r++) {
    if (sys.ineqs[r].sign != Sign::LT_TAU) continue;
    const TreeSpec& aux = p.plan.tree_specs[aux_at++];
    tip_strength[aux.id + ".L"] = tau - row_sums[r];
  }

  std::map<std::string, tree_tiles> tiles_by_id;
  for (const TreeSpec& ts : p.plan.tree_specs) {
    tree_tiles tt = make_tree_tiles(ts, layout_tree(ts));
    for (size_t k = 0; k < tt.names.size(); k++) {
      names.push_back(tt.names[k]);
      types.push_back(tt.types[k]);
    }
    for (const std::string& lab : tt.edge_labels) strengths[lab] = tau;
    strengths[tt.tip_label] = tip_strength.at(tt.tip_label);
    strengths[tt.rung_label] = tau - 1;
    strengths[tt.post_label] = 1;
    out.type_count_breakdown[ts.id] = tt.names.size();
    tiles_by_id.emplace(ts.id, std::move(tt));
  }

  // scaffold row: a full strength chain eastward. every mounted tree gets a
  // weak rung below its base and a post column beside it whose anchoring
  // bond names the column, so base attachment needs both
  std::map<int, std::string> north;
  for (const tree_instance& ti : p.instances) {
    tree_layout lay = layout_tree(*ti.spec);
    const tree_tiles& tt = tiles_by_id.at(ti.spec->id);
    Position base{ti.anchor.x + lay.base.x, ti.anchor.y + lay.base.y};
    if (base.y != 1) throw std::logic_error("tree base misses the baseline");
    std::string anchor_lab = "pp." + std::to_string(base.x - 1);
    strengths[anchor_lab] = tau;
    TileType post;
    post.at(Dir::S) = anchor_lab;
    post.at(Dir::E) = tt.post_label;
    names.push_back("pp" + std::to_string(base.x - 1));
    types.push_back(post);
    bool fresh = north.emplace(base.x, tt.rung_label).second &&
                 north.emplace(base.x - 1, anchor_lab).second;
    if (!fresh) throw std::logic_error("mounted columns collide");
  }
  out.type_count_breakdown["posts"] = p.instances.size();

  int L = p.plan.scaffold_len;
  TileType seed_tile;
  for (int x = 0; x < L; x++) {
    TileType t;
    if (x > 0) t.at(Dir::W) = "sc." + std::to_string(x - 1);
    if (x < L - 1) {
      t.at(Dir::E) = "sc." + std::to_string(x);
      strengths["sc." + std::to_string(x)] = tau;
    }
    auto it = north.find(x);
    if (it != north.end()) t.at(Dir::N) = it->second;
    names.push_back("sc" + std::to_string(x));
    types.push_back(t);
    if (x == 0) seed_tile = t;
  }
  out.type_count_breakdown["scaffold"] = size_t(L);

  // one center type per row, both copies share it
  for (size_t r = 0; r < p.plan.component_specs.size(); r++) {
    const ComponentSpec& cs = p.plan.component_specs[r];
    TileType t;
    for (const TreeSpec& ts : cs.pillar_specs)
      t.at(ts.tree_type) = ts.id + ".L";
    if (cs.aux_spec) t.at(cs.aux_spec->tree_type) = cs.aux_spec->id + ".L";
    names.push_back("ctr" + std::to_string(r));
    types.push_back(t);
  }
  out.type_count_breakdown["centers"] = p.plan.component_specs.size();

  out.tas = Tas::make(std::move(types), std::move(names),
                      Assembly::single({0, 0}, seed_tile),
                      StrengthFunction(std::move(strengths)), tau);

  size_t expect = (sys.vars.size() + p.plan.aux_count) * h + p.plan.overhead;
  if (out.tas.tile_types.size() != expect)
    throw std::logic_error("tile count misses the plan accounting");
  return out;
}

std::string render_shape(const Shape& s, RenderStyle style) {
  int mnx = 0, mxx = 0, mny = 0, mxy = 0;
  if (!s.empty()) {
    mnx = mxx = s.begin()->x;
    mny = mxy = s.begin()->y;
    for (Position p : s) {
      mnx = std::min(mnx, p.x);
      mxx = std::max(mxx, p.x);
      mny = std::min(mny, p.y);
      mxy = std::max(mxy, p.y);
    }
  }
  std::ostringstream os;
  if (style == RenderStyle::ascii) {
    for (int y = mxy; y >= mny; y--) {
      for (int x = mnx; x <= mxx; x++) os << (s.count({x, y}) ? '#' : '.');
      os << '\n';
    }
    return os.str();
  }
  int cell = 16;
  int w = (mxx - mnx + 1) * cell, hh = (mxy - mny + 1) * cell;
  if (s.empty()) w = hh = cell;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << hh << "\" viewBox=\"0 0 " << w << " " << hh
     << "\">\n";
  for (Position p : s)
    os << "<rect x=\"" << (p.x - mnx) * cell << "\" y=\"" << (mxy - p.y) * cell
       << "\" width=\"" << cell << "\" height=\"" << cell
       << "\" fill=\"#4a6fa5\" stroke=\"#ffffff\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace tastp
