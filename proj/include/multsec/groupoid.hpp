#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "multsec/common.hpp"

namespace multsec {

struct Arrow {
  std::string id;
  int src = -1;
  int tgt = -1;
};

// A finite groupoid G over objects M. Objects and arrows are identified by
// strings and kept sorted lexicographically; every enumeration in the library
// follows that order. Composition g*h requires src(g) == tgt(h), i.e. h is
// applied first.
class FinGroupoid {
 public:
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> unit_of;                    // per object
  std::vector<int> inv_of;                     // per arrow
  std::map<std::pair<int, int>, int> compose_table;

  int object_index(const std::string& id) const {
    auto it = std::lower_bound(objects.begin(), objects.end(), id);
    if (it == objects.end() || *it != id)
      throw std::invalid_argument("unknown object '" + id + "'");
    return static_cast<int>(it - objects.begin());
  }
  int arrow_index(const std::string& id) const {
    auto it = std::lower_bound(
        arrows.begin(), arrows.end(), id,
        [](const Arrow& a, const std::string& s) { return a.id < s; });
    if (it == arrows.end() || it->id != id)
      throw std::invalid_argument("unknown arrow '" + id + "'");
    return static_cast<int>(it - arrows.begin());
  }

  int n_objects() const { return static_cast<int>(objects.size()); }
  int n_arrows() const { return static_cast<int>(arrows.size()); }
  int src(int g) const { return arrows[g].src; }
  int tgt(int g) const { return arrows[g].tgt; }
  int unit(int x) const { return unit_of[x]; }
  int inv(int g) const { return inv_of[g]; }
  bool is_unit(int g) const { return unit_of[arrows[g].src] == g; }
  bool composable(int g, int h) const { return src(g) == tgt(h); }

  int compose(int g, int h) const {
    auto it = compose_table.find({g, h});
    if (it == compose_table.end())
      throw std::invalid_argument("arrows not composable: " + arrows[g].id +
                                  " * " + arrows[h].id);
    return it->second;
  }

  // All pairs (g, h) with src(g) == tgt(h), in lexicographic index order.
  std::vector<std::pair<int, int>> composable_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int g = 0; g < n_arrows(); ++g)
      for (int h = 0; h < n_arrows(); ++h)
        if (composable(g, h)) out.emplace_back(g, h);
    return out;
  }

  std::vector<std::tuple<int, int, int>> composable_triples() const {
    std::vector<std::tuple<int, int, int>> out;
    for (int g = 0; g < n_arrows(); ++g)
      for (int h = 0; h < n_arrows(); ++h) {
        if (!composable(g, h)) continue;
        for (int k = 0; k < n_arrows(); ++k)
          if (composable(h, k)) out.emplace_back(g, h, k);
      }
    return out;
  }

  // Arrows from x to y, i.e. {g : src(g)=x, tgt(g)=y}.
  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int g = 0; g < n_arrows(); ++g)
      if (src(g) == x && tgt(g) == y) out.push_back(g);
    return out;
  }

  // Object partition into orbits (connected components of the arrow graph).
  std::vector<int> orbit_of_object() const {
    std::vector<int> comp(objects.size(), -1);
    int next = 0;
    for (int start = 0; start < n_objects(); ++start) {
      if (comp[start] >= 0) continue;
      std::vector<int> stack{start};
      comp[start] = next;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const Arrow& a : arrows) {
          int other = -1;
          if (a.src == x) other = a.tgt;
          if (a.tgt == x) other = a.src;
          if (other >= 0 && comp[other] < 0) {
            comp[other] = next;
            stack.push_back(other);
          }
        }
      }
      ++next;
    }
    return comp;
  }

  bool operator==(const FinGroupoid& o) const {
    return objects == o.objects && arrow_ids() == o.arrow_ids() &&
           srcs() == o.srcs() && tgts() == o.tgts() && unit_of == o.unit_of &&
           inv_of == o.inv_of && compose_table == o.compose_table;
  }

 private:
  std::vector<std::string> arrow_ids() const {
    std::vector<std::string> v;
    for (const auto& a : arrows) v.push_back(a.id);
    return v;
  }
  std::vector<int> srcs() const {
    std::vector<int> v;
    for (const auto& a : arrows) v.push_back(a.src);
    return v;
  }
  std::vector<int> tgts() const {
    std::vector<int> v;
    for (const auto& a : arrows) v.push_back(a.tgt);
    return v;
  }
};

// Assembles a groupoid from id-level tables, sorting objects and arrows.
// compose maps (g_id, h_id) -> gh_id and must list every composable pair.
inline FinGroupoid make_groupoid(
    std::vector<std::string> object_ids,
    std::vector<std::tuple<std::string, std::string, std::string>> arrow_rows,
    const std::map<std::pair<std::string, std::string>, std::string>& compose,
    const std::map<std::string, std::string>& units,
    const std::map<std::string, std::string>& inverses) {
  FinGroupoid g;
  g.objects = std::move(object_ids);
  std::sort(g.objects.begin(), g.objects.end());
  for (const auto& id : g.objects)
    if (id.find('|') != std::string::npos)
      throw std::invalid_argument("object ids must not contain '|'");
  if (std::adjacent_find(g.objects.begin(), g.objects.end()) !=
      g.objects.end())
    throw std::invalid_argument("duplicate object id");
  std::sort(arrow_rows.begin(), arrow_rows.end());
  for (size_t i = 1; i < arrow_rows.size(); ++i)
    if (std::get<0>(arrow_rows[i]) == std::get<0>(arrow_rows[i - 1]))
      throw std::invalid_argument("duplicate arrow id");
  for (const auto& row : arrow_rows)
    if (std::get<0>(row).find('|') != std::string::npos)
      throw std::invalid_argument("arrow ids must not contain '|'");
  for (const auto& [id, s, t] : arrow_rows)
    g.arrows.push_back({id, g.object_index(s), g.object_index(t)});
  g.unit_of.assign(g.objects.size(), -1);
  for (const auto& [x, ux] : units) g.unit_of[g.object_index(x)] = g.arrow_index(ux);
  for (int x = 0; x < g.n_objects(); ++x)
    if (g.unit_of[x] < 0)
      throw std::invalid_argument("object without unit: " + g.objects[x]);
  g.inv_of.assign(g.arrows.size(), -1);
  for (const auto& [a, ai] : inverses) g.inv_of[g.arrow_index(a)] = g.arrow_index(ai);
  for (int a = 0; a < g.n_arrows(); ++a)
    if (g.inv_of[a] < 0)
      throw std::invalid_argument("arrow without inverse: " + g.arrows[a].id);
  for (const auto& [gh, prod] : compose)
    g.compose_table[{g.arrow_index(gh.first), g.arrow_index(gh.second)}] =
        g.arrow_index(prod);
  return g;
}

// Checks every groupoid axiom and reports each violation with its witnesses.
inline Report validate_groupoid(const FinGroupoid& g) {
  Report r;
  for (int x = 0; x < g.n_objects(); ++x) {
    int u = g.unit(x);
    if (g.src(u) != x || g.tgt(u) != x)
      r.fail("unit of " + g.objects[x] + " is not an endo-arrow");
  }
  // compose table covers exactly the composable pairs
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int b = 0; b < g.n_arrows(); ++b) {
      bool listed = g.compose_table.count({a, b}) > 0;
      if (g.composable(a, b) && !listed)
        r.fail("missing composition " + g.arrows[a].id + " * " +
               g.arrows[b].id);
      if (!g.composable(a, b) && listed)
        r.fail("composition listed for non-composable pair " + g.arrows[a].id +
               " * " + g.arrows[b].id);
    }
  if (!r.ok()) return r;  // arithmetic below needs a total table
  for (const auto& [pair, p] : g.compose_table) {
    auto [a, b] = pair;
    if (g.src(p) != g.src(b) || g.tgt(p) != g.tgt(a))
      r.fail("src/tgt incompatible with compose at " + g.arrows[a].id + " * " +
             g.arrows[b].id);
  }
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.compose(a, g.unit(g.src(a))) != a)
      r.fail("right unit law fails at " + g.arrows[a].id);
    if (g.compose(g.unit(g.tgt(a)), a) != a)
      r.fail("left unit law fails at " + g.arrows[a].id);
    int ai = g.inv(a);
    if (g.src(ai) != g.tgt(a) || g.tgt(ai) != g.src(a)) {
      r.fail("inverse of " + g.arrows[a].id + " has wrong endpoints");
      continue;
    }
    if (g.compose(a, ai) != g.unit(g.tgt(a)) ||
        g.compose(ai, a) != g.unit(g.src(a)))
      r.fail("inverse law fails at " + g.arrows[a].id);
  }
  for (auto [a, b, c] : g.composable_triples()) {
    if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c)))
      r.fail("associativity fails at triple (" + g.arrows[a].id + ", " +
             g.arrows[b].id + ", " + g.arrows[c].id + ")");
  }
  return r;
}

struct GroupoidFunctor {
  std::vector<int> on_objects;  // indexed by source object
  std::vector<int> on_arrows;   // indexed by source arrow
};

inline Report validate_functor(const GroupoidFunctor& f, const FinGroupoid& g,
                               const FinGroupoid& h) {
  Report r;
  if (static_cast<int>(f.on_objects.size()) != g.n_objects() ||
      static_cast<int>(f.on_arrows.size()) != g.n_arrows()) {
    r.fail("functor tables have wrong size");
    return r;
  }
  for (int a = 0; a < g.n_arrows(); ++a) {
    int fa = f.on_arrows[a];
    if (h.src(fa) != f.on_objects[g.src(a)] ||
        h.tgt(fa) != f.on_objects[g.tgt(a)])
      r.fail("functor breaks src/tgt at " + g.arrows[a].id);
  }
  for (int x = 0; x < g.n_objects(); ++x)
    if (f.on_arrows[g.unit(x)] != h.unit(f.on_objects[x]))
      r.fail("functor breaks unit at " + g.objects[x]);
  for (auto [a, b] : g.composable_pairs())
    if (f.on_arrows[g.compose(a, b)] !=
        h.compose(f.on_arrows[a], f.on_arrows[b]))
      r.fail("functor breaks composition at (" + g.arrows[a].id + ", " +
             g.arrows[b].id + ")");
  return r;
}

inline GroupoidFunctor identity_functor(const FinGroupoid& g) {
  GroupoidFunctor f;
  f.on_objects.resize(g.objects.size());
  f.on_arrows.resize(g.arrows.size());
  for (int x = 0; x < g.n_objects(); ++x) f.on_objects[x] = x;
  for (int a = 0; a < g.n_arrows(); ++a) f.on_arrows[a] = a;
  return f;
}

inline GroupoidFunctor compose_functors(const GroupoidFunctor& g2h,
                                        const GroupoidFunctor& f_after) {
  // f_after: H -> K applied after g2h: G -> H.
  GroupoidFunctor r;
  for (int x : g2h.on_objects) r.on_objects.push_back(f_after.on_objects[x]);
  for (int a : g2h.on_arrows) r.on_arrows.push_back(f_after.on_arrows[a]);
  return r;
}

// Weak equivalence in the finite setting: essentially surjective plus fully
// faithful. The smooth surjective-submersion and fibre-product conditions
// reduce to exactly this over finite sets.
inline bool is_weak_equivalence(const GroupoidFunctor& f, const FinGroupoid& g,
                                const FinGroupoid& h, Report* why = nullptr) {
  Report r;
  for (int y = 0; y < h.n_objects(); ++y) {
    bool hit = false;
    for (int x = 0; x < g.n_objects() && !hit; ++x)
      for (int arr = 0; arr < h.n_arrows(); ++arr)
        if (h.src(arr) == f.on_objects[x] && h.tgt(arr) == y) {
          hit = true;
          break;
        }
    if (!hit)
      r.fail("object " + h.objects[y] + " is not essentially in the image");
  }
  for (int x = 0; x < g.n_objects(); ++x)
    for (int y = 0; y < g.n_objects(); ++y) {
      auto dom = g.hom(x, y);
      auto cod = h.hom(f.on_objects[x], f.on_objects[y]);
      std::set<int> image;
      for (int a : dom) image.insert(f.on_arrows[a]);
      if (image.size() != dom.size())
        r.fail("not faithful on hom(" + g.objects[x] + ", " + g.objects[y] +
               ")");
      if (image.size() != cod.size())
        r.fail("not full on hom(" + g.objects[x] + ", " + g.objects[y] + ")");
    }
  if (why) *why = r;
  return r.ok();
}

struct SurjectivityProfile {
  bool on_objects = false;
  bool on_arrows = false;
  bool on_pairs = false;
  bool all() const { return on_objects && on_arrows && on_pairs; }
};

inline SurjectivityProfile surjectivity_profile(const GroupoidFunctor& f,
                                                const FinGroupoid& g,
                                                const FinGroupoid& h) {
  SurjectivityProfile p;
  std::set<int> objs(f.on_objects.begin(), f.on_objects.end());
  p.on_objects = static_cast<int>(objs.size()) == h.n_objects();
  std::set<int> arrs(f.on_arrows.begin(), f.on_arrows.end());
  p.on_arrows = static_cast<int>(arrs.size()) == h.n_arrows();
  std::set<std::pair<int, int>> pairs;
  for (auto [a, b] : g.composable_pairs())
    pairs.insert({f.on_arrows[a], f.on_arrows[b]});
  p.on_pairs = pairs.size() == h.composable_pairs().size();
  return p;
}

// Weak fibre product G x^w_H G'. Objects are triples (x, h, x') with
// h: phi0(x) -> phi0'(x') in H; an arrow over (g, g') starting at (x, h, x')
// is recorded as the triple (g, h, g'), its target h-component being
// phi'(g') h phi(g)^{-1}.
struct WeakFibreProduct {
  FinGroupoid p;
  GroupoidFunctor proj_left;    // P -> G
  GroupoidFunctor proj_right;   // P -> G'
  // decompositions of the product's objects/arrows
  std::vector<std::tuple<int, int, int>> object_triple;  // (x, h, x')
  std::vector<std::tuple<int, int, int>> arrow_triple;   // (g, h, g')
};

inline WeakFibreProduct weak_fibre_product(const FinGroupoid& g,
                                           const GroupoidFunctor& phi,
                                           const FinGroupoid& g2,
                                           const GroupoidFunctor& phi2,
                                           const FinGroupoid& h) {
  auto obj_id = [&](int x, int hh, int x2) {
    return "(" + g.objects[x] + "," + h.arrows[hh].id + "," + g2.objects[x2] +
           ")";
  };
  auto arr_id = [&](int a, int hh, int a2) {
    return "(" + g.arrows[a].id + "," + h.arrows[hh].id + "," +
           g2.arrows[a2].id + ")";
  };

  std::map<std::string, std::tuple<int, int, int>> objs;
  for (int x = 0; x < g.n_objects(); ++x)
    for (int x2 = 0; x2 < g2.n_objects(); ++x2)
      for (int hh = 0; hh < h.n_arrows(); ++hh)
        if (h.src(hh) == phi.on_objects[x] &&
            h.tgt(hh) == phi2.on_objects[x2])
          objs[obj_id(x, hh, x2)] = {x, hh, x2};

  std::map<std::string, std::tuple<int, int, int>> arrs;
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int a2 = 0; a2 < g2.n_arrows(); ++a2)
      for (int hh = 0; hh < h.n_arrows(); ++hh)
        if (h.src(hh) == phi.on_objects[g.src(a)] &&
            h.tgt(hh) == phi2.on_objects[g2.src(a2)])
          arrs[arr_id(a, hh, a2)] = {a, hh, a2};

  // target h-component of the arrow (a, hh, a2)
  auto tgt_h = [&](int a, int hh, int a2) {
    return h.compose(h.compose(phi2.on_arrows[a2], hh),
                     h.inv(phi.on_arrows[a]));
  };

  FinGroupoid p;
  for (const auto& [id, t] : objs) {
    p.objects.push_back(id);
    (void)t;
  }
  WeakFibreProduct out;
  std::map<std::tuple<int, int, int>, int> obj_idx, arr_idx;
  int i = 0;
  for (const auto& [id, t] : objs) obj_idx[t] = i++;
  i = 0;
  for (const auto& [id, t] : arrs) {
    auto [a, hh, a2] = t;
    p.arrows.push_back({id, obj_idx.at({g.src(a), hh, g2.src(a2)}),
                        obj_idx.at({g.tgt(a), tgt_h(a, hh, a2), g2.tgt(a2)})});
    arr_idx[t] = i++;
  }
  p.unit_of.assign(p.objects.size(), -1);
  for (const auto& [t, xi] : obj_idx) {
    auto [x, hh, x2] = t;
    p.unit_of[xi] = arr_idx.at({g.unit(x), hh, g2.unit(x2)});
  }
  p.inv_of.assign(p.arrows.size(), -1);
  for (const auto& [t, ai] : arr_idx) {
    auto [a, hh, a2] = t;
    p.inv_of[ai] = arr_idx.at({g.inv(a), tgt_h(a, hh, a2), g2.inv(a2)});
  }
  for (const auto& [t1, i1] : arr_idx)
    for (const auto& [t2, i2] : arr_idx) {
      if (p.src(i1) != p.tgt(i2)) continue;
      auto [a1, h1, a21] = t1;
      auto [a2, h2, a22] = t2;
      p.compose_table[{i1, i2}] =
          arr_idx.at({g.compose(a1, a2), h2, g2.compose(a21, a22)});
    }

  out.proj_left.on_objects.resize(objs.size());
  out.proj_right.on_objects.resize(objs.size());
  out.object_triple.resize(objs.size());
  for (const auto& [t, xi] : obj_idx) {
    out.proj_left.on_objects[xi] = std::get<0>(t);
    out.proj_right.on_objects[xi] = std::get<2>(t);
    out.object_triple[xi] = t;
  }
  out.proj_left.on_arrows.resize(arrs.size());
  out.proj_right.on_arrows.resize(arrs.size());
  out.arrow_triple.resize(arrs.size());
  for (const auto& [t, ai] : arr_idx) {
    out.proj_left.on_arrows[ai] = std::get<0>(t);
    out.proj_right.on_arrows[ai] = std::get<2>(t);
    out.arrow_triple[ai] = t;
  }
  out.p = std::move(p);
  return out;
}

// ---- generators ----------------------------------------------------------

inline FinGroupoid pair_groupoid(const std::vector<std::string>& names) {
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  std::map<std::pair<std::string, std::string>, std::string> compose;
  std::map<std::string, std::string> units, inverses;
  auto aid = [](const std::string& a, const std::string& b) {
    return "<" + b + "<-" + a + ">";
  };
  for (const auto& a : names)
    for (const auto& b : names) arrows.emplace_back(aid(a, b), a, b);
  for (const auto& a : names) units[a] = aid(a, a);
  for (const auto& a : names)
    for (const auto& b : names) {
      inverses[aid(a, b)] = aid(b, a);
      for (const auto& c : names)
        compose[{aid(b, c), aid(a, b)}] = aid(a, c);
    }
  return make_groupoid(names, arrows, compose, units, inverses);
}

// One-object groupoid out of a group multiplication table:
// table[i][j] = index of element_i * element_j; element 0 must be neutral.
inline FinGroupoid group_as_groupoid(const std::vector<std::string>& elems,
                                     const std::vector<std::vector<int>>& table,
                                     const std::string& object_name = "*") {
  const int n = static_cast<int>(elems.size());
  if (static_cast<int>(table.size()) != n)
    throw std::invalid_argument("group table has wrong size");
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw std::invalid_argument("group table has wrong size");
    if (table[0][i] != i || table[i][0] != i)
      throw std::invalid_argument("element 0 is not neutral");
    for (int j = 0; j < n; ++j)
      if (table[i][j] == 0) inverse[i] = j;
  }
  for (int i = 0; i < n; ++i)
    if (inverse[i] < 0) throw std::invalid_argument("element without inverse");
  // associativity of the table itself
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw std::invalid_argument("group table is not associative");
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  std::map<std::pair<std::string, std::string>, std::string> compose;
  std::map<std::string, std::string> units, inverses;
  for (int i = 0; i < n; ++i) arrows.emplace_back(elems[i], object_name, object_name);
  units[object_name] = elems[0];
  for (int i = 0; i < n; ++i) {
    inverses[elems[i]] = elems[inverse[i]];
    for (int j = 0; j < n; ++j) compose[{elems[i], elems[j]}] = elems[table[i][j]];
  }
  return make_groupoid({object_name}, arrows, compose, units, inverses);
}

inline std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

inline std::vector<std::string> cyclic_names(int n) {
  std::vector<std::string> e;
  for (int i = 0; i < n; ++i) e.push_back("g" + std::to_string(i));
  return e;
}

// Action groupoid Gamma x X over X. action[i][x] = index of element_i . x.
inline FinGroupoid action_groupoid(const std::vector<std::string>& elems,
                                   const std::vector<std::vector<int>>& table,
                                   const std::vector<std::string>& points,
                                   const std::vector<std::vector<int>>& action) {
  const int n = static_cast<int>(elems.size());
  const int m = static_cast<int>(points.size());
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table[i][j] == 0) inverse[i] = j;
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < m; ++x) {
      if (action[0][x] != x) throw std::invalid_argument("unit must act trivially");
      for (int j = 0; j < n; ++j)
        if (action[table[i][j]][x] != action[i][action[j][x]])
          throw std::invalid_argument("action is not compatible with the table");
    }
  auto aid = [&](int i, int x) { return "[" + elems[i] + "@" + points[x] + "]"; };
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  std::map<std::pair<std::string, std::string>, std::string> compose;
  std::map<std::string, std::string> units, inverses;
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < m; ++x)
      arrows.emplace_back(aid(i, x), points[x], points[action[i][x]]);
  for (int x = 0; x < m; ++x) units[points[x]] = aid(0, x);
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < m; ++x) {
      inverses[aid(i, x)] = aid(inverse[i], action[i][x]);
      // (j @ i.x) * (i @ x) = (ji @ x)
      for (int j = 0; j < n; ++j)
        compose[{aid(j, action[i][x]), aid(i, x)}] = aid(table[j][i], x);
    }
  return make_groupoid(points, arrows, compose, units, inverses);
}

// Cech groupoid of a surjection p: U -> X: objects U, one arrow u' <- u for
// each pair in the same fibre.
inline FinGroupoid cech_groupoid(const std::vector<std::string>& u_names,
                                 const std::vector<std::string>& fibre) {
  if (u_names.size() != fibre.size())
    throw std::invalid_argument("cover table has wrong size");
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  std::map<std::pair<std::string, std::string>, std::string> compose;
  std::map<std::string, std::string> units, inverses;
  auto aid = [&](size_t a, size_t b) { return "<" + u_names[b] + "<-" + u_names[a] + ">"; };
  const size_t n = u_names.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (fibre[a] == fibre[b]) arrows.emplace_back(aid(a, b), u_names[a], u_names[b]);
  for (size_t a = 0; a < n; ++a) units[u_names[a]] = aid(a, a);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (fibre[a] != fibre[b]) continue;
      inverses[aid(a, b)] = aid(b, a);
      for (size_t c = 0; c < n; ++c)
        if (fibre[b] == fibre[c]) compose[{aid(b, c), aid(a, b)}] = aid(a, c);
    }
  return make_groupoid(u_names, arrows, compose, units, inverses);
}

inline FinGroupoid trivial_groupoid(const std::string& name = "*") {
  return group_as_groupoid({"1"}, {{0}}, name);
}

}  // namespace multsec
