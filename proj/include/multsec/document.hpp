#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "multsec/lagroupoid.hpp"

namespace multsec {

using nlohmann::json;

// Schema version of the one-file workspace format.
inline constexpr const char* kSchemaVersion = "1";

// ---- scalars, vectors, matrices -------------------------------------------

inline json vector_to_json(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rat_to_string(x));
  return out;
}

inline RatVector vector_from_json(const json& j, int expect) {
  if (!j.is_array() || static_cast<int>(j.size()) != expect)
    throw std::invalid_argument("vector has wrong length");
  RatVector v;
  for (const auto& x : j) v.push_back(rat_from_string(x.get<std::string>()));
  return v;
}

inline json matrix_to_json(const RatMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline RatMatrix matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw std::invalid_argument("matrix has wrong row count");
  RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("matrix has wrong column count");
    for (int k = 0; k < cols; ++k)
      m(i, k) = rat_from_string(row[k].get<std::string>());
  }
  return m;
}

inline json lie_to_json(const LieAlg& l) {
  json out = json::array();
  for (int i = 0; i < l.dim; ++i) {
    json row = json::array();
    for (int j = 0; j < l.dim; ++j)
      row.push_back(vector_to_json(l.bracket_basis(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline LieAlg lie_from_json(const json& j) {
  LieAlg l = LieAlg::abelian(static_cast<int>(j.size()));
  for (int i = 0; i < l.dim; ++i) {
    if (static_cast<int>(j[i].size()) != l.dim)
      throw std::invalid_argument("structure constant table is not cubic");
    for (int k = 0; k < l.dim; ++k)
      l.bracket_basis(i, k) = vector_from_json(j[i][k], l.dim);
  }
  return l;
}

// ---- groupoids -------------------------------------------------------------

inline json groupoid_to_json(const FinGroupoid& g) {
  json out;
  out["objects"] = g.objects;
  json arrows = json::array();
  for (const auto& a : g.arrows)
    arrows.push_back({{"id", a.id},
                      {"src", g.objects[a.src]},
                      {"tgt", g.objects[a.tgt]}});
  out["arrows"] = std::move(arrows);
  json compose = json::array();
  for (const auto& [pr, p] : g.compose_table)
    compose.push_back(json::array({g.arrows[pr.first].id,
                                   g.arrows[pr.second].id, g.arrows[p].id}));
  out["compose"] = std::move(compose);
  json units = json::object();
  for (int x = 0; x < g.n_objects(); ++x)
    units[g.objects[x]] = g.arrows[g.unit(x)].id;
  out["units"] = std::move(units);
  json inv = json::object();
  for (int a = 0; a < g.n_arrows(); ++a)
    inv[g.arrows[a].id] = g.arrows[g.inv(a)].id;
  out["inv"] = std::move(inv);
  return out;
}

inline FinGroupoid groupoid_from_json(const json& j) {
  std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (const auto& a : j.at("arrows"))
    arrows.emplace_back(a.at("id").get<std::string>(),
                        a.at("src").get<std::string>(),
                        a.at("tgt").get<std::string>());
  std::map<std::pair<std::string, std::string>, std::string> compose;
  for (const auto& row : j.at("compose")) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("compose rows must be triples");
    auto key = std::make_pair(row[0].get<std::string>(), row[1].get<std::string>());
    if (compose.count(key))
      throw std::invalid_argument("compose lists a pair twice");
    compose[key] = row[2].get<std::string>();
  }
  std::map<std::string, std::string> units, inv;
  for (const auto& [k, v] : j.at("units").items()) units[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("inv").items()) inv[k] = v.get<std::string>();
  return make_groupoid(std::move(objects), std::move(arrows), compose, units, inv);
}

// ---- reps ------------------------------------------------------------------

inline json bundle_to_json(const FinGroupoid& g, const VecBundle& b) {
  json out = json::object();
  for (int x = 0; x < g.n_objects(); ++x) out[g.objects[x]] = b.dim[x];
  return out;
}

inline VecBundle bundle_from_json(const FinGroupoid& g, const json& j) {
  VecBundle b;
  b.dim.assign(g.n_objects(), -1);
  for (const auto& [k, v] : j.items()) {
    int d = v.get<int>();
    if (d < 0) throw std::invalid_argument("negative fibre dimension");
    b.dim[g.object_index(k)] = d;
  }
  for (int x = 0; x < g.n_objects(); ++x)
    if (b.dim[x] < 0)
      throw std::invalid_argument("missing fibre dimension at " + g.objects[x]);
  return b;
}

inline json rep_to_json(const RepUTH& r, const std::string& groupoid_name) {
  json out;
  out["groupoid"] = groupoid_name;
  out["C"] = bundle_to_json(r.g, r.c);
  out["E"] = bundle_to_json(r.g, r.e);
  json partial = json::object();
  for (int x = 0; x < r.g.n_objects(); ++x)
    partial[r.g.objects[x]] = matrix_to_json(r.partial[x]);
  out["partial"] = std::move(partial);
  json dc = json::object(), de = json::object();
  for (int a = 0; a < r.g.n_arrows(); ++a) {
    dc[r.g.arrows[a].id] = matrix_to_json(r.delta_c[a]);
    de[r.g.arrows[a].id] = matrix_to_json(r.delta_e[a]);
  }
  out["deltaC"] = std::move(dc);
  out["deltaE"] = std::move(de);
  json omega = json::object();
  for (const auto& [pr, m] : r.omega)
    if (!m.is_zero())
      omega[r.g.arrows[pr.first].id + "|" + r.g.arrows[pr.second].id] =
          matrix_to_json(m);
  out["omega"] = std::move(omega);
  return out;
}

inline RepUTH rep_from_json(const json& j, const FinGroupoid& g) {
  RepUTH r;
  r.g = g;
  r.c = bundle_from_json(g, j.at("C"));
  r.e = bundle_from_json(g, j.at("E"));
  r.partial.assign(g.n_objects(), RatMatrix());
  for (const auto& [k, v] : j.at("partial").items()) {
    int x = g.object_index(k);
    r.partial[x] = matrix_from_json(v, r.e.dim[x], r.c.dim[x]);
  }
  for (int x = 0; x < g.n_objects(); ++x)
    if (r.partial[x].rows() != r.e.dim[x] || r.partial[x].cols() != r.c.dim[x])
      throw std::invalid_argument("missing partial at " + g.objects[x]);
  auto load_deltas = [&](const json& table, const VecBundle& b) {
    std::vector<RatMatrix> out(g.n_arrows());
    std::vector<bool> seen(g.n_arrows(), false);
    for (const auto& [k, v] : table.items()) {
      int a = g.arrow_index(k);
      out[a] = matrix_from_json(v, b.dim[g.tgt(a)], b.dim[g.src(a)]);
      seen[a] = true;
    }
    for (int a = 0; a < g.n_arrows(); ++a)
      if (!seen[a])
        throw std::invalid_argument("missing quasi-action at " + g.arrows[a].id);
    return out;
  };
  r.delta_c = load_deltas(j.at("deltaC"), r.c);
  r.delta_e = load_deltas(j.at("deltaE"), r.e);
  if (j.contains("omega"))
    for (const auto& [k, v] : j.at("omega").items()) {
      auto bar = k.find('|');
      if (bar == std::string::npos)
        throw std::invalid_argument("omega keys look like \"g|h\"");
      int a = g.arrow_index(k.substr(0, bar));
      int b = g.arrow_index(k.substr(bar + 1));
      if (!g.composable(a, b))
        throw std::invalid_argument("omega entry on non-composable pair " + k);
      r.omega[{a, b}] =
          matrix_from_json(v, r.c.dim[g.tgt(a)], r.e.dim[g.src(b)]);
    }
  return r;
}

// ---- LA documents: a rep plus bracket tables -------------------------------

inline json la_to_json(const LAGroupoid& l, const std::string& groupoid_name) {
  json out = rep_to_json(l.rep, groupoid_name);
  json side = json::object();
  for (int x = 0; x < l.rep.g.n_objects(); ++x)
    side[l.rep.g.objects[x]] = lie_to_json(l.side[x]);
  out["side_bracket"] = std::move(side);
  json fibre = json::object();
  for (int a = 0; a < l.rep.g.n_arrows(); ++a)
    fibre[l.rep.g.arrows[a].id] = lie_to_json(l.fibre[a]);
  out["fiber_bracket"] = std::move(fibre);
  return out;
}

inline LAGroupoid la_from_json(const json& j, const FinGroupoid& g) {
  LAGroupoid l;
  l.rep = rep_from_json(j, g);
  l.side.assign(g.n_objects(), LieAlg{});
  for (const auto& [k, v] : j.at("side_bracket").items())
    l.side[g.object_index(k)] = lie_from_json(v);
  l.fibre.assign(g.n_arrows(), LieAlg{});
  for (const auto& [k, v] : j.at("fiber_bracket").items())
    l.fibre[g.arrow_index(k)] = lie_from_json(v);
  for (int x = 0; x < g.n_objects(); ++x)
    if (l.side[x].dim != l.rep.e.dim[x])
      throw std::invalid_argument("side bracket missing or mis-sized at " +
                                  g.objects[x]);
  for (int a = 0; a < g.n_arrows(); ++a)
    if (l.fibre[a].dim !=
        l.rep.c.dim[g.tgt(a)] + l.rep.e.dim[g.src(a)])
      throw std::invalid_argument("fiber bracket missing or mis-sized at " +
                                  g.arrows[a].id);
  return l;
}

// ---- functors and VB morphisms ----------------------------------------------

inline json functor_to_json(const GroupoidFunctor& f, const FinGroupoid& g,
                            const FinGroupoid& h, const std::string& source,
                            const std::string& target) {
  json out;
  out["source"] = source;
  out["target"] = target;
  json objs = json::object(), arrs = json::object();
  for (int x = 0; x < g.n_objects(); ++x)
    objs[g.objects[x]] = h.objects[f.on_objects[x]];
  for (int a = 0; a < g.n_arrows(); ++a)
    arrs[g.arrows[a].id] = h.arrows[f.on_arrows[a]].id;
  out["on_objects"] = std::move(objs);
  out["on_arrows"] = std::move(arrs);
  return out;
}

inline GroupoidFunctor functor_from_json(const json& j, const FinGroupoid& g,
                                         const FinGroupoid& h) {
  GroupoidFunctor f;
  f.on_objects.assign(g.n_objects(), -1);
  f.on_arrows.assign(g.n_arrows(), -1);
  for (const auto& [k, v] : j.at("on_objects").items())
    f.on_objects[g.object_index(k)] = h.object_index(v.get<std::string>());
  for (const auto& [k, v] : j.at("on_arrows").items())
    f.on_arrows[g.arrow_index(k)] = h.arrow_index(v.get<std::string>());
  for (int x : f.on_objects)
    if (x < 0) throw std::invalid_argument("functor misses an object");
  for (int a : f.on_arrows)
    if (a < 0) throw std::invalid_argument("functor misses an arrow");
  return f;
}

// ---- workspace ---------------------------------------------------------------

struct Workspace {
  std::map<std::string, FinGroupoid> groupoids;
  std::map<std::string, RepUTH> reps;
  std::map<std::string, std::string> rep_base;  // rep name -> groupoid name
  std::map<std::string, LAGroupoid> las;
  std::map<std::string, std::string> la_base;
  struct FunctorEntry {
    GroupoidFunctor f;
    std::string source, target;
  };
  std::map<std::string, FunctorEntry> functors;
  struct VBMorphismEntry {
    VBMorphism m;
    std::string source, target;  // rep or LA names
    std::string functor;
  };
  std::map<std::string, VBMorphismEntry> vb_morphisms;

  const FinGroupoid& groupoid(const std::string& name) const {
    auto it = groupoids.find(name);
    if (it == groupoids.end())
      throw std::invalid_argument("unknown groupoid '" + name + "'");
    return it->second;
  }
  // Resolves a rep name, looking through LA structures as well.
  const RepUTH& rep(const std::string& name) const {
    auto it = reps.find(name);
    if (it != reps.end()) return it->second;
    auto la = las.find(name);
    if (la != las.end()) return la->second.rep;
    throw std::invalid_argument("unknown rep '" + name + "'");
  }
  const LAGroupoid& la(const std::string& name) const {
    auto it = las.find(name);
    if (it == las.end())
      throw std::invalid_argument("unknown LA structure '" + name + "'");
    return it->second;
  }
};

inline Workspace workspace_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("document must be an object");
  if (j.value("schema", "") != kSchemaVersion)
    throw std::invalid_argument("unsupported or missing schema version");
  Workspace w;
  if (j.contains("groupoids"))
    for (const auto& [name, doc] : j.at("groupoids").items())
      w.groupoids.emplace(name, groupoid_from_json(doc));
  auto base_of = [&](const json& doc) -> const FinGroupoid& {
    std::string gname = doc.at("groupoid").get<std::string>();
    return w.groupoid(gname);
  };
  if (j.contains("reps"))
    for (const auto& [name, doc] : j.at("reps").items()) {
      w.reps.emplace(name, rep_from_json(doc, base_of(doc)));
      w.rep_base[name] = doc.at("groupoid").get<std::string>();
    }
  if (j.contains("las"))
    for (const auto& [name, doc] : j.at("las").items()) {
      w.las.emplace(name, la_from_json(doc, base_of(doc)));
      w.la_base[name] = doc.at("groupoid").get<std::string>();
    }
  if (j.contains("functors"))
    for (const auto& [name, doc] : j.at("functors").items()) {
      Workspace::FunctorEntry e;
      e.source = doc.at("source").get<std::string>();
      e.target = doc.at("target").get<std::string>();
      e.f = functor_from_json(doc, w.groupoid(e.source), w.groupoid(e.target));
      w.functors.emplace(name, std::move(e));
    }
  if (j.contains("vb_morphisms"))
    for (const auto& [name, doc] : j.at("vb_morphisms").items()) {
      Workspace::VBMorphismEntry e;
      e.source = doc.at("source").get<std::string>();
      e.target = doc.at("target").get<std::string>();
      const RepUTH& src = w.rep(e.source);
      const RepUTH& tgt = w.rep(e.target);
      if (doc.contains("functor")) {
        e.functor = doc.at("functor").get<std::string>();
        e.m.base = w.functors.at(e.functor).f;
      } else {
        // base-preserving morphism over the identity
        if (!(src.g == tgt.g))
          throw std::invalid_argument(
              "morphism '" + name +
              "' omits the functor but the bases differ");
        e.m.base = identity_functor(src.g);
      }
      e.m.on_c.assign(src.g.n_objects(), RatMatrix());
      e.m.on_e.assign(src.g.n_objects(), RatMatrix());
      for (const auto& [k, v] : doc.at("on_C").items()) {
        int x = src.g.object_index(k);
        int y = e.m.base.on_objects[x];
        e.m.on_c[x] = matrix_from_json(v, tgt.c.dim[y], src.c.dim[x]);
      }
      for (const auto& [k, v] : doc.at("on_E").items()) {
        int x = src.g.object_index(k);
        int y = e.m.base.on_objects[x];
        e.m.on_e[x] = matrix_from_json(v, tgt.e.dim[y], src.e.dim[x]);
      }
      for (int x = 0; x < src.g.n_objects(); ++x) {
        int y = e.m.base.on_objects[x];
        if (e.m.on_c[x].rows() != tgt.c.dim[y] ||
            e.m.on_c[x].cols() != src.c.dim[x] ||
            e.m.on_e[x].rows() != tgt.e.dim[y] ||
            e.m.on_e[x].cols() != src.e.dim[x])
          throw std::invalid_argument("morphism '" + name +
                                      "' misses fibre maps at " +
                                      src.g.objects[x]);
      }
      w.vb_morphisms.emplace(name, std::move(e));
    }
  return w;
}

inline json workspace_to_json(const Workspace& w) {
  json out;
  out["schema"] = kSchemaVersion;
  if (!w.groupoids.empty()) {
    json g = json::object();
    for (const auto& [name, doc] : w.groupoids) g[name] = groupoid_to_json(doc);
    out["groupoids"] = std::move(g);
  }
  if (!w.reps.empty()) {
    json r = json::object();
    for (const auto& [name, doc] : w.reps)
      r[name] = rep_to_json(doc, w.rep_base.at(name));
    out["reps"] = std::move(r);
  }
  if (!w.las.empty()) {
    json l = json::object();
    for (const auto& [name, doc] : w.las)
      l[name] = la_to_json(doc, w.la_base.at(name));
    out["las"] = std::move(l);
  }
  if (!w.functors.empty()) {
    json f = json::object();
    for (const auto& [name, e] : w.functors)
      f[name] = functor_to_json(e.f, w.groupoid(e.source),
                                w.groupoid(e.target), e.source, e.target);
    out["functors"] = std::move(f);
  }
  if (!w.vb_morphisms.empty()) {
    json m = json::object();
    for (const auto& [name, e] : w.vb_morphisms) {
      json doc;
      doc["source"] = e.source;
      doc["target"] = e.target;
      if (!e.functor.empty()) doc["functor"] = e.functor;
      const RepUTH& src = w.rep(e.source);
      json on_c = json::object(), on_e = json::object();
      for (int x = 0; x < src.g.n_objects(); ++x) {
        on_c[src.g.objects[x]] = matrix_to_json(e.m.on_c[x]);
        on_e[src.g.objects[x]] = matrix_to_json(e.m.on_e[x]);
      }
      doc["on_C"] = std::move(on_c);
      doc["on_E"] = std::move(on_e);
      m[name] = std::move(doc);
    }
    out["vb_morphisms"] = std::move(m);
  }
  return out;
}

// Runs every object's validator; violations carry the object name.
inline Report validate_workspace(const Workspace& w,
                                 CheckLevel level = CheckLevel::full) {
  Report out;
  auto tag = [](const std::string& name, const Report& r) {
    Report t;
    for (const auto& v : r.violations) t.fail(name + ": " + v);
    return t;
  };
  for (const auto& [name, g] : w.groupoids)
    out.merge(tag("groupoid " + name, validate_groupoid(g)));
  for (const auto& [name, r] : w.reps)
    out.merge(tag("rep " + name, validate_rep(r, level)));
  for (const auto& [name, l] : w.las)
    out.merge(tag("la " + name, validate_la(l)));
  for (const auto& [name, e] : w.functors)
    out.merge(tag("functor " + name,
                  validate_functor(e.f, w.groupoid(e.source),
                                   w.groupoid(e.target))));
  for (const auto& [name, e] : w.vb_morphisms)
    out.merge(tag("morphism " + name,
                  validate_vb_morphism(e.m, w.rep(e.source), w.rep(e.target))));
  return out;
}

}  // namespace multsec
