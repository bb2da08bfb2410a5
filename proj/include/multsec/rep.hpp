#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "multsec/groupoid.hpp"
#include "multsec/linalg.hpp"

namespace multsec {

// A vector bundle over the objects of a fixed groupoid: one fibre dimension
// per object.
struct VecBundle {
  std::vector<int> dim;

  int total() const {
    int t = 0;
    for (int d : dim) t += d;
    return t;
  }
};

inline VecBundle constant_bundle(int n_objects, int d) {
  VecBundle b;
  b.dim.assign(n_objects, d);
  return b;
}

inline VecBundle zero_bundle(int n_objects) { return constant_bundle(n_objects, 0); }

// A representation up to homotopy of G on the graded bundle C (+) E, i.e. a
// split VB-groupoid t*C (+) s*E => E. Data: the core anchor per object, unital
// quasi-actions on C and E per arrow, and the normalized curvature term per
// composable pair (entries absent from `omega` are zero blocks).
struct RepUTH {
  FinGroupoid g;
  VecBundle c;  // core
  VecBundle e;  // side
  std::vector<RatMatrix> partial;  // per object x: C_x -> E_x
  std::vector<RatMatrix> delta_c;  // per arrow a: C_{src a} -> C_{tgt a}
  std::vector<RatMatrix> delta_e;  // per arrow a: E_{src a} -> E_{tgt a}
  std::map<std::pair<int, int>, RatMatrix> omega;  // (g1,g2): E_{src g2} -> C_{tgt g1}

  RatMatrix omega_at(int g1, int g2) const {
    auto it = omega.find({g1, g2});
    if (it != omega.end()) return it->second;
    return RatMatrix::zero(c.dim[g.tgt(g1)], e.dim[g.src(g2)]);
  }
};

inline void check_rep_shapes(const RepUTH& r) {
  const auto& g = r.g;
  auto bad = []() { return std::invalid_argument("rep data has wrong shapes"); };
  if (static_cast<int>(r.c.dim.size()) != g.n_objects() ||
      static_cast<int>(r.e.dim.size()) != g.n_objects() ||
      r.partial.size() != static_cast<size_t>(g.n_objects()) ||
      r.delta_c.size() != static_cast<size_t>(g.n_arrows()) ||
      r.delta_e.size() != static_cast<size_t>(g.n_arrows()))
    throw bad();
  for (int x = 0; x < g.n_objects(); ++x)
    if (r.partial[x].rows() != r.e.dim[x] || r.partial[x].cols() != r.c.dim[x])
      throw bad();
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (r.delta_c[a].rows() != r.c.dim[g.tgt(a)] ||
        r.delta_c[a].cols() != r.c.dim[g.src(a)])
      throw bad();
    if (r.delta_e[a].rows() != r.e.dim[g.tgt(a)] ||
        r.delta_e[a].cols() != r.e.dim[g.src(a)])
      throw bad();
  }
  for (const auto& [pr, m] : r.omega) {
    if (!r.g.composable(pr.first, pr.second))
      throw std::invalid_argument("omega entry on non-composable pair");
    if (m.rows() != r.c.dim[g.tgt(pr.first)] ||
        m.cols() != r.e.dim[g.src(pr.second)])
      throw bad();
  }
}

// Checks unitality, normalization and the four structure equations; every
// violated equation is listed with its witnessing arrows. The fast level
// skips the cubic coherence sweep over composable triples.
inline Report validate_rep(const RepUTH& r,
                           CheckLevel level = CheckLevel::full) {
  check_rep_shapes(r);
  Report rep;
  const auto& g = r.g;
  auto name = [&](int a) { return g.arrows[a].id; };
  for (int x = 0; x < g.n_objects(); ++x) {
    int u = g.unit(x);
    if (r.delta_c[u] != RatMatrix::identity(r.c.dim[x]))
      rep.fail("deltaC not unital at " + g.objects[x]);
    if (r.delta_e[u] != RatMatrix::identity(r.e.dim[x]))
      rep.fail("deltaE not unital at " + g.objects[x]);
  }
  for (const auto& [pr, m] : r.omega)
    if ((g.is_unit(pr.first) || g.is_unit(pr.second)) && !m.is_zero())
      rep.fail("omega not normalized at (" + name(pr.first) + ", " +
               name(pr.second) + ")");
  for (int a = 0; a < g.n_arrows(); ++a)
    if (r.delta_e[a] * r.partial[g.src(a)] != r.partial[g.tgt(a)] * r.delta_c[a])
      rep.fail("deltaE.partial != partial.deltaC at " + name(a));
  for (auto [a, b] : g.composable_pairs()) {
    int ab = g.compose(a, b);
    if (r.delta_c[a] * r.delta_c[b] - r.delta_c[ab] +
            r.omega_at(a, b) * r.partial[g.src(b)] !=
        RatMatrix::zero(r.c.dim[g.tgt(a)], r.c.dim[g.src(b)]))
      rep.fail("deltaC cocycle equation fails at (" + name(a) + ", " + name(b) +
               ")");
    if (r.delta_e[a] * r.delta_e[b] - r.delta_e[ab] +
            r.partial[g.tgt(a)] * r.omega_at(a, b) !=
        RatMatrix::zero(r.e.dim[g.tgt(a)], r.e.dim[g.src(b)]))
      rep.fail("deltaE cocycle equation fails at (" + name(a) + ", " + name(b) +
               ")");
  }
  if (level == CheckLevel::full)
    for (auto [a, b, c] : g.composable_triples()) {
      if (r.delta_c[a] * r.omega_at(b, c) - r.omega_at(g.compose(a, b), c) +
              r.omega_at(a, g.compose(b, c)) -
              r.omega_at(a, b) * r.delta_e[c] !=
          RatMatrix::zero(r.c.dim[g.tgt(a)], r.e.dim[g.src(c)]))
        rep.fail("omega coherence fails at (" + name(a) + ", " + name(b) +
                 ", " + name(c) + ")");
    }
  return rep;
}

// An arrow of the induced VB-groupoid: (c, g, e) with c in C_{tgt g} and
// e in E_{src g}.
struct VBArrow {
  RatVector c;
  int g = -1;
  RatVector e;

  bool operator==(const VBArrow& o) const {
    return g == o.g && c == o.c && e == o.e;
  }
};

inline void check_vb_arrow(const VBArrow& a, const RepUTH& r) {
  if (static_cast<int>(a.c.size()) != r.c.dim[r.g.tgt(a.g)] ||
      static_cast<int>(a.e.size()) != r.e.dim[r.g.src(a.g)])
    throw std::invalid_argument("VB arrow has wrong fibre dimensions");
}

inline VBArrow vb_zero(int g, const RepUTH& r) {
  return {zero_vector(r.c.dim[r.g.tgt(g)]), g, zero_vector(r.e.dim[r.g.src(g)])};
}

inline VBArrow vb_unit(int x, const RatVector& e, const RepUTH& r) {
  if (static_cast<int>(e.size()) != r.e.dim[x])
    throw std::invalid_argument("vb_unit fibre mismatch");
  return {zero_vector(r.c.dim[x]), r.g.unit(x), e};
}

inline RatVector vb_source(const VBArrow& a, const RepUTH& r) {
  check_vb_arrow(a, r);
  return a.e;
}

inline RatVector vb_target(const VBArrow& a, const RepUTH& r) {
  check_vb_arrow(a, r);
  return vec_add(mat_vec(r.partial[r.g.tgt(a.g)], a.c),
                 mat_vec(r.delta_e[a.g], a.e));
}

inline VBArrow vb_mul(const VBArrow& a1, const VBArrow& a2, const RepUTH& r) {
  check_vb_arrow(a1, r);
  check_vb_arrow(a2, r);
  if (!r.g.composable(a1.g, a2.g))
    throw std::invalid_argument("vb_mul: base arrows not composable");
  if (vb_source(a1, r) != vb_target(a2, r))
    throw std::invalid_argument("vb_mul: source/target mismatch");
  RatVector c = vec_add(a1.c, mat_vec(r.delta_c[a1.g], a2.c));
  c = vec_sub(c, mat_vec(r.omega_at(a1.g, a2.g), a2.e));
  return {std::move(c), r.g.compose(a1.g, a2.g), a2.e};
}

inline VBArrow vb_inv(const VBArrow& a, const RepUTH& r) {
  check_vb_arrow(a, r);
  int gi = r.g.inv(a.g);
  RatVector c = vec_sub(mat_vec(r.omega_at(gi, a.g), a.e),
                        mat_vec(r.delta_c[gi], a.c));
  return {std::move(c), gi, vb_target(a, r)};
}

// Fibre-wise subtraction of arrows over the same base arrow.
inline VBArrow vb_sub(const VBArrow& a, const VBArrow& b) {
  if (a.g != b.g) throw std::invalid_argument("vb_sub: different base arrows");
  return {vec_sub(a.c, b.c), a.g, vec_sub(a.e, b.e)};
}

// One fibre vector per object of C.
struct CoreSection {
  std::vector<RatVector> at;
};

// One VB arrow over each base arrow.
struct FullSection {
  std::vector<VBArrow> at;
};

// c^r(g) = (c_{tgt g}, g, 0).
inline FullSection right_invariant(const CoreSection& c, const RepUTH& r) {
  FullSection s;
  for (int a = 0; a < r.g.n_arrows(); ++a)
    s.at.push_back({c.at[r.g.tgt(a)], a, zero_vector(r.e.dim[r.g.src(a)])});
  return s;
}

// c^l(g) = (Delta^C_g c_{src g}, g, -partial c_{src g}).
inline FullSection left_invariant(const CoreSection& c, const RepUTH& r) {
  FullSection s;
  for (int a = 0; a < r.g.n_arrows(); ++a) {
    int x = r.g.src(a);
    s.at.push_back({mat_vec(r.delta_c[a], c.at[x]), a,
                    vec_neg(mat_vec(r.partial[x], c.at[x]))});
  }
  return s;
}

// Split encoding of the pullback VB-groupoid q!_E G = s*E (+) t*E, the model
// regular VB-groupoid of type 1. The quasi-actions vanish away from units and
// Omega_{g,g^-1} = id; this is the unique normalized unital split form whose
// induced structure maps are s(e1,g,e2)=e2, t(e1,g,e2)=e1.
inline RepUTH type1_pullback(const FinGroupoid& g, const VecBundle& e) {
  RepUTH r;
  r.g = g;
  r.c = e;
  r.e = e;
  for (int x = 0; x < g.n_objects(); ++x)
    r.partial.push_back(RatMatrix::identity(e.dim[x]));
  for (int a = 0; a < g.n_arrows(); ++a) {
    int ds = e.dim[g.src(a)], dt = e.dim[g.tgt(a)];
    if (g.is_unit(a)) {
      r.delta_c.push_back(RatMatrix::identity(ds));
      r.delta_e.push_back(RatMatrix::identity(ds));
    } else {
      r.delta_c.push_back(RatMatrix::zero(dt, ds));
      r.delta_e.push_back(RatMatrix::zero(dt, ds));
    }
  }
  for (auto [a, b] : g.composable_pairs())
    if (!g.is_unit(a) && !g.is_unit(b) && g.is_unit(g.compose(a, b)))
      r.omega[{a, b}] = RatMatrix::identity(e.dim[g.src(b)]);
  return r;
}

// Type-0 rep: zero core anchor; the remaining data is (Delta^C, Delta^E,
// Omega) subject to the structure equations with partial = 0.
inline RepUTH type0_rep(const FinGroupoid& g, const VecBundle& c,
                        const VecBundle& e, std::vector<RatMatrix> delta_c,
                        std::vector<RatMatrix> delta_e,
                        std::map<std::pair<int, int>, RatMatrix> omega) {
  RepUTH r;
  r.g = g;
  r.c = c;
  r.e = e;
  for (int x = 0; x < g.n_objects(); ++x)
    r.partial.push_back(RatMatrix::zero(e.dim[x], c.dim[x]));
  r.delta_c = std::move(delta_c);
  r.delta_e = std::move(delta_e);
  r.omega = std::move(omega);
  return r;
}

// Honest representation: C = 0 and a flat unital action on E.
inline RepUTH rep_of_representation(const FinGroupoid& g, const VecBundle& e,
                                    std::vector<RatMatrix> delta_e) {
  RepUTH r;
  r.g = g;
  r.c = zero_bundle(g.n_objects());
  r.e = e;
  for (int x = 0; x < g.n_objects(); ++x)
    r.partial.push_back(RatMatrix::zero(e.dim[x], 0));
  for (int a = 0; a < g.n_arrows(); ++a)
    r.delta_c.push_back(RatMatrix::zero(0, 0));
  r.delta_e = std::move(delta_e);
  return r;
}

// Change of horizontal lift by sigma_g: E_{src g} -> C_{tgt g} (zero at
// units): a different split presentation of the same VB-groupoid. Transforms
//   Delta^C -> Delta^C + sigma partial
//   Delta^E -> Delta^E + partial sigma
//   Omega_{g,h} -> Omega + sigma_{gh} - Delta^C_g sigma_h
//                  - sigma_g Delta^E_h - sigma_g partial sigma_h
inline RepUTH change_of_lift(const RepUTH& r0,
                             const std::vector<RatMatrix>& sigma) {
  const auto& g = r0.g;
  if (sigma.size() != static_cast<size_t>(g.n_arrows()))
    throw std::invalid_argument("change_of_lift: one matrix per arrow");
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (sigma[a].rows() != r0.c.dim[g.tgt(a)] ||
        sigma[a].cols() != r0.e.dim[g.src(a)])
      throw std::invalid_argument("change_of_lift: wrong shape at " +
                                  g.arrows[a].id);
    if (g.is_unit(a) && !sigma[a].is_zero())
      throw std::invalid_argument("change_of_lift: sigma must vanish at units");
  }
  RepUTH r = r0;
  for (int a = 0; a < g.n_arrows(); ++a) {
    r.delta_c[a] = r0.delta_c[a] + sigma[a] * r0.partial[g.src(a)];
    r.delta_e[a] = r0.delta_e[a] + r0.partial[g.tgt(a)] * sigma[a];
  }
  r.omega.clear();
  for (auto [a, b] : g.composable_pairs()) {
    int ab = g.compose(a, b);
    RatMatrix o = r0.omega_at(a, b) + sigma[ab] - r0.delta_c[a] * sigma[b] -
                  sigma[a] * r0.delta_e[b] -
                  sigma[a] * r0.partial[g.src(a)] * sigma[b];
    if (!o.is_zero()) r.omega[{a, b}] = std::move(o);
  }
  return r;
}

enum class RegularType { type0, type1, mixed, nonregular };

struct RegularClass {
  RegularType type;
  std::vector<int> rank_at;  // rank of the core anchor per object
};

// Classification by exact ranks of the core anchor: type 0 when it vanishes,
// type 1 when it is a fibrewise isomorphism, mixed when the rank is constant
// on each orbit, nonregular otherwise.
inline RegularClass is_regular(const RepUTH& r) {
  RegularClass out;
  bool all_zero = true, all_iso = true;
  for (int x = 0; x < r.g.n_objects(); ++x) {
    int rk = rank(r.partial[x]);
    out.rank_at.push_back(rk);
    all_zero = all_zero && r.partial[x].is_zero();
    if (!(r.c.dim[x] == r.e.dim[x] && rk == r.c.dim[x])) all_iso = false;
  }
  auto orbit = r.g.orbit_of_object();
  std::map<int, int> orbit_rank;
  bool constant = true;
  for (int x = 0; x < r.g.n_objects(); ++x) {
    auto [it, inserted] = orbit_rank.emplace(orbit[x], out.rank_at[x]);
    if (!inserted && it->second != out.rank_at[x]) constant = false;
  }
  if (!constant)
    out.type = RegularType::nonregular;
  else if (all_zero)
    out.type = RegularType::type0;
  else if (all_iso)
    out.type = RegularType::type1;
  else
    out.type = RegularType::mixed;
  return out;
}

inline RepUTH direct_sum(const RepUTH& r1, const RepUTH& r2) {
  if (!(r1.g == r2.g))
    throw std::invalid_argument("direct_sum: different base groupoids");
  RepUTH r;
  r.g = r1.g;
  for (int x = 0; x < r.g.n_objects(); ++x) {
    r.c.dim.push_back(r1.c.dim[x] + r2.c.dim[x]);
    r.e.dim.push_back(r1.e.dim[x] + r2.e.dim[x]);
    r.partial.push_back(block_diag(r1.partial[x], r2.partial[x]));
  }
  for (int a = 0; a < r.g.n_arrows(); ++a) {
    r.delta_c.push_back(block_diag(r1.delta_c[a], r2.delta_c[a]));
    r.delta_e.push_back(block_diag(r1.delta_e[a], r2.delta_e[a]));
  }
  for (auto [a, b] : r.g.composable_pairs()) {
    RatMatrix o = block_diag(r1.omega_at(a, b), r2.omega_at(a, b));
    if (!o.is_zero()) r.omega[{a, b}] = std::move(o);
  }
  return r;
}

// A morphism of split VB-groupoids covering a groupoid functor: fibrewise
// maps on core and side bundles.
struct VBMorphism {
  GroupoidFunctor base;
  std::vector<RatMatrix> on_c;  // per source object x: C_x -> D_{phi0 x}
  std::vector<RatMatrix> on_e;  // per source object x: E_x -> F_{phi0 x}
};

inline VBMorphism identity_vb_morphism(const RepUTH& r) {
  VBMorphism m;
  m.base = identity_functor(r.g);
  for (int x = 0; x < r.g.n_objects(); ++x) {
    m.on_c.push_back(RatMatrix::identity(r.c.dim[x]));
    m.on_e.push_back(RatMatrix::identity(r.e.dim[x]));
  }
  return m;
}

// Applies the induced total map to a VB arrow.
inline VBArrow vb_apply(const VBMorphism& m, const VBArrow& a,
                        const RepUTH& src) {
  return {mat_vec(m.on_c[src.g.tgt(a.g)], a.c), m.base.on_arrows[a.g],
          mat_vec(m.on_e[src.g.src(a.g)], a.e)};
}

inline Report validate_vb_morphism(const VBMorphism& m, const RepUTH& r1,
                                   const RepUTH& r2) {
  Report rep = validate_functor(m.base, r1.g, r2.g);
  if (!rep.ok()) return rep;
  const auto& g = r1.g;
  for (int x = 0; x < g.n_objects(); ++x) {
    if (m.on_c[x].rows() != r2.c.dim[m.base.on_objects[x]] ||
        m.on_c[x].cols() != r1.c.dim[x] ||
        m.on_e[x].rows() != r2.e.dim[m.base.on_objects[x]] ||
        m.on_e[x].cols() != r1.e.dim[x])
      throw std::invalid_argument("vb morphism has wrong fibre shapes");
    if (m.on_e[x] * r1.partial[x] != r2.partial[m.base.on_objects[x]] * m.on_c[x])
      rep.fail("morphism does not intertwine partial at " + g.objects[x]);
  }
  for (int a = 0; a < g.n_arrows(); ++a) {
    int fa = m.base.on_arrows[a];
    if (m.on_c[g.tgt(a)] * r1.delta_c[a] != r2.delta_c[fa] * m.on_c[g.src(a)])
      rep.fail("morphism does not intertwine deltaC at " + g.arrows[a].id);
    if (m.on_e[g.tgt(a)] * r1.delta_e[a] != r2.delta_e[fa] * m.on_e[g.src(a)])
      rep.fail("morphism does not intertwine deltaE at " + g.arrows[a].id);
  }
  for (auto [a, b] : g.composable_pairs()) {
    if (m.on_c[g.tgt(a)] * r1.omega_at(a, b) !=
        r2.omega_at(m.base.on_arrows[a], m.base.on_arrows[b]) * m.on_e[g.src(b)])
      rep.fail("morphism does not intertwine omega at (" + g.arrows[a].id +
               ", " + g.arrows[b].id + ")");
  }
  return rep;
}

// Block projection (R1 (+) R2) -> R1 over the identity.
inline VBMorphism sum_projection(const RepUTH& r1, const RepUTH& r2,
                                 bool first_factor) {
  VBMorphism m;
  m.base = identity_functor(r1.g);
  for (int x = 0; x < r1.g.n_objects(); ++x) {
    int c1 = r1.c.dim[x], c2 = r2.c.dim[x];
    int e1 = r1.e.dim[x], e2 = r2.e.dim[x];
    RatMatrix pc = first_factor ? hstack(RatMatrix::identity(c1), RatMatrix::zero(c1, c2))
                                : hstack(RatMatrix::zero(c2, c1), RatMatrix::identity(c2));
    RatMatrix pe = first_factor ? hstack(RatMatrix::identity(e1), RatMatrix::zero(e1, e2))
                                : hstack(RatMatrix::zero(e2, e1), RatMatrix::identity(e2));
    m.on_c.push_back(std::move(pc));
    m.on_e.push_back(std::move(pe));
  }
  return m;
}

}  // namespace multsec
