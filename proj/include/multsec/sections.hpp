#pragma once

#include <stdexcept>
#include <vector>

#include "multsec/rep.hpp"
#include "multsec/twoterm.hpp"

namespace multsec {

// Coordinates for candidate sections of a split VB-groupoid: one kappa block
// per non-unit arrow (kappa at units is pinned to zero, the solver never
// carries those variables) followed by one e block per object.
struct SectionLayout {
  std::vector<int> kappa_offset;  // per arrow; -1 at units
  std::vector<int> e_offset;      // per object
  int total = 0;

  static SectionLayout of(const RepUTH& r) {
    SectionLayout l;
    l.kappa_offset.assign(r.g.n_arrows(), -1);
    int at = 0;
    for (int a = 0; a < r.g.n_arrows(); ++a) {
      if (r.g.is_unit(a)) continue;
      l.kappa_offset[a] = at;
      at += r.c.dim[r.g.tgt(a)];
    }
    for (int x = 0; x < r.g.n_objects(); ++x) {
      l.e_offset.push_back(at);
      at += r.e.dim[x];
    }
    l.total = at;
    return l;
  }
};

// Coordinates for core sections: one block per object of C.
struct CoreLayout {
  std::vector<int> offset;
  int total = 0;

  static CoreLayout of(const RepUTH& r) {
    CoreLayout l;
    int at = 0;
    for (int x = 0; x < r.g.n_objects(); ++x) {
      l.offset.push_back(at);
      at += r.c.dim[x];
    }
    l.total = at;
    return l;
  }
};

inline RatVector encode_core(const CoreSection& c, const CoreLayout& l) {
  RatVector v = zero_vector(l.total);
  for (size_t x = 0; x < c.at.size(); ++x)
    for (size_t i = 0; i < c.at[x].size(); ++i)
      v[l.offset[x] + i] = c.at[x][i];
  return v;
}

inline CoreSection decode_core(const RepUTH& r, const CoreLayout& l,
                               const RatVector& v) {
  CoreSection c;
  for (int x = 0; x < r.g.n_objects(); ++x) {
    RatVector b(static_cast<size_t>(r.c.dim[x]));
    for (int i = 0; i < r.c.dim[x]; ++i) b[i] = v[l.offset[x] + i];
    c.at.push_back(std::move(b));
  }
  return c;
}

// A multiplicative section in (kappa, e) data: kappa(g) in C_{tgt g} per
// arrow (zero at units) and e(x) in E_x per object.
struct MultSection {
  std::vector<RatVector> kappa;
  std::vector<RatVector> e;
};

inline RatVector encode_section(const MultSection& m, const SectionLayout& l) {
  RatVector v = zero_vector(l.total);
  for (size_t a = 0; a < m.kappa.size(); ++a) {
    if (l.kappa_offset[a] < 0) continue;
    for (size_t i = 0; i < m.kappa[a].size(); ++i)
      v[l.kappa_offset[a] + i] = m.kappa[a][i];
  }
  for (size_t x = 0; x < m.e.size(); ++x)
    for (size_t i = 0; i < m.e[x].size(); ++i) v[l.e_offset[x] + i] = m.e[x][i];
  return v;
}

inline MultSection decode_section(const RepUTH& r, const SectionLayout& l,
                                  const RatVector& v) {
  MultSection m;
  for (int a = 0; a < r.g.n_arrows(); ++a) {
    RatVector k(static_cast<size_t>(r.c.dim[r.g.tgt(a)]));
    if (l.kappa_offset[a] >= 0)
      for (int i = 0; i < r.c.dim[r.g.tgt(a)]; ++i)
        k[i] = v[l.kappa_offset[a] + i];
    m.kappa.push_back(std::move(k));
  }
  for (int x = 0; x < r.g.n_objects(); ++x) {
    RatVector e(static_cast<size_t>(r.e.dim[x]));
    for (int i = 0; i < r.e.dim[x]; ++i) e[i] = v[l.e_offset[x] + i];
    m.e.push_back(std::move(e));
  }
  return m;
}

// The full section determined by (kappa, e): V(g) = (kappa(g), g, e(src g)).
inline FullSection as_full_section(const RepUTH& r, const MultSection& m) {
  FullSection s;
  for (int a = 0; a < r.g.n_arrows(); ++a)
    s.at.push_back({m.kappa[a], a, m.e[r.g.src(a)]});
  return s;
}

// Residual of the target condition at g: partial kappa(g) + Delta^E_g e(src)
// - e(tgt).
inline RatVector target_residual(const RepUTH& r, const MultSection& m, int g) {
  RatVector v = mat_vec(r.partial[r.g.tgt(g)], m.kappa[g]);
  v = vec_add(v, mat_vec(r.delta_e[g], m.e[r.g.src(g)]));
  return vec_sub(v, m.e[r.g.tgt(g)]);
}

// Residual of the multiplicativity constraint at a composable pair:
// kappa(g1 g2) - kappa(g1) - Delta^C_{g1} kappa(g2) + Omega_{g1,g2} e(src g2).
// For a type-0 rep this is exactly the constraint tying the core components
// of a multiplicative section together.
inline RatVector cocycle_residual(const RepUTH& r, const MultSection& m, int g1,
                                  int g2) {
  RatVector v = m.kappa[r.g.compose(g1, g2)];
  v = vec_sub(v, m.kappa[g1]);
  v = vec_sub(v, mat_vec(r.delta_c[g1], m.kappa[g2]));
  return vec_add(v, mat_vec(r.omega_at(g1, g2), m.e[r.g.src(g2)]));
}

inline Report check_mult_section(const RepUTH& r, const MultSection& m) {
  Report rep;
  for (int x = 0; x < r.g.n_objects(); ++x)
    if (!vec_is_zero(m.kappa[r.g.unit(x)]))
      rep.fail("kappa nonzero at unit of " + r.g.objects[x]);
  for (int a = 0; a < r.g.n_arrows(); ++a)
    if (!vec_is_zero(target_residual(r, m, a)))
      rep.fail("target condition fails at " + r.g.arrows[a].id);
  for (auto [a, b] : r.g.composable_pairs())
    if (!vec_is_zero(cocycle_residual(r, m, a, b)))
      rep.fail("cocycle condition fails at (" + r.g.arrows[a].id + ", " +
               r.g.arrows[b].id + ")");
  return rep;
}

struct MultSectionSpace {
  SectionLayout layout;
  Subspace space;  // canonical basis inside the ambient (kappa, e) space

  int dim() const { return space.dim(); }
};

// Assembles the target + cocycle linear system over the free coordinates and
// returns the canonical basis of its solution space. Every basis vector is
// re-checked against the full invariant set (including unit arrows and pairs
// involving units, which the system omits as automatically satisfied).
inline MultSectionSpace solve_mult_sections(const RepUTH& r) {
  SectionLayout l = SectionLayout::of(r);
  const auto& g = r.g;
  std::vector<RatMatrix> rows;
  auto kappa_cols = [&](RatMatrix& m, int row0, int a, const RatMatrix& coef) {
    if (l.kappa_offset[a] < 0) return;  // unit: kappa pinned to 0
    for (int i = 0; i < coef.rows(); ++i)
      for (int j = 0; j < coef.cols(); ++j)
        m(row0 + i, l.kappa_offset[a] + j) += coef(i, j);
  };
  auto e_cols = [&](RatMatrix& m, int row0, int x, const RatMatrix& coef) {
    for (int i = 0; i < coef.rows(); ++i)
      for (int j = 0; j < coef.cols(); ++j)
        m(row0 + i, l.e_offset[x] + j) += coef(i, j);
  };
  int n_rows = 0;
  for (int a = 0; a < g.n_arrows(); ++a)
    if (!g.is_unit(a)) n_rows += r.e.dim[g.tgt(a)];
  for (auto [a, b] : g.composable_pairs())
    if (!g.is_unit(a) && !g.is_unit(b)) n_rows += r.c.dim[g.tgt(a)];
  RatMatrix sys(n_rows, l.total);
  int at = 0;
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.is_unit(a)) continue;
    kappa_cols(sys, at, a, r.partial[g.tgt(a)]);
    e_cols(sys, at, g.src(a), r.delta_e[a]);
    e_cols(sys, at, g.tgt(a), -RatMatrix::identity(r.e.dim[g.tgt(a)]));
    at += r.e.dim[g.tgt(a)];
  }
  for (auto [a, b] : g.composable_pairs()) {
    if (g.is_unit(a) || g.is_unit(b)) continue;
    int dc = r.c.dim[g.tgt(a)];
    kappa_cols(sys, at, g.compose(a, b), RatMatrix::identity(dc));
    kappa_cols(sys, at, a, -RatMatrix::identity(dc));
    kappa_cols(sys, at, b, -r.delta_c[a]);
    e_cols(sys, at, g.src(b), r.omega_at(a, b));
    at += dc;
  }
  MultSectionSpace out{l, kernel_basis(sys)};
  for (int j = 0; j < out.space.dim(); ++j) {
    MultSection m = decode_section(r, l, column_of(out.space.basis, j));
    Report chk = check_mult_section(r, m);
    if (!chk.ok())
      throw std::logic_error("solved section violates invariants:\n" +
                             chk.summary());
  }
  return out;
}

// The 2-term complex delta: Gamma(C) -> Gamma_mult(V), delta(c) = c^r - c^l.
struct SectionComplex {
  CoreLayout core;
  MultSectionSpace deg1;
  RatMatrix delta_ambient;  // ambient (kappa,e) coords x Gamma(C) coords
  RatMatrix delta;          // deg1 basis coords x Gamma(C) coords

  int deg0_dim() const { return core.total; }
  int deg1_dim() const { return deg1.dim(); }
};

// delta(c) in (kappa, e) data: kappa(g) = c_{tgt g} - Delta^C_g c_{src g},
// e(x) = partial c_x.
inline MultSection delta_of_core(const RepUTH& r, const CoreSection& c) {
  MultSection m;
  for (int a = 0; a < r.g.n_arrows(); ++a)
    m.kappa.push_back(
        vec_sub(c.at[r.g.tgt(a)], mat_vec(r.delta_c[a], c.at[r.g.src(a)])));
  for (int x = 0; x < r.g.n_objects(); ++x)
    m.e.push_back(mat_vec(r.partial[x], c.at[x]));
  return m;
}

inline SectionComplex build_complex(const RepUTH& r,
                                    const MultSectionSpace& solved) {
  SectionComplex k;
  k.core = CoreLayout::of(r);
  k.deg1 = solved;
  k.delta_ambient = RatMatrix(solved.layout.total, k.core.total);
  k.delta = RatMatrix(solved.dim(), k.core.total);
  for (int j = 0; j < k.core.total; ++j) {
    CoreSection c = decode_core(r, k.core, unit_vector(k.core.total, j));
    MultSection d = delta_of_core(r, c);
    Report chk = check_mult_section(r, d);
    if (!chk.ok())
      throw std::runtime_error(
          "delta of a core section is not multiplicative (invalid rep "
          "upstream):\n" +
          chk.summary());
    RatVector amb = encode_section(d, solved.layout);
    auto coords = coords_in(solved.space, amb);
    if (!coords)
      throw std::runtime_error(
          "delta image escapes the solved multiplicative-section space");
    for (int i = 0; i < solved.layout.total; ++i) k.delta_ambient(i, j) = amb[i];
    for (int i = 0; i < solved.dim(); ++i) k.delta(i, j) = (*coords)[i];
  }
  return k;
}

inline SectionComplex build_complex(const RepUTH& r) {
  return build_complex(r, solve_mult_sections(r));
}

inline TwoTermComplex as_two_term(const SectionComplex& k) {
  return {k.deg0_dim(), k.deg1_dim(), k.delta};
}

// Independently enumerated invariant core sections
// {c : c_{tgt g} = Delta^C_g c_{src g} for all g, partial c = 0}.
inline Subspace invariant_core_space(const RepUTH& r) {
  CoreLayout l = CoreLayout::of(r);
  int n_rows = 0;
  for (int a = 0; a < r.g.n_arrows(); ++a) n_rows += r.c.dim[r.g.tgt(a)];
  for (int x = 0; x < r.g.n_objects(); ++x) n_rows += r.e.dim[x];
  RatMatrix sys(n_rows, l.total);
  int at = 0;
  auto put = [&](int row0, int x, const RatMatrix& coef) {
    for (int i = 0; i < coef.rows(); ++i)
      for (int j = 0; j < coef.cols(); ++j)
        sys(row0 + i, l.offset[x] + j) += coef(i, j);
  };
  for (int a = 0; a < r.g.n_arrows(); ++a) {
    put(at, r.g.tgt(a), RatMatrix::identity(r.c.dim[r.g.tgt(a)]));
    put(at, r.g.src(a), -r.delta_c[a]);
    at += r.c.dim[r.g.tgt(a)];
  }
  for (int x = 0; x < r.g.n_objects(); ++x) {
    put(at, x, r.partial[x]);
    at += r.e.dim[x];
  }
  return kernel_basis(sys);
}

// Cohomology of the section complex. H0 = ker delta is cross-checked against
// the directly enumerated invariant core space; the two computations must
// agree exactly.
inline TwoTermCohomology cohomology(const RepUTH& r, const SectionComplex& k) {
  TwoTermCohomology c = cohomology_of(k.delta);
  if (!subspace_equal(c.h0, invariant_core_space(r)))
    throw std::logic_error(
        "ker(delta) disagrees with the invariant core sections");
  return c;
}

// ---- the 2-vector space structure maps ------------------------------------
//
// Objects: deg1 coordinates. Morphisms: pairs (c, V) with c in Gamma(C)
// coordinates and V the source object.

inline RatVector tv_source(const SectionComplex&, const RatVector&,
                           const RatVector& v) {
  return v;
}

inline RatVector tv_target(const SectionComplex& k, const RatVector& c,
                           const RatVector& v) {
  return vec_add(v, mat_vec(k.delta, c));
}

// (c1, V1) after (c0, V0): requires V1 = t(c0, V0); result (c1 + c0, V0).
inline std::pair<RatVector, RatVector> tv_compose(const SectionComplex& k,
                                                  const RatVector& c1,
                                                  const RatVector& v1,
                                                  const RatVector& c0,
                                                  const RatVector& v0) {
  if (v1 != tv_target(k, c0, v0))
    throw std::invalid_argument("two-vector space: morphisms not composable");
  return {vec_add(c1, c0), v0};
}

// Any c0 with delta(c0) = V' - V, solved by the pivot rule; nothing when
// V and V' lie in different H^1 classes.
inline std::optional<RatVector> morphism_between(const SectionComplex& k,
                                                 const RatVector& v,
                                                 const RatVector& v_prime) {
  return solve(k.delta, vec_sub(v_prime, v));
}

// ---- full-section level checks (dual pairing route) ----------------------

// True iff s is a groupoid morphism into the VB-groupoid covering a single
// object section: the content of "l_s is a linear 1-cocycle on V*".
inline bool is_linear_one_cocycle(const FullSection& s, const RepUTH& r) {
  const auto& g = r.g;
  if (static_cast<int>(s.at.size()) != g.n_arrows()) return false;
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (s.at[a].g != a) return false;
    check_vb_arrow(s.at[a], r);
  }
  std::vector<RatVector> e;
  for (int x = 0; x < g.n_objects(); ++x)
    e.push_back(vb_source(s.at[g.unit(x)], r));
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (vb_source(s.at[a], r) != e[g.src(a)]) return false;
    if (vb_target(s.at[a], r) != e[g.tgt(a)]) return false;
  }
  for (auto [a, b] : g.composable_pairs())
    if (vb_mul(s.at[a], s.at[b], r) != s.at[g.compose(a, b)]) return false;
  return true;
}

inline VBArrow vb_neg(const VBArrow& a) { return {vec_neg(a.c), a.g, vec_neg(a.e)}; }

// The full section whose fibre-wise pairing function is d(l_c) on the dual:
// per arrow, c(t g) . 0_g + 0_g . i(c(s g)), all through the structure-map
// arithmetic. Must coincide with delta(c) pointwise.
inline FullSection dual_d0(const CoreSection& c, const RepUTH& r) {
  FullSection s;
  for (int a = 0; a < r.g.n_arrows(); ++a) {
    int xt = r.g.tgt(a), xs = r.g.src(a);
    VBArrow core_t{c.at[xt], r.g.unit(xt), zero_vector(r.e.dim[xt])};
    VBArrow core_s{c.at[xs], r.g.unit(xs), zero_vector(r.e.dim[xs])};
    VBArrow right = vb_mul(core_t, vb_zero(a, r), r);
    VBArrow left = vb_neg(vb_mul(vb_zero(a, r), vb_inv(core_s, r), r));
    s.at.push_back(vb_sub(right, left));
  }
  return s;
}

}  // namespace multsec
