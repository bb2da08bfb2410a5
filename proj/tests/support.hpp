#pragma once

// Shared helpers for the unit and acceptance suites: small random groupoids,
// random *valid* representations up to homotopy, and mutation helpers.
//
// Valid random reps are produced in two steps. First a flat rep: pick an
// invertible U_x per object and set Delta_g = U_{tgt} U_{src}^{-1}, which is
// flat and unital for any groupoid; a core anchor of the form
// U^E_x P U^{C,-1}_x then intertwines the two actions. Second, a random
// change of horizontal lift is applied, which shears the data to a nonflat
// rep with nonzero Omega while presenting the same VB-groupoid.

#include <random>
#include <vector>

#include "multsec/rep.hpp"
#include "multsec/xmod.hpp"

namespace multsec::testsupport {

using Rng = std::mt19937_64;

inline Rat small_rat(Rng& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  return Rat(num(rng), den(rng));
}

inline RatMatrix random_matrix(Rng& rng, int rows, int cols) {
  RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = small_rat(rng);
  return m;
}

// Unitriangular times permutation-free shear: always invertible.
inline RatMatrix random_invertible(Rng& rng, int n) {
  RatMatrix l = RatMatrix::identity(n), u = RatMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) l(i, j) = small_rat(rng);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = small_rat(rng);
  return l * u;
}

inline RatMatrix inverse_of(const RatMatrix& m) {
  auto x = solve_all(m, RatMatrix::identity(m.rows()));
  if (!x) throw std::logic_error("inverse_of: singular");
  return *x;
}

inline FinGroupoid random_base(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 6);
  switch (kind(rng)) {
    case 0:
      return group_as_groupoid(cyclic_names(2), cyclic_table(2));
    case 1:
      return group_as_groupoid(cyclic_names(3), cyclic_table(3));
    case 2: {
      std::uniform_int_distribution<int> n(2, 4);
      std::vector<std::string> names;
      for (int i = 0, k = n(rng); i < k; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
      return pair_groupoid(names);
    }
    case 3:
      return action_groupoid(cyclic_names(2), cyclic_table(2), {"a", "b"},
                             {{0, 1}, {1, 0}});
    case 4:
      return group_as_groupoid(cyclic_names(4), cyclic_table(4));
    case 5:
      return cech_groupoid({"u1", "u2", "u3", "u4", "u5"},
                           {"p", "p", "q", "q", "q"});
    default:
      return cech_groupoid({"u1", "u2", "u3"}, {"p", "p", "q"});
  }
}

// Flat valid rep with intertwined core anchor (constant fibre dimensions).
inline RepUTH random_flat_rep(Rng& rng, const FinGroupoid& g, int dim_c,
                              int dim_e) {
  RepUTH r;
  r.g = g;
  r.c = constant_bundle(g.n_objects(), dim_c);
  r.e = constant_bundle(g.n_objects(), dim_e);
  std::vector<RatMatrix> uc, ue, uci, uei;
  for (int x = 0; x < g.n_objects(); ++x) {
    uc.push_back(random_invertible(rng, dim_c));
    ue.push_back(random_invertible(rng, dim_e));
    uci.push_back(inverse_of(uc.back()));
    uei.push_back(inverse_of(ue.back()));
  }
  RatMatrix core_anchor = random_matrix(rng, dim_e, dim_c);
  // keep some instances honestly of type 0 or type 1
  std::uniform_int_distribution<int> anchor_kind(0, 3);
  int k = anchor_kind(rng);
  if (k == 0) core_anchor = RatMatrix::zero(dim_e, dim_c);
  if (k == 1 && dim_c == dim_e) core_anchor = RatMatrix::identity(dim_c);
  for (int x = 0; x < g.n_objects(); ++x)
    r.partial.push_back(ue[x] * core_anchor * uci[x]);
  for (int a = 0; a < g.n_arrows(); ++a) {
    r.delta_c.push_back(uc[g.tgt(a)] * uci[g.src(a)]);
    r.delta_e.push_back(ue[g.tgt(a)] * uei[g.src(a)]);
  }
  return r;
}

// Random change of horizontal lift: a nonflat presentation of the same
// VB-groupoid, generally with nonzero Omega.
inline RepUTH shear_rep(Rng& rng, const RepUTH& r0) {
  const auto& g = r0.g;
  std::vector<RatMatrix> sigma;
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.is_unit(a))
      sigma.push_back(RatMatrix::zero(r0.c.dim[g.tgt(a)], r0.e.dim[g.src(a)]));
    else
      sigma.push_back(random_matrix(rng, r0.c.dim[g.tgt(a)], r0.e.dim[g.src(a)]));
  }
  return change_of_lift(r0, sigma);
}

inline RepUTH random_rep(Rng& rng, int max_fibre = 3) {
  FinGroupoid g = random_base(rng);
  std::uniform_int_distribution<int> d(0, max_fibre);
  RepUTH flat = random_flat_rep(rng, g, d(rng), d(rng));
  std::uniform_int_distribution<int> coin(0, 3);
  return coin(rng) == 0 ? flat : shear_rep(rng, flat);
}

// ---- crossed modules -------------------------------------------------------

// Change of bases: columns of p (resp. q) express the new g (resp. h) basis
// in the old coordinates.
inline XMod conjugate_xmod(const XMod& x, const RatMatrix& p,
                           const RatMatrix& q) {
  XMod out;
  out.g = transport_lie(x.g, p);
  out.h = transport_lie(x.h, q);
  out.partial = inverse_of(q) * x.partial * p;
  RatMatrix pinv = inverse_of(p);
  for (int j = 0; j < x.h.dim; ++j)
    out.phi.push_back(pinv * x.phi_of(column_of(q, j)) * p);
  return out;
}

// sl2 acting on its 2-dimensional standard representation with zero partial:
// a crossed module with abelian g.
inline XMod sl2_on_plane_xmod() {
  XMod x;
  x.g = LieAlg::abelian(2);
  x.h = sl2_lie();
  x.partial = RatMatrix::zero(3, 2);
  x.phi = {RatMatrix::parse("0 1; 0 0"),    // e
           RatMatrix::parse("0 0; 1 0"),    // f
           RatMatrix::parse("1 0; 0 -1")};  // h
  return x;
}

// The inner crossed module (g, g, id, ad).
inline XMod inner_xmod(const LieAlg& g) {
  XMod x;
  x.g = g;
  x.h = g;
  x.partial = RatMatrix::identity(g.dim);
  for (int j = 0; j < g.dim; ++j)
    x.phi.push_back(ad_matrix(g, unit_vector(g.dim, j)));
  return x;
}

inline XMod random_xmod(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  XMod x;
  switch (kind(rng)) {
    case 0:
      x = sl2_on_plane_xmod();
      break;
    case 1:
      x = inner_xmod(sl2_lie());
      break;
    case 2:
      x = inner_xmod(heisenberg_lie());
      break;
    case 3:
      x = direct_sum_xmod(sl2_on_plane_xmod(), inner_xmod(LieAlg::abelian(1)));
      break;
    default: {
      XMod a;  // abelian pair with zero everything
      a.g = LieAlg::abelian(2);
      a.h = LieAlg::abelian(1);
      a.partial = random_matrix(rng, 1, 2);
      a.phi = {RatMatrix::zero(2, 2)};
      // axiom 1 needs ad = 0 (abelian) and axiom 2 needs partial.phi = 0
      x = a;
      break;
    }
  }
  return conjugate_xmod(x, random_invertible(rng, x.g.dim),
                        random_invertible(rng, x.h.dim));
}

// A random strict quasi-isomorphism F: A -> B between random crossed
// modules, built as (conjugation) . (projection away from an acyclic
// summand) . (conjugation).
struct XModQuasiIso {
  XMod a;
  XMod b;
  XModMorphism f;
};

inline XModQuasiIso random_xmod_quasi_iso(Rng& rng) {
  XMod core = random_xmod(rng);
  std::uniform_int_distribution<int> extra(0, 2);
  XMod acyclic = inner_xmod(extra(rng) == 0 ? sl2_lie()
                                            : LieAlg::abelian(1 + extra(rng)));
  XModQuasiIso out;
  XMod sum = direct_sum_xmod(core, acyclic);
  RatMatrix p1 = random_invertible(rng, sum.g.dim);
  RatMatrix q1 = random_invertible(rng, sum.h.dim);
  RatMatrix p2 = random_invertible(rng, core.g.dim);
  RatMatrix q2 = random_invertible(rng, core.h.dim);
  out.a = conjugate_xmod(sum, p1, q1);
  out.b = conjugate_xmod(core, p2, q2);
  RatMatrix proj_g =
      hstack(RatMatrix::identity(core.g.dim),
             RatMatrix::zero(core.g.dim, acyclic.g.dim));
  RatMatrix proj_h =
      hstack(RatMatrix::identity(core.h.dim),
             RatMatrix::zero(core.h.dim, acyclic.h.dim));
  out.f.f1 = inverse_of(p2) * proj_g * p1;
  out.f.f2 = inverse_of(q2) * proj_h * q1;
  return out;
}

// Corrupts one entry of one structure matrix (never a unit arrow's Delta).
inline RepUTH mutate_rep(Rng& rng, RepUTH r) {
  std::vector<int> non_units;
  for (int a = 0; a < r.g.n_arrows(); ++a)
    if (!r.g.is_unit(a)) non_units.push_back(a);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::uniform_int_distribution<int> which(0, 2);
    int w = non_units.empty() ? 2 : which(rng);
    RatMatrix* m = nullptr;
    if (w == 0) {
      int a = non_units[std::uniform_int_distribution<size_t>(
          0, non_units.size() - 1)(rng)];
      m = &r.delta_c[a];
    } else if (w == 1) {
      int a = non_units[std::uniform_int_distribution<size_t>(
          0, non_units.size() - 1)(rng)];
      m = &r.delta_e[a];
    } else {
      int x = std::uniform_int_distribution<int>(0, r.g.n_objects() - 1)(rng);
      m = &r.partial[x];
    }
    if (m->rows() == 0 || m->cols() == 0) continue;
    int i = std::uniform_int_distribution<int>(0, m->rows() - 1)(rng);
    int j = std::uniform_int_distribution<int>(0, m->cols() - 1)(rng);
    (*m)(i, j) += 1;
    return r;
  }
  throw std::logic_error("mutate_rep: no mutable entry");
}

}  // namespace multsec::testsupport
