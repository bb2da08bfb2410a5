#pragma once

#include <stdexcept>
#include <vector>

#include "multsec/lie.hpp"
#include "multsec/twoterm.hpp"

namespace multsec {

// A crossed module of Lie algebras g -> h -> Der(g): the action of the j-th
// h-basis vector on g is the matrix phi[j].
struct XMod {
  LieAlg g;
  LieAlg h;
  RatMatrix partial;           // h.dim x g.dim
  std::vector<RatMatrix> phi;  // per h basis vector, g.dim x g.dim

  RatMatrix phi_of(const RatVector& x) const {
    RatMatrix m = RatMatrix::zero(g.dim, g.dim);
    for (int j = 0; j < h.dim; ++j)
      if (x[j] != 0) m = m + x[j] * phi[j];
    return m;
  }

  TwoTermComplex complex() const { return {g.dim, h.dim, partial}; }
};

inline Report validate_xmod(const XMod& x) {
  Report r;
  r.merge(validate_lie(x.g));
  r.merge(validate_lie(x.h));
  if (x.partial.rows() != x.h.dim || x.partial.cols() != x.g.dim ||
      static_cast<int>(x.phi.size()) != x.h.dim) {
    r.fail("crossed module data has wrong shapes");
    return r;
  }
  for (int j = 0; j < x.h.dim; ++j) {
    if (x.phi[j].rows() != x.g.dim || x.phi[j].cols() != x.g.dim) {
      r.fail("action matrix has wrong shape");
      return r;
    }
    if (!is_derivation(x.phi[j], x.g))
      r.fail("phi of h-basis " + std::to_string(j) + " is not a derivation");
  }
  // phi is a Lie algebra morphism h -> Der(g)
  for (int i = 0; i < x.h.dim; ++i)
    for (int j = i + 1; j < x.h.dim; ++j) {
      RatMatrix lhs = x.phi_of(x.h.bracket_basis(i, j));
      RatMatrix rhs = x.phi[i] * x.phi[j] - x.phi[j] * x.phi[i];
      if (lhs != rhs)
        r.fail("phi is not a Lie morphism at h-basis pair (" +
               std::to_string(i) + "," + std::to_string(j) + ")");
    }
  // axiom 1: phi_{partial u} = ad_u
  for (int i = 0; i < x.g.dim; ++i)
    if (x.phi_of(column_of(x.partial, i)) !=
        ad_matrix(x.g, unit_vector(x.g.dim, i)))
      r.fail("phi_(partial u) != ad_u at g-basis " + std::to_string(i));
  // axiom 2: partial . phi_X = ad_X . partial
  for (int j = 0; j < x.h.dim; ++j)
    if (x.partial * x.phi[j] !=
        ad_matrix(x.h, unit_vector(x.h.dim, j)) * x.partial)
      r.fail("partial.phi_X != ad_X.partial at h-basis " + std::to_string(j));
  return r;
}

// Semidirect product g x| h with bracket
// [(u,X),(v,Y)] = ([u,v] + phi_X v - phi_Y u, [X,Y]).
inline LieAlg semidirect(const XMod& x) {
  const int n = x.g.dim + x.h.dim;
  LieAlg l = LieAlg::abelian(n);
  auto basis_g = [&](int i) { return unit_vector(x.g.dim, i); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatVector gpart = zero_vector(x.g.dim), hpart = zero_vector(x.h.dim);
      if (i < x.g.dim && j < x.g.dim)
        gpart = x.g.bracket_basis(i, j);
      else if (i >= x.g.dim && j < x.g.dim)
        gpart = mat_vec(x.phi[i - x.g.dim], basis_g(j));
      else if (i < x.g.dim && j >= x.g.dim)
        gpart = vec_neg(mat_vec(x.phi[j - x.g.dim], basis_g(i)));
      else
        hpart = x.h.bracket_basis(i - x.g.dim, j - x.g.dim);
      RatVector full = vec_concat(gpart, hpart);
      l.bracket_basis(i, j) = full;
    }
  return l;
}

// A strict Lie 2-algebra presented as an internal category in Lie algebras;
// composition is forced by linearity: a . b = a + b - unit(src a).
struct Lie2 {
  LieAlg g1;
  LieAlg g0;
  RatMatrix src;   // g0.dim x g1.dim
  RatMatrix tgt;   // g0.dim x g1.dim
  RatMatrix unit;  // g1.dim x g0.dim
};

inline Report validate_lie2(const Lie2& l) {
  Report r;
  r.merge(validate_lie(l.g1));
  r.merge(validate_lie(l.g0));
  if (!is_lie_morphism(l.src, l.g1, l.g0)) r.fail("source is not a Lie morphism");
  if (!is_lie_morphism(l.tgt, l.g1, l.g0)) r.fail("target is not a Lie morphism");
  if (!is_lie_morphism(l.unit, l.g0, l.g1)) r.fail("unit is not a Lie morphism");
  if (l.src * l.unit != RatMatrix::identity(l.g0.dim))
    r.fail("src . unit != id");
  if (l.tgt * l.unit != RatMatrix::identity(l.g0.dim))
    r.fail("tgt . unit != id");
  // composition is a Lie morphism on the fibred subalgebra
  // {(a,b) : src a = tgt b} of g1 (+) g1
  RatMatrix cond(l.g0.dim, 2 * l.g1.dim);
  for (int i = 0; i < l.g0.dim; ++i)
    for (int j = 0; j < l.g1.dim; ++j) {
      cond(i, j) = l.src(i, j);
      cond(i, l.g1.dim + j) = -l.tgt(i, j);
    }
  Subspace fibred = kernel_basis(cond);
  auto compose = [&](const RatVector& ab) {
    RatVector a(ab.begin(), ab.begin() + l.g1.dim);
    RatVector b(ab.begin() + l.g1.dim, ab.end());
    return vec_sub(vec_add(a, b), mat_vec(l.unit, mat_vec(l.src, a)));
  };
  for (int i = 0; i < fibred.dim(); ++i)
    for (int j = i + 1; j < fibred.dim(); ++j) {
      RatVector p = column_of(fibred.basis, i), q = column_of(fibred.basis, j);
      RatVector pa(p.begin(), p.begin() + l.g1.dim),
          pb(p.begin() + l.g1.dim, p.end());
      RatVector qa(q.begin(), q.begin() + l.g1.dim),
          qb(q.begin() + l.g1.dim, q.end());
      RatVector br =
          vec_concat(l.g1.bracket(pa, qa), l.g1.bracket(pb, qb));
      if (compose(br) != l.g1.bracket(compose(p), compose(q))) {
        r.fail("composition is not a Lie morphism on the fibred subalgebra");
        return r;
      }
    }
  return r;
}

// The canonical semidirect form g x| h => h.
inline Lie2 xmod_to_lie2(const XMod& x) {
  Lie2 l;
  l.g1 = semidirect(x);
  l.g0 = x.h;
  l.src = RatMatrix(x.h.dim, x.g.dim + x.h.dim);
  l.tgt = RatMatrix(x.h.dim, x.g.dim + x.h.dim);
  for (int i = 0; i < x.h.dim; ++i) {
    l.src(i, x.g.dim + i) = 1;
    l.tgt(i, x.g.dim + i) = 1;
  }
  for (int i = 0; i < x.h.dim; ++i)
    for (int j = 0; j < x.g.dim; ++j) l.tgt(i, j) = x.partial(i, j);
  l.unit = RatMatrix(x.g.dim + x.h.dim, x.h.dim);
  for (int i = 0; i < x.h.dim; ++i) l.unit(x.g.dim + i, i) = 1;
  return l;
}

// Ker(s) -> g0 with the action ad . unit; on objects in canonical semidirect
// form this inverts xmod_to_lie2 on the nose.
inline XMod lie2_to_xmod(const Lie2& l) {
  Subspace ker = kernel_basis(l.src);
  XMod x;
  x.g = subalgebra(l.g1, ker);
  x.h = l.g0;
  x.partial = l.tgt * ker.basis;
  for (int j = 0; j < l.g0.dim; ++j) {
    RatVector xj = mat_vec(l.unit, unit_vector(l.g0.dim, j));
    RatMatrix act(ker.dim(), ker.dim());
    for (int i = 0; i < ker.dim(); ++i) {
      RatVector br = l.g1.bracket(xj, column_of(ker.basis, i));
      auto coords = coords_in(ker, br);
      if (!coords)
        throw std::invalid_argument(
            "lie2_to_xmod: Ker(s) is not preserved by the unit action");
      for (int k = 0; k < ker.dim(); ++k) act(k, i) = (*coords)[k];
    }
    x.phi.push_back(std::move(act));
  }
  return x;
}

inline XMod direct_sum_xmod(const XMod& a, const XMod& b) {
  XMod s;
  s.g = direct_sum_lie(a.g, b.g);
  s.h = direct_sum_lie(a.h, b.h);
  s.partial = block_diag(a.partial, b.partial);
  for (int j = 0; j < a.h.dim; ++j)
    s.phi.push_back(block_diag(a.phi[j], RatMatrix::zero(b.g.dim, b.g.dim)));
  for (int j = 0; j < b.h.dim; ++j)
    s.phi.push_back(block_diag(RatMatrix::zero(a.g.dim, a.g.dim), b.phi[j]));
  return s;
}

// ---- morphisms -------------------------------------------------------------

struct XModMorphism {
  RatMatrix f1;  // g -> g'
  RatMatrix f2;  // h -> h'
};

inline XModMorphism identity_xmod_morphism(const XMod& x) {
  return {RatMatrix::identity(x.g.dim), RatMatrix::identity(x.h.dim)};
}

inline Report validate_xmod_morphism(const XModMorphism& f, const XMod& a,
                                     const XMod& b) {
  Report r;
  if (f.f1.rows() != b.g.dim || f.f1.cols() != a.g.dim ||
      f.f2.rows() != b.h.dim || f.f2.cols() != a.h.dim) {
    r.fail("morphism has wrong shapes");
    return r;
  }
  if (!is_lie_morphism(f.f2, a.h, b.h)) r.fail("f2 is not a Lie morphism");
  if (f.f2 * a.partial != b.partial * f.f1)
    r.fail("f2 . partial != partial' . f1");
  for (int j = 0; j < a.h.dim; ++j)
    if (f.f1 * a.phi[j] != b.phi_of(column_of(f.f2, j)) * f.f1)
      r.fail("action intertwining fails at h-basis " + std::to_string(j));
  // f1 is then automatically a Lie morphism; asserted
  if (r.ok() && !is_lie_morphism(f.f1, a.g, b.g))
    r.fail("f1 fails to be a Lie morphism despite i) and ii)");
  return r;
}

inline bool is_xmod_quasi_iso(const XModMorphism& f, const XMod& a,
                              const XMod& b) {
  return is_quasi_iso({f.f1, f.f2}, cohomology_of(a.complex()),
                      cohomology_of(b.complex()));
}

// ---- Lie structure on cohomology -------------------------------------------

struct HLieAlgebras {
  TwoTermCohomology coh;
  LieAlg h0;  // abelian by the crossed module axioms; verified
  LieAlg h1;  // induced bracket on representatives; verified well-defined
};

inline HLieAlgebras h_lie_algebras(const XMod& x) {
  HLieAlgebras out;
  out.coh = cohomology_of(x.complex());
  // H0: the restriction of the g-bracket to ker(partial), which the axioms
  // force to vanish.
  for (int i = 0; i < out.coh.dim_h0(); ++i)
    for (int j = 0; j < out.coh.dim_h0(); ++j)
      if (!vec_is_zero(x.g.bracket(column_of(out.coh.h0.basis, i),
                                   column_of(out.coh.h0.basis, j))))
        throw std::logic_error("H0 bracket is not identically zero");
  out.h0 = LieAlg::abelian(out.coh.dim_h0());
  // H1: the image of partial must be an ideal for the induced bracket to be
  // representative independent.
  Subspace im = image_basis(x.partial);
  for (int i = 0; i < x.g.dim; ++i)
    for (int j = 0; j < x.h.dim; ++j)
      if (!contains(im, x.h.bracket(column_of(x.partial, i),
                                    unit_vector(x.h.dim, j))))
        throw std::logic_error("im(partial) is not an ideal in h");
  out.h1 = LieAlg::abelian(out.coh.dim_h1());
  for (int i = 0; i < out.coh.dim_h1(); ++i)
    for (int j = 0; j < out.coh.dim_h1(); ++j) {
      RatVector br = x.h.bracket(column_of(out.coh.h1.representatives, i),
                                 column_of(out.coh.h1.representatives, j));
      out.h1.bracket_basis(i, j) = mat_vec(out.coh.h1.project, br);
    }
  Report chk = validate_lie(out.h1);
  if (!chk.ok())
    throw std::logic_error("induced H1 bracket is not a Lie algebra:\n" +
                           chk.summary());
  return out;
}

}  // namespace multsec
