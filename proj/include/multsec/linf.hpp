#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "multsec/xmod.hpp"

namespace multsec {

// Antisymmetric bilinear map h x h -> Q^target.
struct Bilinear {
  int n = 0;
  int target = 0;
  std::vector<RatVector> table;  // n*n entries

  static Bilinear zero(int n, int target) {
    Bilinear b;
    b.n = n;
    b.target = target;
    b.table.assign(static_cast<size_t>(n) * n, zero_vector(target));
    return b;
  }

  const RatVector& at(int i, int j) const {
    return table[static_cast<size_t>(i) * n + j];
  }
  // sets (i,j) and forces antisymmetry
  void set(int i, int j, const RatVector& v) {
    table[static_cast<size_t>(i) * n + j] = v;
    table[static_cast<size_t>(j) * n + i] = vec_neg(v);
  }
  RatVector eval(const RatVector& x, const RatVector& y) const {
    RatVector out = zero_vector(target);
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        const RatVector& v = at(i, j);
        Rat f = x[i] * y[j];
        for (int k = 0; k < target; ++k)
          if (v[k] != 0) out[k] += f * v[k];
      }
    }
    return out;
  }
  bool is_zero() const {
    for (const auto& v : table)
      if (!vec_is_zero(v)) return false;
    return true;
  }
};

// Alternating trilinear map h x h x h -> Q^target.
struct Trilinear {
  int n = 0;
  int target = 0;
  std::vector<RatVector> table;  // n^3 entries

  static Trilinear zero(int n, int target) {
    Trilinear t;
    t.n = n;
    t.target = target;
    t.table.assign(static_cast<size_t>(n) * n * n, zero_vector(target));
    return t;
  }

  const RatVector& at(int i, int j, int k) const {
    return table[(static_cast<size_t>(i) * n + j) * n + k];
  }
  RatVector& at(int i, int j, int k) {
    return table[(static_cast<size_t>(i) * n + j) * n + k];
  }
  RatVector eval(const RatVector& x, const RatVector& y,
                 const RatVector& z) const {
    RatVector out = zero_vector(target);
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        for (int k = 0; k < n; ++k) {
          if (z[k] == 0) continue;
          const RatVector& v = at(i, j, k);
          Rat f = x[i] * y[j] * z[k];
          for (int t = 0; t < target; ++t)
            if (v[t] != 0) out[t] += f * v[t];
        }
      }
    }
    return out;
  }
  bool is_zero() const {
    for (const auto& v : table)
      if (!vec_is_zero(v)) return false;
    return true;
  }
};

// A 2-term differential graded Lie algebra: g in degree -1, h in degree 0,
// differential partial: g -> h, brackets [h,h] -> h and [h,g] -> g (the
// mixed bracket phi), with [g,g] = 0 forced by degree. A nonzero l3 makes it
// a possibly non-strict 2-term L-infinity algebra; crossed modules embed
// with l3 = 0 and their g-bracket recovered as phi_{partial u} v.
struct DGLA2 {
  int dim_g = 0;
  LieAlg h;
  RatMatrix partial;           // h.dim x dim_g
  std::vector<RatMatrix> phi;  // per h-basis: dim_g x dim_g
  Trilinear l3;                // h^3 -> g

  bool strict() const { return l3.is_zero(); }

  RatMatrix phi_of(const RatVector& x) const {
    RatMatrix m = RatMatrix::zero(dim_g, dim_g);
    for (int j = 0; j < h.dim; ++j)
      if (x[j] != 0) m = m + x[j] * phi[j];
    return m;
  }

  // Derived degree -1 bracket of the strict case.
  RatVector g_bracket(const RatVector& u, const RatVector& v) const {
    return mat_vec(phi_of(mat_vec(partial, u)), v);
  }

  TwoTermComplex complex() const { return {dim_g, h.dim, partial}; }
};

inline DGLA2 dgla_of_xmod(const XMod& x) {
  DGLA2 l;
  l.dim_g = x.g.dim;
  l.h = x.h;
  l.partial = x.partial;
  l.phi = x.phi;
  l.l3 = Trilinear::zero(x.h.dim, x.g.dim);
  return l;
}

// A 2-term L-infinity morphism: chain map (f_g, f_h) plus the antisymmetric
// correction f2 on h x h valued in the target's degree -1 part.
struct Linf2 {
  RatMatrix f_g;
  RatMatrix f_h;
  Bilinear f2;
};

inline Linf2 linf_identity(const DGLA2& l) {
  return {RatMatrix::identity(l.dim_g), RatMatrix::identity(l.h.dim),
          Bilinear::zero(l.h.dim, l.dim_g)};
}

inline Linf2 linf_of_xmod_morphism(const XModMorphism& f, const XMod& src,
                                   const XMod& tgt) {
  return {f.f1, f.f2, Bilinear::zero(src.h.dim, tgt.g.dim)};
}

// The three defect identities plus the chain condition, with the cubic
// coherence pinned so that strict morphisms (f2 = 0) between strict DGLAs
// are exactly the crossed-module morphisms:
//   (a) partial' f_g = f_h partial
//   (b) f_h[X,Y] - [f_h X, f_h Y]' = partial' f2(X,Y)
//   (c) f_g(phi_X u) - phi'_{f_h X}(f_g u) = f2(X, partial u)
//   (d) sum_cyc [ f2([X,Y],Z) - phi'_{f_h X} f2(Y,Z) ]
//       = f_g l3(X,Y,Z) - l3'(f_h X, f_h Y, f_h Z)
inline Report validate_linf(const Linf2& f, const DGLA2& a, const DGLA2& b) {
  Report r;
  if (f.f_g.rows() != b.dim_g || f.f_g.cols() != a.dim_g ||
      f.f_h.rows() != b.h.dim || f.f_h.cols() != a.h.dim ||
      f.f2.n != a.h.dim || f.f2.target != b.dim_g) {
    r.fail("morphism has wrong shapes");
    return r;
  }
  if (b.partial * f.f_g != f.f_h * a.partial) r.fail("not a chain map");
  for (int i = 0; i < a.h.dim; ++i)
    for (int j = i + 1; j < a.h.dim; ++j) {
      RatVector lhs = mat_vec(f.f_h, a.h.bracket_basis(i, j));
      lhs = vec_sub(lhs, b.h.bracket(column_of(f.f_h, i), column_of(f.f_h, j)));
      if (lhs != mat_vec(b.partial, f.f2.at(i, j)))
        r.fail("bracket defect fails at h-basis (" + std::to_string(i) + "," +
               std::to_string(j) + ")");
    }
  for (int i = 0; i < a.h.dim; ++i)
    for (int j = 0; j < a.dim_g; ++j) {
      RatVector lhs = mat_vec(f.f_g, mat_vec(a.phi[i], unit_vector(a.dim_g, j)));
      lhs = vec_sub(lhs, mat_vec(b.phi_of(column_of(f.f_h, i)),
                                 column_of(f.f_g, j)));
      RatVector rhs = f.f2.eval(unit_vector(a.h.dim, i),
                                mat_vec(a.partial, unit_vector(a.dim_g, j)));
      if (lhs != rhs)
        r.fail("mixed defect fails at (h-basis " + std::to_string(i) +
               ", g-basis " + std::to_string(j) + ")");
    }
  for (int i = 0; i < a.h.dim; ++i)
    for (int j = 0; j < a.h.dim; ++j)
      for (int k = 0; k < a.h.dim; ++k) {
        auto x = unit_vector(a.h.dim, i), y = unit_vector(a.h.dim, j),
             z = unit_vector(a.h.dim, k);
        auto term = [&](const RatVector& u, const RatVector& v,
                        const RatVector& w) {
          RatVector t = f.f2.eval(a.h.bracket(u, v), w);
          return vec_sub(
              t, mat_vec(b.phi_of(mat_vec(f.f_h, u)), f.f2.eval(v, w)));
        };
        RatVector lhs = term(x, y, z);
        lhs = vec_add(lhs, term(y, z, x));
        lhs = vec_add(lhs, term(z, x, y));
        RatVector rhs = mat_vec(f.f_g, a.l3.eval(x, y, z));
        rhs = vec_sub(rhs, b.l3.eval(mat_vec(f.f_h, x), mat_vec(f.f_h, y),
                                     mat_vec(f.f_h, z)));
        if (lhs != rhs)
          r.fail("cubic coherence fails at h-basis (" + std::to_string(i) +
                 "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
  return r;
}

// (g . f)_2 = g_g . f2 + g2 . (f_h ^ f_h).
inline Linf2 linf_compose(const Linf2& g, const Linf2& f) {
  Linf2 out;
  out.f_g = g.f_g * f.f_g;
  out.f_h = g.f_h * f.f_h;
  out.f2 = Bilinear::zero(f.f_h.cols(), g.f_g.rows());
  for (int i = 0; i < out.f2.n; ++i)
    for (int j = i + 1; j < out.f2.n; ++j) {
      RatVector v = mat_vec(g.f_g, f.f2.at(i, j));
      v = vec_add(v, g.f2.eval(column_of(f.f_h, i), column_of(f.f_h, j)));
      out.f2.set(i, j, v);
    }
  return out;
}

inline HMaps linf_h(const Linf2& f, const DGLA2& a, const DGLA2& b) {
  return induced_h({f.f_g, f.f_h}, cohomology_of(a.complex()),
                   cohomology_of(b.complex()));
}

// Inverse of a morphism with invertible linear parts:
// N = (f_g^{-1}, f_h^{-1}, -f_g^{-1} f2 (f_h^{-1} ^ f_h^{-1})).
inline Linf2 linf_formal_inverse(const Linf2& f) {
  Linf2 out;
  out.f_g = inverse(f.f_g);
  out.f_h = inverse(f.f_h);
  out.f2 = Bilinear::zero(f.f_h.rows(), f.f_g.cols());
  for (int i = 0; i < out.f2.n; ++i)
    for (int j = i + 1; j < out.f2.n; ++j)
      out.f2.set(i, j,
                 vec_neg(mat_vec(out.f_g,
                                 f.f2.eval(column_of(out.f_h, i),
                                           column_of(out.f_h, j)))));
  return out;
}

// ---- homotopy transfer to the minimal model --------------------------------

// Contraction data of a strict 2-term DGLA onto its cohomology, with pivot
// rule splittings: g = ker(partial) (+) A and h = im(partial) (+) B, the
// homotopy kappa inverting partial from A onto its image. The transferred
// structure has the induced brackets and one cubic term
//   l3(x,y,z) = p ( sum_cyc phi_{ix} kappa[iy, iz] ),
// and I = (i, -kappa[i., i.]), P = (p, p(phi_X kappa Y - phi_{ipY} kappa X))
// are L-infinity quasi-isomorphisms with P . I = id.
struct Contraction {
  DGLA2 minimal;
  Linf2 from_min;  // I: minimal -> L
  Linf2 to_min;    // P: L -> minimal
  RatMatrix kappa;
};

inline Contraction transfer(const DGLA2& l) {
  if (!l.strict())
    throw std::invalid_argument("transfer expects a strict DGLA");
  Contraction out;
  Subspace ker = kernel_basis(l.partial);
  QuotientData gq = quotient_data(full_space(l.dim_g), ker);
  RatMatrix a_basis = gq.representatives;  // complement of ker in g
  Subspace im = image_basis(l.partial);
  QuotientData hq = quotient_data(full_space(l.h.dim), im);
  RatMatrix b_basis = hq.representatives;  // complement of im in h
  const int k0 = ker.dim(), k1 = b_basis.cols();

  // kappa: h -> g, zero on B, (partial|_A)^{-1} on im(partial)
  RatMatrix im_frame = hstack(l.partial * a_basis, b_basis);  // square
  RatMatrix coords = inverse(im_frame);
  RatMatrix kappa = a_basis * submatrix(coords, 0, 0, a_basis.cols(), l.h.dim);
  // p_g: g -> ker coordinates, projection along A
  RatMatrix g_frame = hstack(ker.basis, a_basis);
  RatMatrix p_g = submatrix(inverse(g_frame), 0, 0, k0, l.dim_g);
  // p_h: h -> B coordinates, projection along im(partial)
  RatMatrix h_frame = hstack(im.basis, b_basis);
  RatMatrix p_h = submatrix(inverse(h_frame), im.dim(), 0, k1, l.h.dim);
  RatMatrix i_g = ker.basis, i_h = b_basis;

  // side conditions and the homotopy relations
  if (!(p_g * kappa).is_zero() || !(kappa * i_h).is_zero())
    throw std::logic_error("transfer: side conditions fail");
  if (i_g * p_g - RatMatrix::identity(l.dim_g) != -(kappa * l.partial) ||
      i_h * p_h - RatMatrix::identity(l.h.dim) != -(l.partial * kappa))
    throw std::logic_error("transfer: homotopy relations fail");

  DGLA2& m = out.minimal;
  m.dim_g = k0;
  m.h = LieAlg::abelian(k1);
  m.partial = RatMatrix::zero(k1, k0);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k1; ++j)
      m.h.bracket_basis(i, j) =
          mat_vec(p_h, l.h.bracket(column_of(i_h, i), column_of(i_h, j)));
  for (int j = 0; j < k1; ++j)
    m.phi.push_back(p_g * l.phi_of(column_of(i_h, j)) * i_g);
  m.l3 = Trilinear::zero(k1, k0);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k1; ++j)
      for (int k = 0; k < k1; ++k) {
        RatVector x = column_of(i_h, i), y = column_of(i_h, j),
                  z = column_of(i_h, k);
        RatVector s =
            mat_vec(l.phi_of(x), mat_vec(kappa, l.h.bracket(y, z)));
        s = vec_add(s,
                    mat_vec(l.phi_of(y), mat_vec(kappa, l.h.bracket(z, x))));
        s = vec_add(s,
                    mat_vec(l.phi_of(z), mat_vec(kappa, l.h.bracket(x, y))));
        m.l3.at(i, j, k) = mat_vec(p_g, s);
      }
  Report hm = validate_lie(m.h);
  if (!hm.ok())
    throw std::logic_error("transfer: induced bracket is not Lie:\n" +
                           hm.summary());

  out.from_min.f_g = i_g;
  out.from_min.f_h = i_h;
  out.from_min.f2 = Bilinear::zero(k1, l.dim_g);
  for (int i = 0; i < k1; ++i)
    for (int j = i + 1; j < k1; ++j)
      out.from_min.f2.set(
          i, j,
          vec_neg(mat_vec(kappa, l.h.bracket(column_of(i_h, i),
                                             column_of(i_h, j)))));

  out.to_min.f_g = p_g;
  out.to_min.f_h = p_h;
  out.to_min.f2 = Bilinear::zero(l.h.dim, k0);
  RatMatrix ip = i_h * p_h;
  for (int i = 0; i < l.h.dim; ++i)
    for (int j = i + 1; j < l.h.dim; ++j) {
      RatVector x = unit_vector(l.h.dim, i), y = unit_vector(l.h.dim, j);
      RatVector v = mat_vec(l.phi_of(x), mat_vec(kappa, y));
      v = vec_sub(v, mat_vec(l.phi_of(mat_vec(ip, y)), mat_vec(kappa, x)));
      out.to_min.f2.set(i, j, mat_vec(p_g, v));
    }
  out.kappa = kappa;

  Report ri = validate_linf(out.from_min, m, l);
  if (!ri.ok())
    throw std::logic_error("transfer: inclusion fails the identities:\n" +
                           ri.summary());
  Report rp = validate_linf(out.to_min, l, m);
  if (!rp.ok())
    throw std::logic_error("transfer: projection fails the identities:\n" +
                           rp.summary());
  Linf2 pi = linf_compose(out.to_min, out.from_min);
  if (pi.f_g != RatMatrix::identity(k0) || pi.f_h != RatMatrix::identity(k1) ||
      !pi.f2.is_zero())
    throw std::logic_error("transfer: P . I is not the strict identity");
  return out;
}

// Quasi-inverse of an L-infinity quasi-isomorphism between strict 2-term
// DGLAs: invert the linear part directly when possible, otherwise transfer
// both sides to their minimal models, invert there (a morphism with
// invertible linear parts is invertible), and conjugate back. The output is
// re-verified against all identities and induces the inverse maps on
// cohomology.
inline Linf2 linf_quasi_inverse(const Linf2& f, const DGLA2& a,
                                const DGLA2& b) {
  Report fr = validate_linf(f, a, b);
  if (!fr.ok())
    throw std::invalid_argument("quasi-inverse of an invalid morphism:\n" +
                                fr.summary());
  auto ca = cohomology_of(a.complex()), cb = cohomology_of(b.complex());
  if (!is_quasi_iso({f.f_g, f.f_h}, ca, cb))
    throw std::invalid_argument(
        "linf_quasi_inverse: morphism is not a quasi-isomorphism");
  Linf2 g;
  if (is_invertible(f.f_g) && is_invertible(f.f_h)) {
    g = linf_formal_inverse(f);
  } else {
    Contraction ta = transfer(a), tb = transfer(b);
    Linf2 fhat = linf_compose(tb.to_min, linf_compose(f, ta.from_min));
    Report fh = validate_linf(fhat, ta.minimal, tb.minimal);
    if (!fh.ok())
      throw std::logic_error("minimal-model image fails the identities:\n" +
                             fh.summary());
    if (!is_invertible(fhat.f_g) || !is_invertible(fhat.f_h))
      throw std::logic_error(
          "quasi-isomorphism has non-invertible minimal-model part");
    Linf2 ghat = linf_formal_inverse(fhat);
    Report gh = validate_linf(ghat, tb.minimal, ta.minimal);
    if (!gh.ok())
      throw std::logic_error("minimal-model inverse fails the identities:\n" +
                             gh.summary());
    g = linf_compose(ta.from_min, linf_compose(ghat, tb.to_min));
  }
  Report gr = validate_linf(g, b, a);
  if (!gr.ok())
    throw std::logic_error("constructed quasi-inverse is invalid:\n" +
                           gr.summary());
  HMaps gf = induced_h({(g.f_g * f.f_g), (g.f_h * f.f_h)}, ca, ca);
  HMaps fg = induced_h({(f.f_g * g.f_g), (f.f_h * g.f_h)}, cb, cb);
  if (gf.h0 != RatMatrix::identity(gf.h0.rows()) ||
      gf.h1 != RatMatrix::identity(gf.h1.rows()) ||
      fg.h0 != RatMatrix::identity(fg.h0.rows()) ||
      fg.h1 != RatMatrix::identity(fg.h1.rows()))
    throw std::logic_error("quasi-inverse composites are not the identity on "
                           "cohomology");
  return g;
}

// ---- zig-zags ---------------------------------------------------------------

struct DerivedZigZag {
  std::vector<XMod> xmods;         // n+1 crossed modules
  std::vector<XModMorphism> maps;  // n maps; maps[i] joins xmods[i], xmods[i+1]
  std::vector<bool> forward;       // maps[i] direction
};

// Replaces backward entries by L-infinity quasi-inverses and composes left to
// right; the result is an L-infinity quasi-isomorphism from the first crossed
// module to the last.
inline Linf2 flatten_zigzag(const DerivedZigZag& z) {
  if (z.xmods.size() != z.maps.size() + 1 || z.maps.size() != z.forward.size())
    throw std::invalid_argument("flatten_zigzag: inconsistent lengths");
  std::vector<DGLA2> dg;
  for (const auto& x : z.xmods) dg.push_back(dgla_of_xmod(x));
  Linf2 total = linf_identity(dg.front());
  for (size_t i = 0; i < z.maps.size(); ++i) {
    Linf2 step;
    if (z.forward[i]) {
      step = linf_of_xmod_morphism(z.maps[i], z.xmods[i], z.xmods[i + 1]);
      Report r = validate_linf(step, dg[i], dg[i + 1]);
      if (!r.ok())
        throw std::invalid_argument("zigzag entry " + std::to_string(i) +
                                    " is not a morphism:\n" + r.summary());
    } else {
      Linf2 back =
          linf_of_xmod_morphism(z.maps[i], z.xmods[i + 1], z.xmods[i]);
      step = linf_quasi_inverse(back, dg[i + 1], dg[i]);
    }
    total = linf_compose(step, total);
  }
  Report r = validate_linf(total, dg.front(), dg.back());
  if (!r.ok())
    throw std::logic_error("flattened zigzag fails the identities:\n" +
                           r.summary());
  if (!is_quasi_iso({total.f_g, total.f_h},
                    cohomology_of(dg.front().complex()),
                    cohomology_of(dg.back().complex())))
    throw std::logic_error("flattened zigzag is not a quasi-isomorphism");
  return total;
}

}  // namespace multsec
