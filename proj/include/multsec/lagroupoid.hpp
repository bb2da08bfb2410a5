#pragma once

#include <stdexcept>
#include <vector>

#include "multsec/morita.hpp"
#include "multsec/xmod.hpp"

namespace multsec {

// An LA-groupoid over a finite base: the anchor directions vanish, so the
// side and the fibres are plain Lie algebra bundles and brackets of sections
// are pointwise. The fibre over an arrow g is C_{tgt g} (+) E_{src g} in
// split coordinates.
struct LAGroupoid {
  RepUTH rep;
  std::vector<LieAlg> side;   // per object, on E_x
  std::vector<LieAlg> fibre;  // per arrow, on C_{tgt g} (+) E_{src g}
};

namespace detail {

// Structure-map matrices on split fibres.
inline RatMatrix source_matrix(const RepUTH& r, int a) {
  int dc = r.c.dim[r.g.tgt(a)], de = r.e.dim[r.g.src(a)];
  return hstack(RatMatrix::zero(de, dc), RatMatrix::identity(de));
}

inline RatMatrix target_matrix(const RepUTH& r, int a) {
  return hstack(r.partial[r.g.tgt(a)], r.delta_e[a]);
}

inline RatMatrix unit_matrix(const RepUTH& r, int x) {
  return vstack(RatMatrix::zero(r.c.dim[x], r.e.dim[x]),
                RatMatrix::identity(r.e.dim[x]));
}

inline RatMatrix inversion_matrix(const RepUTH& r, int a) {
  int gi = r.g.inv(a);
  RatMatrix top = hstack(-r.delta_c[gi], r.omega_at(gi, a));
  RatMatrix bottom = target_matrix(r, a);
  return vstack(top, bottom);
}

// (v1, v2) -> v1 v2 on the fibred pair space, in
// (C_{tgt a} + E_{src a}) (+) (C_{tgt b} + E_{src b}) coordinates.
inline RatMatrix mult_matrix(const RepUTH& r, int a, int b) {
  int dc1 = r.c.dim[r.g.tgt(a)], de1 = r.e.dim[r.g.src(a)];
  int dc2 = r.c.dim[r.g.tgt(b)], de2 = r.e.dim[r.g.src(b)];
  RatMatrix m(dc1 + de2, dc1 + de1 + dc2 + de2);
  for (int i = 0; i < dc1; ++i) m(i, i) = 1;
  const RatMatrix& dcm = r.delta_c[a];
  for (int i = 0; i < dcm.rows(); ++i)
    for (int j = 0; j < dcm.cols(); ++j) m(i, dc1 + de1 + j) += dcm(i, j);
  const RatMatrix om = r.omega_at(a, b);
  for (int i = 0; i < om.rows(); ++i)
    for (int j = 0; j < om.cols(); ++j) m(i, dc1 + de1 + dc2 + j) -= om(i, j);
  for (int i = 0; i < de2; ++i) m(dc1 + i, dc1 + de1 + dc2 + i) = 1;
  return m;
}

}  // namespace detail

// Every structure map must be a fibrewise Lie algebra morphism.
inline Report validate_la(const LAGroupoid& l) {
  Report r = validate_rep(l.rep);
  if (!r.ok()) return r;
  const auto& g = l.rep.g;
  if (static_cast<int>(l.side.size()) != g.n_objects() ||
      static_cast<int>(l.fibre.size()) != g.n_arrows()) {
    r.fail("bracket tables have wrong size");
    return r;
  }
  for (int x = 0; x < g.n_objects(); ++x) {
    if (l.side[x].dim != l.rep.e.dim[x]) {
      r.fail("side bracket dimension mismatch at " + g.objects[x]);
      return r;
    }
    Report lr = validate_lie(l.side[x]);
    if (!lr.ok()) r.fail("side bracket at " + g.objects[x] + " invalid");
  }
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (l.fibre[a].dim != l.rep.c.dim[g.tgt(a)] + l.rep.e.dim[g.src(a)]) {
      r.fail("fibre bracket dimension mismatch at " + g.arrows[a].id);
      return r;
    }
    Report lr = validate_lie(l.fibre[a]);
    if (!lr.ok()) r.fail("fibre bracket at " + g.arrows[a].id + " invalid");
  }
  if (!r.ok()) return r;
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (!is_lie_morphism(detail::source_matrix(l.rep, a), l.fibre[a],
                         l.side[g.src(a)]))
      r.fail("source map is not a Lie morphism at " + g.arrows[a].id);
    if (!is_lie_morphism(detail::target_matrix(l.rep, a), l.fibre[a],
                         l.side[g.tgt(a)]))
      r.fail("target map is not a Lie morphism at " + g.arrows[a].id);
    if (!is_lie_morphism(detail::inversion_matrix(l.rep, a), l.fibre[a],
                         l.fibre[g.inv(a)]))
      r.fail("inversion is not a Lie morphism at " + g.arrows[a].id);
  }
  for (int x = 0; x < g.n_objects(); ++x)
    if (!is_lie_morphism(detail::unit_matrix(l.rep, x), l.side[x],
                         l.fibre[g.unit(x)]))
      r.fail("unit map is not a Lie morphism at " + g.objects[x]);
  // multiplication on the fibred subalgebra of composable pairs
  for (auto [a, b] : g.composable_pairs()) {
    LieAlg pair_alg = direct_sum_lie(l.fibre[a], l.fibre[b]);
    int dc1 = l.rep.c.dim[g.tgt(a)], de1 = l.rep.e.dim[g.src(a)];
    RatMatrix cond(de1, pair_alg.dim);
    RatMatrix sm = detail::source_matrix(l.rep, a);
    RatMatrix tm = detail::target_matrix(l.rep, b);
    for (int i = 0; i < de1; ++i) {
      for (int j = 0; j < sm.cols(); ++j) cond(i, j) = sm(i, j);
      for (int j = 0; j < tm.cols(); ++j) cond(i, dc1 + de1 + j) -= tm(i, j);
    }
    Subspace fibred = kernel_basis(cond);
    RatMatrix mm = detail::mult_matrix(l.rep, a, b);
    bool ok = true;
    for (int i = 0; i < fibred.dim() && ok; ++i)
      for (int j = i + 1; j < fibred.dim() && ok; ++j) {
        RatVector p = column_of(fibred.basis, i),
                  q = column_of(fibred.basis, j);
        RatVector br = pair_alg.bracket(p, q);
        if (mat_vec(mm, br) !=
            l.fibre[g.compose(a, b)].bracket(mat_vec(mm, p), mat_vec(mm, q)))
          ok = false;
      }
    if (!ok)
      r.fail("multiplication is not a Lie morphism at (" + g.arrows[a].id +
             ", " + g.arrows[b].id + ")");
  }
  return r;
}

// The pointwise core bracket [c1,c2]_C(x) = C-component of
// [(c1,0),(c2,0)] in the unit fibre, as a Lie algebra on Gamma(C)
// coordinates. The defining right-invariance property
// [c1,c2]^r = [c1^r, c2^r] is re-verified on every arrow; inputs failing it
// are rejected.
inline LieAlg core_bracket(const LAGroupoid& l, const CoreLayout& core) {
  const auto& g = l.rep.g;
  LieAlg out = LieAlg::abelian(core.total);
  for (int x = 0; x < g.n_objects(); ++x) {
    int dc = l.rep.c.dim[x], de = l.rep.e.dim[x];
    const LieAlg& f = l.fibre[g.unit(x)];
    for (int i = 0; i < dc; ++i)
      for (int j = 0; j < dc; ++j) {
        RatVector br = f.bracket(unit_vector(dc + de, i), unit_vector(dc + de, j));
        for (int k = dc; k < dc + de; ++k)
          if (br[k] != 0)
            throw std::invalid_argument(
                "core bracket does not land in the core at " + g.objects[x]);
        for (int k = 0; k < dc; ++k)
          out.bracket_basis(core.offset[x] + i, core.offset[x] + j)
              [core.offset[x] + k] = br[k];
      }
  }
  // defining property on every arrow
  for (int a = 0; a < g.n_arrows(); ++a) {
    int xt = g.tgt(a);
    int dc = l.rep.c.dim[xt], de = l.rep.e.dim[g.src(a)];
    const LieAlg& f = l.fibre[a];
    const LieAlg& fu = l.fibre[g.unit(xt)];
    int dcu = dc, deu = l.rep.e.dim[xt];
    for (int i = 0; i < dc; ++i)
      for (int j = 0; j < dc; ++j) {
        RatVector br = f.bracket(unit_vector(dc + de, i), unit_vector(dc + de, j));
        RatVector at_unit =
            fu.bracket(unit_vector(dcu + deu, i), unit_vector(dcu + deu, j));
        RatVector expect = zero_vector(dc + de);
        for (int k = 0; k < dc; ++k) expect[k] = at_unit[k];
        if (br != expect)
          throw std::invalid_argument(
              "right-invariant extension property fails at " + g.arrows[a].id);
      }
  }
  return out;
}

// D_V(c)(x) = C-component of [V(1_x), (c_x, 0)] in the unit fibre; the
// E-component must vanish.
inline RatMatrix derivation_matrix(const LAGroupoid& l, const CoreLayout& core,
                                   const MultSection& v) {
  const auto& g = l.rep.g;
  RatMatrix d(core.total, core.total);
  for (int x = 0; x < g.n_objects(); ++x) {
    int dc = l.rep.c.dim[x], de = l.rep.e.dim[x];
    const LieAlg& f = l.fibre[g.unit(x)];
    RatVector vx = vec_concat(zero_vector(dc), v.e[x]);
    for (int j = 0; j < dc; ++j) {
      RatVector br = f.bracket(vx, unit_vector(dc + de, j));
      for (int k = dc; k < dc + de; ++k)
        if (br[k] != 0)
          throw std::invalid_argument(
              "derivation does not land in the core at " + g.objects[x]);
      for (int k = 0; k < dc; ++k) d(core.offset[x] + k, core.offset[x] + j) = br[k];
    }
  }
  return d;
}

// The crossed module Gamma(C) -> Gamma_mult(V) -> Der(Gamma(C)) in the
// coordinates of the section complex. Every axiom is verified exactly; any
// failure aborts with its witness.
inline XMod crossed_module(const LAGroupoid& l, const SectionComplex& k) {
  const auto& g = l.rep.g;
  XMod x;
  x.g = core_bracket(l, k.core);
  x.h = LieAlg::abelian(k.deg1_dim());
  std::vector<MultSection> basis;
  for (int j = 0; j < k.deg1_dim(); ++j)
    basis.push_back(decode_section(l.rep, k.deg1.layout,
                                   column_of(k.deg1.space.basis, j)));
  for (int i = 0; i < k.deg1_dim(); ++i)
    for (int j = 0; j < k.deg1_dim(); ++j) {
      MultSection br;
      for (int a = 0; a < g.n_arrows(); ++a) {
        int dc = l.rep.c.dim[g.tgt(a)], de = l.rep.e.dim[g.src(a)];
        RatVector va = vec_concat(basis[i].kappa[a], basis[i].e[g.src(a)]);
        RatVector wa = vec_concat(basis[j].kappa[a], basis[j].e[g.src(a)]);
        RatVector b = l.fibre[a].bracket(va, wa);
        br.kappa.push_back(RatVector(b.begin(), b.begin() + dc));
        (void)de;
      }
      for (int xo = 0; xo < g.n_objects(); ++xo)
        br.e.push_back(l.side[xo].bracket(basis[i].e[xo], basis[j].e[xo]));
      Report chk = check_mult_section(l.rep, br);
      if (!chk.ok())
        throw std::invalid_argument(
            "bracket of multiplicative sections is not multiplicative:\n" +
            chk.summary());
      auto coords =
          coords_in(k.deg1.space, encode_section(br, k.deg1.layout));
      if (!coords)
        throw std::invalid_argument(
            "bracket of multiplicative sections escapes the solved space");
      x.h.bracket_basis(i, j) = *coords;
    }
  x.partial = k.delta;
  for (int j = 0; j < k.deg1_dim(); ++j)
    x.phi.push_back(derivation_matrix(l, k.core, basis[j]));
  Report chk = validate_xmod(x);
  if (!chk.ok())
    throw std::invalid_argument("crossed module axioms fail:\n" + chk.summary());
  return x;
}

// ---- LA-Morita -------------------------------------------------------------

// The VB fibrewise criterion plus bracket-morphism verification of the total
// map on every fibre and side.
inline bool is_la_morita(const VBMorphism& m, const LAGroupoid& a,
                         const LAGroupoid& b, Report* why = nullptr) {
  Report r;
  if (!is_vb_morita(m, a.rep, b.rep, &r)) {
    if (why) *why = r;
    return false;
  }
  const auto& g = a.rep.g;
  for (int x = 0; x < g.n_objects(); ++x)
    if (!is_lie_morphism(m.on_e[x], a.side[x], b.side[m.base.on_objects[x]]))
      r.fail("side map is not a Lie morphism at " + g.objects[x]);
  for (int arr = 0; arr < g.n_arrows(); ++arr) {
    RatMatrix total = block_diag(m.on_c[g.tgt(arr)], m.on_e[g.src(arr)]);
    if (!is_lie_morphism(total, a.fibre[arr], b.fibre[m.base.on_arrows[arr]]))
      r.fail("fibre map is not a Lie morphism at " + g.arrows[arr].id);
  }
  if (why) *why = r;
  return r.ok();
}

// ---- zig-zag of crossed-module quasi-isomorphisms --------------------------

struct LAZigZag {
  std::vector<XMod> xmods;          // V, W^Phi, W, W^Psi, V'
  std::vector<XModMorphism> maps;   // Phi_*, incl, incl, Psi_*
  std::vector<bool> forward;        // false, true, false, true
  RatMatrix h0_iso, h1_iso;         // H(V) -> H(V'), Lie algebra isos
  HLieAlgebras hv, hv2;
};

namespace detail {

// Crossed module structure on the projectable subcomplex (Prop-level: the
// subspaces are closed under brackets and under the action).
inline XMod sub_crossed_module(const XMod& xw, const ProjectableComplex& pc) {
  XMod sub;
  sub.g = subalgebra(xw.g, pc.deg0);
  sub.h = subalgebra(xw.h, pc.deg1);
  sub.partial = pc.restricted.delta;
  for (int j = 0; j < pc.deg1.dim(); ++j) {
    RatMatrix act = xw.phi_of(column_of(pc.deg1.basis, j));
    RatMatrix restricted(pc.deg0.dim(), pc.deg0.dim());
    for (int i = 0; i < pc.deg0.dim(); ++i) {
      RatVector img = mat_vec(act, column_of(pc.deg0.basis, i));
      auto coords = coords_in(pc.deg0, img);
      if (!coords)
        throw std::logic_error(
            "projectable core sections are not closed under the action");
      for (int kk = 0; kk < pc.deg0.dim(); ++kk) restricted(kk, i) = (*coords)[kk];
    }
    sub.phi.push_back(std::move(restricted));
  }
  Report chk = validate_xmod(sub);
  if (!chk.ok())
    throw std::logic_error("projectable subcomplex is not a crossed module:\n" +
                           chk.summary());
  return sub;
}

inline void require_xmod_quasi_iso(const XModMorphism& f, const XMod& a,
                                   const XMod& b, const std::string& name) {
  Report chk = validate_xmod_morphism(f, a, b);
  if (!chk.ok())
    throw std::logic_error(name + " is not a crossed-module morphism:\n" +
                           chk.summary());
  if (!is_xmod_quasi_iso(f, a, b))
    throw std::logic_error(name + " is not a quasi-isomorphism");
}

}  // namespace detail

// Phi: W -> V and Psi: W -> V', both LA-Morita and surjective; produces the
// five-term zig-zag of crossed-module quasi-isomorphisms and the composed
// Lie algebra isomorphisms on cohomology.
inline LAZigZag la_morita_zigzag(const VBMorphism& phi, const LAGroupoid& w,
                                 const LAGroupoid& v, const VBMorphism& psi,
                                 const LAGroupoid& v2) {
  Report why;
  if (!is_la_morita(phi, w, v, &why))
    throw std::invalid_argument("first leg is not LA-Morita:\n" + why.summary());
  if (!is_la_morita(psi, w, v2, &why))
    throw std::invalid_argument("second leg is not LA-Morita:\n" + why.summary());
  SectionComplex kw = build_complex(w.rep);
  SectionComplex kv = build_complex(v.rep);
  SectionComplex kv2 = build_complex(v2.rep);
  XMod xw = crossed_module(w, kw);
  XMod xv = crossed_module(v, kv);
  XMod xv2 = crossed_module(v2, kv2);
  auto pc_phi = projectable_complex(phi, w.rep, v.rep, kw);
  auto pc_psi = projectable_complex(psi, w.rep, v2.rep, kw);
  XMod sub_phi = detail::sub_crossed_module(xw, pc_phi);
  XMod sub_psi = detail::sub_crossed_module(xw, pc_psi);
  ChainMap2 proj_phi = project_sections(phi, w.rep, v.rep, kw, pc_phi, kv);
  ChainMap2 proj_psi = project_sections(psi, w.rep, v2.rep, kw, pc_psi, kv2);
  XModMorphism m_proj_phi{proj_phi.f0, proj_phi.f1};
  XModMorphism m_incl_phi{pc_phi.deg0.basis, pc_phi.deg1.basis};
  XModMorphism m_incl_psi{pc_psi.deg0.basis, pc_psi.deg1.basis};
  XModMorphism m_proj_psi{proj_psi.f0, proj_psi.f1};
  detail::require_xmod_quasi_iso(m_proj_phi, sub_phi, xv, "Phi_*");
  detail::require_xmod_quasi_iso(m_incl_phi, sub_phi, xw, "inclusion (Phi)");
  detail::require_xmod_quasi_iso(m_incl_psi, sub_psi, xw, "inclusion (Psi)");
  detail::require_xmod_quasi_iso(m_proj_psi, sub_psi, xv2, "Psi_*");

  LAZigZag out;
  out.xmods = {xv, sub_phi, xw, sub_psi, xv2};
  out.maps = {m_proj_phi, m_incl_phi, m_incl_psi, m_proj_psi};
  out.forward = {false, true, false, true};
  HMaps h = zigzag_h_iso(
      {xv.complex(), sub_phi.complex(), xw.complex(), sub_psi.complex(),
       xv2.complex()},
      {{{m_proj_phi.f1, m_proj_phi.f2}, false, "Phi_*"},
       {{m_incl_phi.f1, m_incl_phi.f2}, true, "inclusion (Phi)"},
       {{m_incl_psi.f1, m_incl_psi.f2}, false, "inclusion (Psi)"},
       {{m_proj_psi.f1, m_proj_psi.f2}, true, "Psi_*"}});
  out.h0_iso = h.h0;
  out.h1_iso = h.h1;
  out.hv = h_lie_algebras(xv);
  out.hv2 = h_lie_algebras(xv2);
  if (!is_invertible(out.h0_iso) || !is_invertible(out.h1_iso))
    throw std::logic_error("zig-zag cohomology maps are not invertible");
  if (!is_lie_morphism(out.h1_iso, out.hv.h1, out.hv2.h1))
    throw std::logic_error("H1 isomorphism does not intertwine the brackets");
  return out;
}

// ---- constructors ----------------------------------------------------------

inline LAGroupoid la_abelian(const RepUTH& r) {
  LAGroupoid l;
  l.rep = r;
  for (int x = 0; x < r.g.n_objects(); ++x)
    l.side.push_back(LieAlg::abelian(r.e.dim[x]));
  for (int a = 0; a < r.g.n_arrows(); ++a)
    l.fibre.push_back(
        LieAlg::abelian(r.c.dim[r.g.tgt(a)] + r.e.dim[r.g.src(a)]));
  return l;
}

// A groupoid acting on a Lie algebra bundle by automorphisms: the honest
// representation with C = 0 and the pulled-back fibre brackets.
inline LAGroupoid la_from_action(const FinGroupoid& g,
                                 std::vector<LieAlg> side,
                                 std::vector<RatMatrix> delta_e) {
  LAGroupoid l;
  VecBundle e;
  for (const auto& s : side) e.dim.push_back(s.dim);
  l.rep = rep_of_representation(g, e, std::move(delta_e));
  l.side = std::move(side);
  for (int a = 0; a < g.n_arrows(); ++a) l.fibre.push_back(l.side[g.src(a)]);
  return l;
}

// Blockwise direct sum; the fibre coordinates of the summand fibres are
// interleaved as (C_a, C_b, E_a, E_b), so the bracket table is transported
// through the block permutation.
inline LAGroupoid la_direct_sum(const LAGroupoid& a, const LAGroupoid& b) {
  LAGroupoid l;
  l.rep = direct_sum(a.rep, b.rep);
  for (int x = 0; x < l.rep.g.n_objects(); ++x)
    l.side.push_back(direct_sum_lie(a.side[x], b.side[x]));
  const auto& g = l.rep.g;
  for (int ar = 0; ar < g.n_arrows(); ++ar) {
    int ca = a.rep.c.dim[g.tgt(ar)], cb = b.rep.c.dim[g.tgt(ar)];
    int ea = a.rep.e.dim[g.src(ar)], eb = b.rep.e.dim[g.src(ar)];
    LieAlg pair = direct_sum_lie(a.fibre[ar], b.fibre[ar]);
    // sum-fibre index -> (fibreA + fibreB) index
    auto to_pair = [&](int i) {
      if (i < ca) return i;                                // C_a
      if (i < ca + cb) return ca + ea + (i - ca);          // C_b
      if (i < ca + cb + ea) return ca + (i - ca - cb);     // E_a
      return ca + ea + cb + (i - ca - cb - ea);            // E_b
    };
    LieAlg f = LieAlg::abelian(ca + cb + ea + eb);
    for (int i = 0; i < f.dim; ++i)
      for (int j = 0; j < f.dim; ++j) {
        const RatVector& br = pair.bracket_basis(to_pair(i), to_pair(j));
        for (int k = 0; k < f.dim; ++k)
          f.bracket_basis(i, j)[k] = br[to_pair(k)];
      }
    l.fibre.push_back(std::move(f));
  }
  return l;
}

// A finite-dimensional Lie 2-algebra as an LA-groupoid over the point.
inline LAGroupoid la_of_xmod(const XMod& x) {
  LAGroupoid l;
  l.rep.g = trivial_groupoid();
  l.rep.c = constant_bundle(1, x.g.dim);
  l.rep.e = constant_bundle(1, x.h.dim);
  l.rep.partial = {x.partial};
  l.rep.delta_c = {RatMatrix::identity(x.g.dim)};
  l.rep.delta_e = {RatMatrix::identity(x.h.dim)};
  l.side = {x.h};
  l.fibre = {semidirect(x)};
  return l;
}

}  // namespace multsec
