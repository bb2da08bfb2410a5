#include <catch2/catch_amalgamated.hpp>

#include "multsec/lagroupoid.hpp"
#include "support.hpp"

using namespace multsec;
namespace ts = multsec::testsupport;

namespace {

// Chevalley involution of sl2 in the (e, f, h) basis.
RatMatrix chevalley() { return RatMatrix::parse("0 1 0; 1 0 0; 0 0 -1"); }

// Z/2 acting on an sl2 bundle over one object by the involution.
LAGroupoid z2_on_sl2() {
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  std::vector<RatMatrix> delta(2);
  delta[z2.arrow_index("g0")] = RatMatrix::identity(3);
  delta[z2.arrow_index("g1")] = chevalley();
  return la_from_action(z2, {sl2_lie()}, delta);
}

// Z/2 acting freely on {a, b} with sl2 fibres glued by the involution.
LAGroupoid z2_free_on_sl2_bundle() {
  auto g = action_groupoid(cyclic_names(2), cyclic_table(2), {"a", "b"},
                           {{0, 1}, {1, 0}});
  std::vector<RatMatrix> delta(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a)
    delta[a] = g.is_unit(a) ? RatMatrix::identity(3) : chevalley();
  return la_from_action(g, {sl2_lie(), sl2_lie()}, delta);
}

}  // namespace

TEST_CASE("lie algebra utilities") {
  CHECK(validate_lie(sl2_lie()).ok());
  CHECK(validate_lie(heisenberg_lie()).ok());
  CHECK(validate_lie(LieAlg::abelian(4)).ok());
  CHECK(is_lie_morphism(chevalley(), sl2_lie(), sl2_lie()));
  LieAlg bad = sl2_lie();
  bad.bracket_basis(0, 1)[0] += 1;  // breaks antisymmetry
  CHECK_FALSE(validate_lie(bad).ok());
}

TEST_CASE("LA-groupoid validation") {
  SECTION("abelian brackets over a random rep") {
    ts::Rng rng(301);
    LAGroupoid l = la_abelian(ts::random_rep(rng, 2));
    CHECK(validate_la(l).ok());
  }
  SECTION("group action on a Lie algebra bundle") {
    CHECK(validate_la(z2_on_sl2()).ok());
    CHECK(validate_la(z2_free_on_sl2_bundle()).ok());
  }
  SECTION("a Lie 2-algebra over the point") {
    ts::Rng rng(302);
    LAGroupoid l = la_of_xmod(ts::random_xmod(rng));
    CHECK(validate_la(l).ok());
  }
  SECTION("corrupting a structure constant is reported") {
    LAGroupoid l = z2_on_sl2();
    l.side[0].bracket_basis(0, 1)[2] += 1;
    auto r = validate_la(l);
    CHECK_FALSE(r.ok());
  }
  SECTION("a non-automorphic action fails the target check") {
    auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
    std::vector<RatMatrix> delta(2);
    delta[z2.arrow_index("g0")] = RatMatrix::identity(3);
    delta[z2.arrow_index("g1")] = RatMatrix::parse("0 1 0; 1 0 0; 0 0 1");
    // involution without the sign twist is not an sl2 automorphism, but it
    // is still a flat action, so the rep is fine and only the LA layer fails
    LAGroupoid l = la_from_action(z2, {sl2_lie()}, delta);
    REQUIRE(validate_rep(l.rep).ok());
    CHECK_FALSE(validate_la(l).ok());
  }
}

TEST_CASE("core bracket") {
  SECTION("abelian fibres give an abelian core") {
    ts::Rng rng(303);
    LAGroupoid l = la_abelian(ts::random_rep(rng, 2));
    SectionComplex k = build_complex(l.rep);
    LieAlg core = core_bracket(l, k.core);
    for (const auto& row : core.table) CHECK(vec_is_zero(row));
  }
  SECTION("Lie 2-algebra over a point recovers the g bracket") {
    XMod x = ts::inner_xmod(sl2_lie());
    LAGroupoid l = la_of_xmod(x);
    SectionComplex k = build_complex(l.rep);
    LieAlg core = core_bracket(l, k.core);
    CHECK(core.table == x.g.table);
  }
  SECTION("zero core is trivial") {
    LAGroupoid l = z2_on_sl2();
    SectionComplex k = build_complex(l.rep);
    CHECK(core_bracket(l, k.core).dim == 0);
  }
}

TEST_CASE("derivations of the core") {
  XMod x = ts::sl2_on_plane_xmod();
  LAGroupoid l = la_of_xmod(x);
  SectionComplex k = build_complex(l.rep);
  SECTION("zero section gives the zero derivation") {
    MultSection z = decode_section(l.rep, k.deg1.layout,
                                   zero_vector(k.deg1.layout.total));
    CHECK(derivation_matrix(l, k.core, z).is_zero());
  }
  SECTION("D after delta is the adjoint action") {
    XMod inner = ts::inner_xmod(sl2_lie());
    LAGroupoid li = la_of_xmod(inner);
    SectionComplex ki = build_complex(li.rep);
    for (int j = 0; j < ki.deg0_dim(); ++j) {
      CoreSection b = decode_core(li.rep, ki.core, unit_vector(ki.deg0_dim(), j));
      MultSection db = delta_of_core(li.rep, b);
      RatMatrix d = derivation_matrix(li, ki.core, db);
      CHECK(d == ad_matrix(inner.g, unit_vector(3, j)));
    }
  }
}

TEST_CASE("crossed module of sections") {
  SECTION("round trip through the point: xmod -> LA-groupoid -> xmod") {
    ts::Rng rng(307);
    for (int t = 0; t < 6; ++t) {
      XMod x = ts::random_xmod(rng);
      LAGroupoid l = la_of_xmod(x);
      SectionComplex k = build_complex(l.rep);
      XMod back = crossed_module(l, k);
      CHECK(back.g.table == x.g.table);
      CHECK(back.h.table == x.h.table);
      CHECK(back.partial == x.partial);
      for (int j = 0; j < x.h.dim; ++j) CHECK(back.phi[j] == x.phi[j]);
    }
  }
  SECTION("abelian everywhere gives the abelian crossed module") {
    ts::Rng rng(308);
    LAGroupoid l = la_abelian(ts::random_rep(rng, 2));
    SectionComplex k = build_complex(l.rep);
    XMod x = crossed_module(l, k);
    for (const auto& row : x.g.table) CHECK(vec_is_zero(row));
    for (const auto& row : x.h.table) CHECK(vec_is_zero(row));
    for (const auto& m : x.phi) CHECK(m.is_zero());
  }
  SECTION("invariant subalgebra for the Z/2 action on sl2") {
    LAGroupoid l = z2_on_sl2();
    SectionComplex k = build_complex(l.rep);
    XMod x = crossed_module(l, k);
    // Gamma_mult = invariants of the involution: span{e+f}, 1-dimensional
    CHECK(x.h.dim == 1);
    CHECK(vec_is_zero(x.h.bracket_basis(0, 0)));
    // brute-force invariant subalgebra of the involution
    RatMatrix fix = chevalley() - RatMatrix::identity(3);
    Subspace inv = kernel_basis(fix);
    REQUIRE(inv.dim() == 1);
    LieAlg sub = subalgebra(sl2_lie(), inv);
    CHECK(sub.table == x.h.table);
  }
}

TEST_CASE("proof identities for invariant sections") {
  // [c1,c2]^l = -[c1^l, c2^l] and [c1^r, c2^l] = 0 pointwise on arrows.
  ts::Rng rng(311);
  for (int t = 0; t < 5; ++t) {
    XMod x = ts::random_xmod(rng);
    LAGroupoid l = la_of_xmod(x);
    SectionComplex k = build_complex(l.rep);
    LieAlg core = core_bracket(l, k.core);
    const auto& g = l.rep.g;
    for (int i = 0; i < k.deg0_dim(); ++i)
      for (int j = 0; j < k.deg0_dim(); ++j) {
        CoreSection c1 = decode_core(l.rep, k.core, unit_vector(k.deg0_dim(), i));
        CoreSection c2 = decode_core(l.rep, k.core, unit_vector(k.deg0_dim(), j));
        CoreSection c12 = decode_core(
            l.rep, k.core, core.bracket(unit_vector(k.deg0_dim(), i),
                                        unit_vector(k.deg0_dim(), j)));
        FullSection l1 = left_invariant(c1, l.rep), l2 = left_invariant(c2, l.rep);
        FullSection r1 = right_invariant(c1, l.rep);
        FullSection l12 = left_invariant(c12, l.rep);
        for (int a = 0; a < g.n_arrows(); ++a) {
          auto as_fibre = [&](const VBArrow& v) {
            return vec_concat(v.c, v.e);
          };
          RatVector lhs = as_fibre(l12.at[a]);
          RatVector rhs =
              vec_neg(l.fibre[a].bracket(as_fibre(l1.at[a]), as_fibre(l2.at[a])));
          CHECK(lhs == rhs);
          CHECK(vec_is_zero(
              l.fibre[a].bracket(as_fibre(r1.at[a]), as_fibre(l2.at[a]))));
        }
      }
  }
}

TEST_CASE("derivation identities") {
  // Lemma-level: D_{[V,V']} = [D_V, D_{V'}] on all basis pairs.
  LAGroupoid l = z2_free_on_sl2_bundle();
  REQUIRE(validate_la(l).ok());
  SectionComplex k = build_complex(l.rep);
  XMod x = crossed_module(l, k);
  for (int i = 0; i < x.h.dim; ++i)
    for (int j = 0; j < x.h.dim; ++j) {
      RatMatrix lhs = x.phi_of(x.h.bracket_basis(i, j));
      RatMatrix rhs = x.phi[i] * x.phi[j] - x.phi[j] * x.phi[i];
      CHECK(lhs == rhs);
    }
}

TEST_CASE("lie2 semidirect bracket") {
  ts::Rng rng(313);
  XMod x = ts::sl2_on_plane_xmod();
  SECTION("zero action gives the direct-sum bracket") {
    XMod z = x;
    for (auto& m : z.phi) m = RatMatrix::zero(2, 2);
    z.partial = RatMatrix::zero(3, 2);
    LieAlg sd = semidirect(z);
    CHECK(sd.table == direct_sum_lie(z.g, z.h).table);
  }
  SECTION("mixed bracket is the action") {
    LieAlg sd = semidirect(x);
    // [(0,X),(v,0)] = (phi_X v, 0)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 2; ++i) {
        RatVector br = sd.bracket(unit_vector(5, 2 + j), unit_vector(5, i));
        RatVector expect =
            vec_concat(mat_vec(x.phi[j], unit_vector(2, i)), zero_vector(3));
        CHECK(br == expect);
      }
  }
  SECTION("round trip xmod -> lie2 -> xmod is the identity") {
    for (int t = 0; t < 6; ++t) {
      XMod a = ts::random_xmod(rng);
      Lie2 l = xmod_to_lie2(a);
      CHECK(validate_lie2(l).ok());
      XMod back = lie2_to_xmod(l);
      CHECK(back.g.table == a.g.table);
      CHECK(back.h.table == a.h.table);
      CHECK(back.partial == a.partial);
      for (int j = 0; j < a.h.dim; ++j) CHECK(back.phi[j] == a.phi[j]);
    }
  }
  SECTION("exact xmod gives a trivial lie2") {
    XMod inner = ts::inner_xmod(sl2_lie());
    auto coh = cohomology_of(inner.complex());
    CHECK(coh.dim_h0() == 0);
    CHECK(coh.dim_h1() == 0);
  }
}

TEST_CASE("xmod morphisms and quasi-isomorphisms") {
  ts::Rng rng(317);
  SECTION("identity is a quasi-isomorphism") {
    XMod x = ts::random_xmod(rng);
    CHECK(validate_xmod(x).ok());
    CHECK(validate_xmod_morphism(identity_xmod_morphism(x), x, x).ok());
    CHECK(is_xmod_quasi_iso(identity_xmod_morphism(x), x, x));
  }
  SECTION("random acyclic-summand projections are quasi-isomorphisms") {
    for (int t = 0; t < 10; ++t) {
      auto qi = ts::random_xmod_quasi_iso(rng);
      CHECK(validate_xmod(qi.a).ok());
      CHECK(validate_xmod(qi.b).ok());
      CHECK(validate_xmod_morphism(qi.f, qi.a, qi.b).ok());
      CHECK(is_xmod_quasi_iso(qi.f, qi.a, qi.b));
    }
  }
  SECTION("mismatched cohomology dimensions fail") {
    XMod a = ts::sl2_on_plane_xmod();
    XMod zero;
    zero.g = LieAlg::abelian(0);
    zero.h = LieAlg::abelian(0);
    zero.partial = RatMatrix::zero(0, 0);
    XModMorphism f{RatMatrix::zero(0, 2), RatMatrix::zero(0, 3)};
    CHECK(validate_xmod_morphism(f, a, zero).ok());
    CHECK_FALSE(is_xmod_quasi_iso(f, a, zero));
  }
}

TEST_CASE("Lie structures on cohomology") {
  SECTION("H0 bracket is identically zero and H1 is the invariant algebra") {
    LAGroupoid l = z2_free_on_sl2_bundle();
    SectionComplex k = build_complex(l.rep);
    XMod x = crossed_module(l, k);
    auto h = h_lie_algebras(x);
    CHECK(h.coh.dim_h0() == 0);
    CHECK(h.coh.dim_h1() == 3);
    // brute force: invariant sections are (e, S e); bracket is pointwise, so
    // H1 is isomorphic to sl2
    LieAlg h1 = h.h1;
    CHECK(validate_lie(h1).ok());
    // nonabelian of dimension 3 with [x,[y,z]] structure of sl2: verify via
    // an explicit isomorphism obtained from the representative e-components
    // at object a: rep_j -> e_j(a)
    RatMatrix to_sl2(3, 3);
    for (int j = 0; j < 3; ++j) {
      MultSection m = decode_section(
          l.rep, k.deg1.layout,
          mat_vec(k.deg1.space.basis, column_of(h.coh.h1.representatives, j)));
      for (int i = 0; i < 3; ++i) to_sl2(i, j) = m.e[0][i];
    }
    REQUIRE(is_invertible(to_sl2));
    CHECK(is_lie_morphism(to_sl2, h1, sl2_lie()));
  }
  SECTION("type-1 summands contribute nothing") {
    LAGroupoid l0 = z2_on_sl2();
    LAGroupoid l1 = la_abelian(type1_pullback(l0.rep.g, constant_bundle(1, 2)));
    LAGroupoid sum = la_direct_sum(l0, l1);
    REQUIRE(validate_la(sum).ok());
    SectionComplex k0 = build_complex(l0.rep), ks = build_complex(sum.rep);
    auto h0 = h_lie_algebras(crossed_module(l0, k0));
    auto hs = h_lie_algebras(crossed_module(sum, ks));
    CHECK(hs.coh.dim_h0() == h0.coh.dim_h0());
    CHECK(hs.coh.dim_h1() == h0.coh.dim_h1());
  }
  SECTION("representative independence of the H1 bracket") {
    ts::Rng rng(331);
    XMod x = ts::random_xmod(rng);
    auto h = h_lie_algebras(x);
    // recompute the bracket with representatives shifted by im(partial)
    Subspace im = image_basis(x.partial);
    for (int i = 0; i < h.coh.dim_h1(); ++i)
      for (int j = 0; j < h.coh.dim_h1(); ++j) {
        RatVector ri = column_of(h.coh.h1.representatives, i);
        RatVector rj = column_of(h.coh.h1.representatives, j);
        if (im.dim() > 0) {
          ri = vec_add(ri, column_of(im.basis, 0));
          rj = vec_add(rj, column_of(im.basis, im.dim() - 1));
        }
        RatVector br = mat_vec(h.coh.h1.project, x.h.bracket(ri, rj));
        CHECK(br == h.h1.bracket_basis(i, j));
      }
  }
}

TEST_CASE("LA-Morita zig-zag") {
  SECTION("identity legs give identity isomorphisms") {
    LAGroupoid l = z2_on_sl2();
    VBMorphism id = identity_vb_morphism(l.rep);
    auto z = la_morita_zigzag(id, l, l, id, l);
    CHECK(z.h0_iso == RatMatrix::identity(z.h0_iso.rows()));
    CHECK(z.h1_iso == RatMatrix::identity(z.h1_iso.rows()));
  }
  SECTION("restriction along a weak equivalence of action groupoids") {
    LAGroupoid w = z2_free_on_sl2_bundle();
    // V' over the point: sl2 with the trivial group
    LAGroupoid v2 = la_from_action(trivial_groupoid(), {sl2_lie()},
                                   {RatMatrix::identity(3)});
    const auto& g = w.rep.g;
    VBMorphism psi;
    psi.base.on_objects = {0, 0};
    psi.base.on_arrows.assign(g.n_arrows(), 0);
    psi.on_c.assign(2, RatMatrix::zero(0, 0));
    int a_idx = g.object_index("a");
    int b_idx = g.object_index("b");
    psi.on_e.resize(2);
    psi.on_e[a_idx] = RatMatrix::identity(3);
    // intertwining forces on_e[b] = Delta along the arrow b -> a
    int arr_b_to_a = -1;
    for (int a = 0; a < g.n_arrows(); ++a)
      if (!g.is_unit(a) && g.src(a) == b_idx && g.tgt(a) == a_idx) arr_b_to_a = a;
    REQUIRE(arr_b_to_a >= 0);
    psi.on_e[b_idx] = w.rep.delta_e[arr_b_to_a];
    REQUIRE(validate_vb_morphism(psi, w.rep, v2.rep).ok());
    REQUIRE(is_la_morita(psi, w, v2));
    VBMorphism id = identity_vb_morphism(w.rep);
    auto z = la_morita_zigzag(id, w, w, psi, v2);
    CHECK(is_invertible(z.h1_iso));
    CHECK(z.hv.coh.dim_h1() == 3);
    CHECK(z.hv2.coh.dim_h1() == 3);
    CHECK(is_lie_morphism(z.h1_iso, z.hv.h1, z.hv2.h1));
  }
  SECTION("base-preserving quasi-isomorphism of Lie 2-algebras over a point") {
    ts::Rng rng(337);
    XMod core = ts::sl2_on_plane_xmod();
    XMod acyclic = ts::inner_xmod(LieAlg::abelian(2));
    XMod sum = direct_sum_xmod(core, acyclic);
    LAGroupoid w = la_of_xmod(sum);
    LAGroupoid v = la_of_xmod(core);
    VBMorphism proj;
    proj.base = identity_functor(w.rep.g);
    proj.on_c = {hstack(RatMatrix::identity(2), RatMatrix::zero(2, 2))};
    proj.on_e = {hstack(RatMatrix::identity(3), RatMatrix::zero(3, 2))};
    REQUIRE(is_la_morita(proj, w, v));
    auto z = la_morita_zigzag(proj, w, v, identity_vb_morphism(w.rep), w);
    // H-isos agree with the crossed-module-level induced maps
    XModMorphism direct{proj.on_c[0], proj.on_e[0]};
    REQUIRE(validate_xmod_morphism(direct, sum, core).ok());
    HMaps direct_h = induced_h({direct.f1, direct.f2},
                               cohomology_of(sum.complex()),
                               cohomology_of(core.complex()));
    // zig-zag goes V <- ... <- W; compare its inverse with the direct map
    CHECK(z.h0_iso * direct_h.h0 == RatMatrix::identity(z.h0_iso.rows()));
    CHECK(z.h1_iso * direct_h.h1 == RatMatrix::identity(z.h1_iso.rows()));
  }
}
