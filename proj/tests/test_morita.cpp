#include <catch2/catch_amalgamated.hpp>

#include "multsec/morita.hpp"
#include "support.hpp"

using namespace multsec;
namespace ts = multsec::testsupport;

namespace {

RepUTH z2_swap_rep() {
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  std::vector<RatMatrix> delta(2);
  delta[z2.arrow_index("g0")] = RatMatrix::identity(2);
  delta[z2.arrow_index("g1")] = RatMatrix::parse("0 1; 1 0");
  return rep_of_representation(z2, constant_bundle(1, 2), delta);
}

GroupoidFunctor pair_to_point(const FinGroupoid& g) {
  GroupoidFunctor f;
  f.on_objects.assign(g.n_objects(), 0);
  f.on_arrows.assign(g.n_arrows(), 0);
  return f;
}

// Independent linear-total-groupoid oracle for the VB-Morita property:
// essential surjectivity of the total map plus the good-fibre-product
// condition, both expressed through dimension counts of arrow spaces
// between fixed object vectors.
bool vb_morita_total_oracle(const VBMorphism& m, const RepUTH& r1,
                            const RepUTH& r2) {
  const FinGroupoid& g = r1.g;
  const FinGroupoid& h = r2.g;
  // (a) essential surjectivity: for each object n of H the union over
  // (x, hh: phi0 x -> n) of t(W_hh with source in im Phi_E[x]) covers F_n;
  // over Q a finite union of subspaces covers only if one member does.
  for (int n = 0; n < h.n_objects(); ++n) {
    bool covered = false;
    for (int x = 0; x < g.n_objects() && !covered; ++x)
      for (int hh = 0; hh < h.n_arrows() && !covered; ++hh) {
        if (h.src(hh) != m.base.on_objects[x] || h.tgt(hh) != n) continue;
        // {w in W_hh : source(w) in im Phi_E[x]} mapped by the target map
        Subspace src_im = image_basis(m.on_e[x]);
        int dd = r2.c.dim[h.tgt(hh)], df = r2.e.dim[h.src(hh)];
        // parametrize w = (d, f) with f = src_im.basis * y
        RatMatrix tgt_map(r2.e.dim[n], dd + src_im.dim());
        const RatMatrix& pd = r2.partial[n];
        RatMatrix de = r2.delta_e[hh] * src_im.basis;
        for (int i = 0; i < r2.e.dim[n]; ++i) {
          for (int j = 0; j < dd; ++j) tgt_map(i, j) = pd(i, j);
          for (int j = 0; j < de.cols(); ++j) tgt_map(i, dd + j) = de(i, j);
        }
        (void)df;
        if (rank(tgt_map) == r2.e.dim[n]) covered = true;
      }
    if (!covered) return false;
  }
  // (b) good fibre product: phi bijective on hom-sets and each fibre map
  // V_a -> {(e1, e2, w in W_{phi a}) : s(w) = Phi e1, t(w) = Phi e2}
  // bijective.
  for (int x = 0; x < g.n_objects(); ++x)
    for (int y = 0; y < g.n_objects(); ++y) {
      auto dom = g.hom(x, y);
      auto cod = h.hom(m.base.on_objects[x], m.base.on_objects[y]);
      std::set<int> image;
      for (int a : dom) image.insert(m.base.on_arrows[a]);
      if (image.size() != dom.size() || image.size() != cod.size())
        return false;
      for (int a : dom) {
        int hh = m.base.on_arrows[a];
        // fibre product dimension: coordinates (e1, e2, d, f) with
        // f = Phi_E[x] e1, partial d + Delta^F f = Phi_E[y] e2
        int de1 = r1.e.dim[x], de2 = r1.e.dim[y];
        int dd = r2.c.dim[h.tgt(hh)], df = r2.e.dim[h.src(hh)];
        RatMatrix sys(df + r2.e.dim[h.tgt(hh)], de1 + de2 + dd + df);
        for (int i = 0; i < df; ++i) {
          sys(i, de1 + de2 + dd + i) = 1;
          for (int j = 0; j < de1; ++j) sys(i, j) -= m.on_e[x](i, j);
        }
        const RatMatrix& pd = r2.partial[h.tgt(hh)];
        const RatMatrix& dfh = r2.delta_e[hh];
        for (int i = 0; i < r2.e.dim[h.tgt(hh)]; ++i) {
          for (int j = 0; j < dd; ++j) sys(df + i, de1 + de2 + j) += pd(i, j);
          for (int j = 0; j < df; ++j)
            sys(df + i, de1 + de2 + dd + j) += dfh(i, j);
          for (int j = 0; j < de2; ++j) sys(df + i, de1 + j) -= m.on_e[y](i, j);
        }
        int fp_dim = kernel_basis(sys).dim();
        int va_dim = r1.c.dim[y] + r1.e.dim[x];
        // kernel of v -> (s v, t v, Phi v): c with partial c = 0, on_c c = 0
        RatMatrix ker_sys = vstack(r1.partial[y], m.on_c[y]);
        int ker_dim = kernel_basis(ker_sys).dim();
        if (ker_dim != 0 || va_dim != fp_dim) return false;
      }
    }
  return true;
}

}  // namespace

TEST_CASE("VB-Morita detection") {
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  RepUTH t0 = z2_swap_rep();
  RepUTH t1 = type1_pullback(z2, constant_bundle(1, 2));
  RepUTH s = direct_sum(t0, t1);
  SECTION("identity") {
    CHECK(is_vb_morita(identity_vb_morphism(s), s, s));
  }
  SECTION("projection onto the type-0 summand") {
    VBMorphism p = sum_projection(t0, t1, true);
    CHECK(is_vb_morita(p, s, t0));
  }
  SECTION("dropping a fibre map breaks it, with the object named") {
    VBMorphism p = sum_projection(t0, t1, true);
    p.on_e[0] = RatMatrix::zero(2, 4);
    Report why;
    // zeroing on_e breaks the intertwining or the fibre quasi-iso
    CHECK_FALSE(is_vb_morita(p, s, t0, &why));
    CHECK_FALSE(why.ok());
  }
  SECTION("base weak equivalence failure is reported") {
    // inclusion of the point into Z/2 as a group is not fully faithful
    auto pt = trivial_groupoid();
    RepUTH rv = rep_of_representation(pt, constant_bundle(1, 1),
                                      {RatMatrix::identity(1)});
    RepUTH rw = z2_swap_rep();
    VBMorphism m;
    m.base.on_objects = {0};
    m.base.on_arrows = {z2.arrow_index("g0")};
    m.on_c = {RatMatrix::zero(0, 0)};
    m.on_e = {RatMatrix::parse("1; 1")};
    REQUIRE(validate_vb_morphism(m, rv, rw).ok());
    Report why;
    CHECK_FALSE(is_vb_morita(m, rv, rw, &why));
  }
}

TEST_CASE("fibrewise criterion agrees with the total-groupoid oracle") {
  ts::Rng rng(101);
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  RepUTH t0 = z2_swap_rep();
  RepUTH t1 = type1_pullback(z2, constant_bundle(1, 2));
  RepUTH s = direct_sum(t0, t1);
  VBMorphism p = sum_projection(t0, t1, true);
  CHECK(vb_morita_total_oracle(p, s, t0) == is_vb_morita(p, s, t0));
  CHECK(vb_morita_total_oracle(identity_vb_morphism(s), s, s));
  // a non-example: zero map on a nonzero rep
  VBMorphism z = sum_projection(t0, t1, true);
  for (auto& mtx : z.on_e) mtx = RatMatrix::zero(mtx.rows(), mtx.cols());
  for (auto& mtx : z.on_c) mtx = RatMatrix::zero(mtx.rows(), mtx.cols());
  CHECK(vb_morita_total_oracle(z, s, t0) == is_vb_morita(z, s, t0));
  // pullback along a weak equivalence
  auto pairg = pair_groupoid({"a", "b"});
  GroupoidFunctor phi = pair_to_point(pairg);
  auto pt = trivial_groupoid();
  RepUTH rw;
  rw.g = pt;
  rw.c = constant_bundle(1, 1);
  rw.e = constant_bundle(1, 2);
  rw.partial = {ts::random_matrix(rng, 2, 1)};
  rw.delta_c = {RatMatrix::identity(1)};
  rw.delta_e = {RatMatrix::identity(2)};
  REQUIRE(validate_rep(rw).ok());
  PullbackRep pb = pullback_rep(rw, phi, pairg);
  REQUIRE(validate_rep(pb.rep).ok());
  CHECK(is_vb_morita(pb.shriek, pb.rep, rw));
  CHECK(vb_morita_total_oracle(pb.shriek, pb.rep, rw));
}

TEST_CASE("pullback representation") {
  ts::Rng rng(103);
  SECTION("along the identity") {
    RepUTH r = ts::random_rep(rng, 2);
    PullbackRep pb = pullback_rep(r, identity_functor(r.g), r.g);
    CHECK(pb.rep.c.dim == r.c.dim);
    CHECK(pb.rep.e.dim == r.e.dim);
    for (int a = 0; a < r.g.n_arrows(); ++a) {
      CHECK(pb.rep.delta_c[a] == r.delta_c[a]);
      CHECK(pb.rep.delta_e[a] == r.delta_e[a]);
    }
  }
  SECTION("pair groupoid over a point group rep") {
    auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
    RepUTH rw = z2_swap_rep();
    auto pairg = pair_groupoid({"a", "b"});
    GroupoidFunctor phi;  // collapse: every arrow to the swap? must be a functor
    phi.on_objects = {0, 0};
    // send <a<-a>,<b<-b> to unit, the two cross arrows to g1
    phi.on_arrows.assign(4, 0);
    phi.on_arrows[pairg.arrow_index("<b<-a>")] = z2.arrow_index("g1");
    phi.on_arrows[pairg.arrow_index("<a<-b>")] = z2.arrow_index("g1");
    REQUIRE(validate_functor(phi, pairg, z2).ok());
    PullbackRep pb = pullback_rep(rw, phi, pairg);
    CHECK(validate_rep(pb.rep).ok());
    // parallel arrows with equal images share the pulled-back action
    CHECK(pb.rep.delta_e[pairg.arrow_index("<b<-a>")] ==
          pb.rep.delta_e[pairg.arrow_index("<a<-b>")]);
    // core dimensions are the pullback of the source core
    for (int x = 0; x < 2; ++x) CHECK(pb.rep.c.dim[x] == rw.c.dim[0]);
    CHECK(validate_vb_morphism(pb.shriek, pb.rep, rw).ok());
  }
}

TEST_CASE("pullback and bar chain maps") {
  ts::Rng rng(107);
  auto pairg = pair_groupoid({"a", "b"});
  auto pt = trivial_groupoid();
  GroupoidFunctor phi = pair_to_point(pairg);
  RepUTH rw;
  rw.g = pt;
  rw.c = constant_bundle(1, 2);
  rw.e = constant_bundle(1, 2);
  rw.partial = {ts::random_matrix(rng, 2, 2)};
  rw.delta_c = {RatMatrix::identity(2)};
  rw.delta_e = {RatMatrix::identity(2)};
  REQUIRE(validate_rep(rw).ok());
  PullbackRep pb = pullback_rep(rw, phi, pairg);
  REQUIRE(validate_rep(pb.rep).ok());
  SectionComplex kw = build_complex(rw), kp = build_complex(pb.rep);
  SECTION("identity pullback is the identity chain map") {
    PullbackRep idp = pullback_rep(rw, identity_functor(pt), pt);
    SectionComplex kid = build_complex(idp.rep);
    ChainMap2 f = chain_map_pullback(identity_functor(pt), rw, kw, idp.rep, kid);
    CHECK(f.f0 == RatMatrix::identity(kw.deg0_dim()));
    CHECK(f.f1 == RatMatrix::identity(kw.deg1_dim()));
  }
  SECTION("pullback along a weak equivalence is a quasi-isomorphism") {
    ChainMap2 f = chain_map_pullback(phi, rw, kw, pb.rep, kp);
    auto cw = cohomology_of(as_two_term(kw)), cp = cohomology_of(as_two_term(kp));
    CHECK(is_quasi_iso(f, cw, cp));
  }
  SECTION("bar map of phi-shriek and the factorization through the pullback") {
    // phi^! itself is base-preserving over the pullback: bar is the identity
    ChainMap2 bar = chain_map_bar(pb.shriek, pb.rep, kp, pb.rep, kp);
    CHECK(bar.f0 == RatMatrix::identity(kp.deg0_dim()));
    CHECK(bar.f1 == RatMatrix::identity(kp.deg1_dim()));
    // phi^! . bar(v) = Phi(v) on a sample of decorated arrows
    for (int a = 0; a < pairg.n_arrows(); ++a) {
      VBArrow v{column_of(ts::random_matrix(rng, 2, 1), 0), a,
                column_of(ts::random_matrix(rng, 2, 1), 0)};
      VBMorphism barm = bar_vb_morphism(pb.shriek, pb.rep);
      VBArrow via =
          vb_apply(pb.shriek, vb_apply(barm, v, pb.rep), pb.rep);
      CHECK(via == vb_apply(pb.shriek, v, pb.rep));
    }
  }
}

TEST_CASE("projectable subcomplex") {
  ts::Rng rng(109);
  auto pairg = pair_groupoid({"a", "b"});
  auto pt = trivial_groupoid();
  SECTION("identity morphism keeps the full complex") {
    RepUTH r = ts::random_rep(rng, 2);
    SectionComplex k = build_complex(r);
    auto pc = projectable_complex(identity_vb_morphism(r), r, r, k);
    CHECK(pc.deg0.dim() == k.deg0_dim());
    CHECK(pc.deg1.dim() == k.deg1_dim());
  }
  SECTION("trivial line bundles over pair groupoid -> point") {
    // projectable core sections are the constant ones: dimension 2 -> 1
    GroupoidFunctor phi = pair_to_point(pairg);
    RepUTH rw;
    rw.g = pt;
    rw.c = constant_bundle(1, 1);
    rw.e = constant_bundle(1, 1);
    rw.partial = {RatMatrix::zero(1, 1)};
    rw.delta_c = {RatMatrix::identity(1)};
    rw.delta_e = {RatMatrix::identity(1)};
    PullbackRep pb = pullback_rep(rw, phi, pairg);
    SectionComplex kv = build_complex(pb.rep);
    CHECK(kv.deg0_dim() == 2);
    auto pc = projectable_complex(pb.shriek, pb.rep, rw, kv);
    CHECK(pc.deg0.dim() == 1);
    // the constant sections
    CHECK(contains(pc.deg0, RatVector{Rat(1), Rat(1)}));
  }
  SECTION("surjectivity precondition is named") {
    RepUTH t0 = z2_swap_rep();
    RepUTH t1 = type1_pullback(t0.g, constant_bundle(1, 2));
    RepUTH s = direct_sum(t0, t1);
    VBMorphism incl = sum_projection(t0, t1, true);
    // reverse: map t0 into the sum; on_e not surjective
    VBMorphism into;
    into.base = identity_functor(t0.g);
    into.on_c = {RatMatrix::zero(2, 0)};
    into.on_e = {RatMatrix::parse("1 0; 0 1; 0 0; 0 0")};
    REQUIRE(validate_vb_morphism(into, t0, s).ok());
    SectionComplex k0 = build_complex(t0);
    bool threw = false;
    try {
      projectable_complex(into, t0, s, k0);
    } catch (const std::invalid_argument& e) {
      threw = true;
      CHECK(std::string(e.what()).find("objects") != std::string::npos);
    }
    CHECK(threw);
    (void)incl;
  }
}

TEST_CASE("fibre product square of quasi-isomorphisms") {
  ts::Rng rng(113);
  // Phi = phi^! : phi^*W -> W along the weak equivalence pair -> point.
  auto pairg = pair_groupoid({"a", "b"});
  auto pt = trivial_groupoid();
  GroupoidFunctor phi = pair_to_point(pairg);
  RepUTH rw;
  rw.g = pt;
  rw.c = constant_bundle(1, 2);
  rw.e = constant_bundle(1, 2);
  RatMatrix pm = RatMatrix::zero(2, 2);
  pm(0, 0) = 1;  // rank-1 anchor: both H^0 and H^1 nonzero
  rw.partial = {pm};
  rw.delta_c = {RatMatrix::identity(2)};
  rw.delta_e = {RatMatrix::identity(2)};
  REQUIRE(validate_rep(rw).ok());
  PullbackRep pb = pullback_rep(rw, phi, pairg);
  const RepUTH& rv = pb.rep;
  const VBMorphism& m = pb.shriek;
  REQUIRE(is_vb_morita(m, rv, rw));
  SectionComplex kv = build_complex(rv), kw = build_complex(rw);
  PullbackRep pb2 = pullback_rep(rw, phi, pairg);  // phi^* W again
  SectionComplex kp = build_complex(pb2.rep);
  auto pc = projectable_complex(m, rv, rw, kv);
  ChainMap2 incl = projectable_inclusion(pc);
  ChainMap2 proj = project_sections(m, rv, rw, kv, pc, kw);
  ChainMap2 bar = chain_map_bar(m, rv, kv, pb2.rep, kp);
  ChainMap2 pull = chain_map_pullback(phi, rw, kw, pb2.rep, kp);
  auto cv = cohomology_of(as_two_term(kv)), cw = cohomology_of(as_two_term(kw));
  auto cp = cohomology_of(as_two_term(kp));
  auto cpc = cohomology_of(pc.restricted);
  SECTION("all four maps are quasi-isomorphisms") {
    CHECK(is_quasi_iso(incl, cpc, cv));
    CHECK(is_quasi_iso(proj, cpc, cw));
    CHECK(is_quasi_iso(bar, cv, cp));
    CHECK(is_quasi_iso(pull, cw, cp));
  }
  SECTION("the square commutes exactly") {
    ChainMap2 via_v = compose_chain_maps(bar, incl);
    ChainMap2 via_w = compose_chain_maps(pull, proj);
    CHECK(via_v.f0 == via_w.f0);
    CHECK(via_v.f1 == via_w.f1);
  }
  SECTION("projectable dimensions equal the fibre product dimensions") {
    // fibre product of bar and pull in each degree
    RatMatrix d0 = hstack(bar.f0, -pull.f0);
    RatMatrix d1 = hstack(bar.f1, -pull.f1);
    CHECK(pc.deg0.dim() == kernel_basis(d0).dim());
    CHECK(pc.deg1.dim() == kernel_basis(d1).dim());
  }
  SECTION("project then include commutes with delta on single vectors") {
    for (int j = 0; j < pc.deg1.dim(); ++j) {
      RatVector v = column_of(pc.deg1.basis, j);
      RatVector w = project_section_vector(pc, proj, v);
      CHECK(static_cast<int>(w.size()) == kw.deg1_dim());
    }
    if (kv.deg1_dim() > pc.deg1.dim()) {
      // some non-projectable vector exists
      bool rejected = false;
      for (int j = 0; j < kv.deg1_dim() && !rejected; ++j) {
        RatVector v = unit_vector(kv.deg1_dim(), j);
        if (!contains(pc.deg1, v)) {
          CHECK_THROWS_AS(project_section_vector(pc, proj, v),
                          std::invalid_argument);
          rejected = true;
        }
      }
      CHECK(rejected);
    }
  }
}

TEST_CASE("morita H isomorphisms") {
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  RepUTH t0 = z2_swap_rep();
  RepUTH t1 = type1_pullback(z2, constant_bundle(1, 2));
  RepUTH s = direct_sum(t0, t1);
  SECTION("identity gives identities") {
    auto h = morita_h_iso(identity_vb_morphism(s), s, s);
    REQUIRE(h.morita);
    CHECK(h.h.h0 == RatMatrix::identity(h.h.h0.rows()));
    CHECK(h.h.h1 == RatMatrix::identity(h.h.h1.rows()));
  }
  SECTION("projection to the type-0 summand") {
    auto h = morita_h_iso(sum_projection(t0, t1, true), s, t0);
    REQUIRE(h.morita);
    CHECK(is_invertible(h.h.h0));
    CHECK(is_invertible(h.h.h1));
    auto hs = cohomology_of(as_two_term(build_complex(s)));
    auto h0c = cohomology_of(as_two_term(build_complex(t0)));
    CHECK(h.h.h0.rows() == h0c.dim_h0());
    CHECK(h.h.h0.cols() == hs.dim_h0());
    CHECK(h.h.h1.rows() == h0c.dim_h1());
  }
  SECTION("two presentations of one quotient") {
    // pair groupoid with pulled-back rep vs the point rep
    ts::Rng rng(211);
    auto pairg = pair_groupoid({"a", "b"});
    auto pt = trivial_groupoid();
    RepUTH rw;
    rw.g = pt;
    rw.c = constant_bundle(1, 1);
    rw.e = constant_bundle(1, 2);
    rw.partial = {ts::random_matrix(rng, 2, 1)};
    rw.delta_c = {RatMatrix::identity(1)};
    rw.delta_e = {RatMatrix::identity(2)};
    REQUIRE(validate_rep(rw).ok());
    GroupoidFunctor phi = pair_to_point(pairg);
    PullbackRep pb = pullback_rep(rw, phi, pairg);
    auto h = morita_h_iso(pb.shriek, pb.rep, rw);
    REQUIRE(h.morita);
    auto ca = cohomology_of(as_two_term(build_complex(pb.rep)));
    auto cb = cohomology_of(as_two_term(build_complex(rw)));
    CHECK(ca.dim_h1() == cb.dim_h1());
    CHECK(is_invertible(h.h.h1));
  }
}

TEST_CASE("zigzag H-isos compose functorially") {
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  RepUTH t0 = z2_swap_rep();
  RepUTH t1 = type1_pullback(z2, constant_bundle(1, 2));
  RepUTH s = direct_sum(t0, t1);
  SectionComplex k0 = build_complex(t0), ks = build_complex(s);
  VBMorphism p = sum_projection(t0, t1, true);
  PullbackRep pid = pullback_rep(t0, identity_functor(z2), z2);
  SectionComplex kp = build_complex(pid.rep);
  ChainMap2 bar = chain_map_bar(p, s, ks, pid.rep, kp);
  ChainMap2 pull = chain_map_pullback(identity_functor(z2), t0, k0, pid.rep, kp);
  std::vector<TwoTermComplex> chain{as_two_term(ks), as_two_term(kp),
                                    as_two_term(k0)};
  auto h1 = zigzag_h_iso(chain, {{bar, true, "bar"}, {pull, false, "pull"}});
  // concatenating a zigzag with its reverse gives the identity
  auto h2 = zigzag_h_iso({as_two_term(ks), as_two_term(kp), as_two_term(k0),
                          as_two_term(k0), as_two_term(kp), as_two_term(ks)},
                         {{bar, true, "bar"},
                          {pull, false, "pull"},
                          {identity_chain_map(as_two_term(k0)), true, "id"},
                          {pull, true, "pull"},
                          {bar, false, "bar"}});
  CHECK(h2.h0 == RatMatrix::identity(h2.h0.rows()));
  CHECK(h2.h1 == RatMatrix::identity(h2.h1.rows()));
  // and composing two copies of the same zigzag data is consistent
  CHECK(h1.h0.rows() == h1.h0.cols());
  CHECK(is_invertible(h1.h0));
  CHECK(is_invertible(h1.h1));
  // a non-quasi-isomorphism constituent aborts with the failing map named
  ChainMap2 zero{RatMatrix::zero(k0.deg0_dim(), ks.deg0_dim()),
                 RatMatrix::zero(k0.deg1_dim(), ks.deg1_dim())};
  bool threw = false;
  try {
    zigzag_h_iso({as_two_term(ks), as_two_term(k0)}, {{zero, true, "zero-map"}});
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("zero-map") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("weak fibre products of split VB-groupoids") {
  ts::Rng rng(127);
  SECTION("identity legs over the trivial base") {
    auto pt = trivial_groupoid();
    RepUTH v;
    v.g = pt;
    v.c = constant_bundle(1, 2);
    v.e = constant_bundle(1, 2);
    v.partial = {ts::random_matrix(rng, 2, 2)};
    v.delta_c = {RatMatrix::identity(2)};
    v.delta_e = {RatMatrix::identity(2)};
    REQUIRE(validate_rep(v).ok());
    auto w = vb_weak_fibre_product(identity_vb_morphism(v), v,
                                   identity_vb_morphism(v), v, v);
    CHECK(validate_rep(w.rep).ok());
    CHECK(validate_vb_morphism(w.to_left, w.rep, v).ok());
    CHECK(validate_vb_morphism(w.to_right, w.rep, v).ok());
    // objects (x, h, x') with one h; side fibre cut out of E + (D+F) + E
    CHECK(w.rep.e.dim[0] == 2 + 2);  // w determined by (d, f); e, e' forced?
    // dimension check instead: side = {(e,d,f,e'): f = e, pd + f = e'}
    // -> free (e, d) -> dim 4; core = C + C = 4
    CHECK(w.rep.c.dim[0] == 4);
  }
  SECTION("restriction of a group representation along Morita legs") {
    // V = W = honest Z/2 rep; Phi = identity (a VB-Morita map);
    // V' = the same; the product projections are VB-Morita and fully
    // surjective (statements 4 and 5).
    auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
    RepUTH w = z2_swap_rep();
    auto prod = vb_weak_fibre_product(identity_vb_morphism(w), w,
                                      identity_vb_morphism(w), w, w);
    CHECK(validate_rep(prod.rep).ok());
    CHECK(validate_vb_morphism(prod.to_left, prod.rep, w).ok());
    CHECK(validate_vb_morphism(prod.to_right, prod.rep, w).ok());
    CHECK(is_vb_morita(prod.to_right, prod.rep, w));
    CHECK(vb_surjectivity_profile(prod.to_right, prod.rep, w).all());
    CHECK(surjectivity_profile(prod.base.proj_right, prod.base.p, w.g).all());
    // invariants match the brute-force count on both sides
    auto h増 = cohomology_of(as_two_term(build_complex(prod.rep)));
    auto hw = cohomology_of(as_two_term(build_complex(w)));
    CHECK(h増.dim_h1() == hw.dim_h1());
    CHECK(h増.dim_h0() == hw.dim_h0());
  }
}
