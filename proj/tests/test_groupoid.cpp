#include <catch2/catch_amalgamated.hpp>

#include "multsec/groupoid.hpp"

using namespace multsec;

TEST_CASE("trivial groupoid is valid") {
  auto g = trivial_groupoid();
  CHECK(g.n_objects() == 1);
  CHECK(g.n_arrows() == 1);
  CHECK(validate_groupoid(g).ok());
}

TEST_CASE("pair groupoid on 3 objects") {
  auto g = pair_groupoid({"a", "b", "c"});
  CHECK(g.n_arrows() == 9);
  CHECK(validate_groupoid(g).ok());
}

TEST_CASE("broken associativity is reported with the triple") {
  auto g = group_as_groupoid(cyclic_names(3), cyclic_table(3));
  REQUIRE(validate_groupoid(g).ok());
  // redirect one product
  int g1 = g.arrow_index("g1");
  g.compose_table[{g1, g1}] = g.arrow_index("g0");
  auto r = validate_groupoid(g);
  CHECK_FALSE(r.ok());
  bool mentions_triple = false;
  for (const auto& v : r.violations)
    if (v.find("associativity") != std::string::npos &&
        v.find("g1") != std::string::npos)
      mentions_triple = true;
  CHECK(mentions_triple);
}

TEST_CASE("generator outputs validate") {
  CHECK(validate_groupoid(group_as_groupoid(cyclic_names(2), cyclic_table(2))).ok());
  CHECK(validate_groupoid(group_as_groupoid(cyclic_names(5), cyclic_table(5))).ok());
  CHECK(validate_groupoid(pair_groupoid({"x", "y"})).ok());
  CHECK(validate_groupoid(cech_groupoid({"u1", "u2", "u3"}, {"p", "p", "q"})).ok());
  // Z/2 acting on {a, b} by swap: 2 objects, 4 arrows
  auto a = action_groupoid(cyclic_names(2), cyclic_table(2), {"a", "b"},
                           {{0, 1}, {1, 0}});
  CHECK(a.n_objects() == 2);
  CHECK(a.n_arrows() == 4);
  CHECK(validate_groupoid(a).ok());
}

TEST_CASE("group_as_groupoid rejects invalid tables") {
  CHECK_THROWS_AS(group_as_groupoid({"e", "a"}, {{0, 1}, {1, 1}}),
                  std::invalid_argument);
  // non-associative magma with 0 neutral: (b*b)*a != b*(b*a)
  CHECK_THROWS_AS(
      group_as_groupoid({"e", "a", "b"}, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}),
      std::invalid_argument);
}

TEST_CASE("weak equivalences") {
  SECTION("identity") {
    auto g = pair_groupoid({"a", "b"});
    CHECK(is_weak_equivalence(identity_functor(g), g, g));
  }
  SECTION("pair groupoid collapses to the point") {
    auto g = pair_groupoid({"a", "b"});
    auto pt = trivial_groupoid();
    GroupoidFunctor f;
    f.on_objects = {0, 0};
    f.on_arrows.assign(4, 0);
    REQUIRE(validate_functor(f, g, pt).ok());
    CHECK(is_weak_equivalence(f, g, pt));
  }
  SECTION("discrete two points to one point is not fully faithful") {
    auto d2 = cech_groupoid({"a", "b"}, {"p", "q"});  // discrete on 2 objects
    auto pt = trivial_groupoid();
    GroupoidFunctor f;
    f.on_objects = {0, 0};
    f.on_arrows = {0, 0};
    REQUIRE(validate_functor(f, d2, pt).ok());
    Report why;
    CHECK_FALSE(is_weak_equivalence(f, d2, pt, &why));
    CHECK_FALSE(why.ok());
  }
}

TEST_CASE("surjectivity profile") {
  auto g = pair_groupoid({"a", "b"});
  SECTION("identity is fully surjective") {
    auto p = surjectivity_profile(identity_functor(g), g, g);
    CHECK(p.all());
  }
  SECTION("object inclusion is nowhere surjective") {
    auto one = pair_groupoid({"a"});
    GroupoidFunctor f;
    f.on_objects = {g.object_index("a")};
    f.on_arrows = {g.arrow_index("<a<-a>")};
    REQUIRE(validate_functor(f, one, g).ok());
    auto p = surjectivity_profile(f, one, g);
    CHECK_FALSE(p.on_objects);
    CHECK_FALSE(p.on_arrows);
    CHECK_FALSE(p.on_pairs);
  }
}

TEST_CASE("weak fibre product of identities over the point") {
  auto pt = trivial_groupoid();
  auto w = weak_fibre_product(pt, identity_functor(pt), pt,
                              identity_functor(pt), pt);
  CHECK(w.p.n_objects() == 1);
  CHECK(w.p.n_arrows() == 1);
  CHECK(validate_groupoid(w.p).ok());
}

TEST_CASE("weak fibre product over a group") {
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  auto pt = trivial_groupoid();
  GroupoidFunctor incl;
  incl.on_objects = {0};
  incl.on_arrows = {z2.arrow_index("g0")};
  REQUIRE(validate_functor(incl, pt, z2).ok());
  SECTION("two points over Z/2 give the underlying set of the group") {
    auto w = weak_fibre_product(pt, incl, pt, incl, z2);
    CHECK(w.p.n_objects() == 2);
    CHECK(w.p.n_arrows() == 2);  // units only
    CHECK(validate_groupoid(w.p).ok());
    CHECK(validate_functor(w.proj_left, w.p, pt).ok());
    CHECK(validate_functor(w.proj_right, w.p, pt).ok());
  }
  SECTION("identity against the point gives the action groupoid of Z/2") {
    // direct construction: objects are the elements of Z/2, exactly one
    // arrow between any two, so the product collapses to the point
    auto w = weak_fibre_product(z2, identity_functor(z2), pt, incl, z2);
    CHECK(w.p.n_objects() == 2);
    CHECK(w.p.n_arrows() == 4);
    CHECK(validate_groupoid(w.p).ok());
    CHECK(is_weak_equivalence(w.proj_right, w.p, pt));
    CHECK(surjectivity_profile(w.proj_right, w.p, pt).all());
  }
}

TEST_CASE("projection of a weak fibre product along a weak equivalence") {
  // phi: Pair(a,b) -> point is a weak equivalence; the projection to the
  // other factor is then a weak equivalence with full surjectivity profile.
  auto g = pair_groupoid({"a", "b"});
  auto pt = trivial_groupoid();
  GroupoidFunctor phi;
  phi.on_objects = {0, 0};
  phi.on_arrows.assign(4, 0);
  auto z2 = group_as_groupoid(cyclic_names(2), cyclic_table(2));
  GroupoidFunctor psi;  // z2 -> pt
  psi.on_objects = {0};
  psi.on_arrows = {0, 0};
  REQUIRE(validate_functor(psi, z2, pt).ok());
  auto w = weak_fibre_product(g, phi, z2, psi, pt);
  CHECK(validate_groupoid(w.p).ok());
  CHECK(validate_functor(w.proj_left, w.p, g).ok());
  CHECK(validate_functor(w.proj_right, w.p, z2).ok());
  CHECK(is_weak_equivalence(w.proj_right, w.p, z2));
  CHECK(surjectivity_profile(w.proj_right, w.p, z2).all());
}

TEST_CASE("weak equivalences compose") {
  auto g = pair_groupoid({"a", "b", "c"});
  auto h = pair_groupoid({"a", "b"});
  auto pt = trivial_groupoid();
  GroupoidFunctor f;  // g -> h collapsing c onto a
  f.on_objects = {h.object_index("a"), h.object_index("b"), h.object_index("a")};
  f.on_arrows.resize(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a) {
    auto obj = [&](int x) { return h.objects[f.on_objects[x]]; };
    f.on_arrows[a] =
        h.arrow_index("<" + obj(g.tgt(a)) + "<-" + obj(g.src(a)) + ">");
  }
  REQUIRE(validate_functor(f, g, h).ok());
  GroupoidFunctor k;  // h -> pt
  k.on_objects = {0, 0};
  k.on_arrows.assign(4, 0);
  REQUIRE(is_weak_equivalence(f, g, h));
  REQUIRE(is_weak_equivalence(k, h, pt));
  CHECK(is_weak_equivalence(compose_functors(f, k), g, pt));
}
