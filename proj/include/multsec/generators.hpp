#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "multsec/document.hpp"

namespace multsec {

// Example generators behind the `gen` subcommand. Every generator emits a
// self-contained workspace whose objects pass their validators.

inline Workspace gen_group_as_groupoid(int n) {
  if (n < 1) throw std::invalid_argument("group order must be positive");
  Workspace w;
  w.groupoids.emplace("G", group_as_groupoid(cyclic_names(n), cyclic_table(n)));
  return w;
}

inline Workspace gen_pair(int n) {
  if (n < 1 || n > 26) throw std::invalid_argument("pair size out of range");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
  Workspace w;
  w.groupoids.emplace("G", pair_groupoid(names));
  return w;
}

// Z/n acting on points {p0..pm-1}; perm gives the generator's images.
inline Workspace gen_action(int n, const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  std::vector<std::string> points;
  for (int i = 0; i < m; ++i) points.push_back("p" + std::to_string(i));
  std::vector<std::vector<int>> action(n, std::vector<int>(m));
  for (int x = 0; x < m; ++x) action[0][x] = x;
  for (int k = 1; k < n; ++k)
    for (int x = 0; x < m; ++x) {
      int img = perm[action[k - 1][x]];
      if (img < 0 || img >= m) throw std::invalid_argument("bad permutation");
      action[k][x] = img;
    }
  Workspace w;
  w.groupoids.emplace(
      "G", action_groupoid(cyclic_names(n), cyclic_table(n), points, action));
  return w;
}

// cover[i] = fibre label of u_i.
inline Workspace gen_cech(const std::vector<std::string>& cover) {
  std::vector<std::string> names;
  for (size_t i = 0; i < cover.size(); ++i)
    names.push_back("u" + std::to_string(i));
  Workspace w;
  w.groupoids.emplace("G", cech_groupoid(names, cover));
  return w;
}

// Honest representation of Z/n generated by one matrix (whose n-th power
// must be the identity for the action to be flat).
inline Workspace gen_rep_of_group(int n, const RatMatrix& gen) {
  if (gen.rows() != gen.cols()) throw std::invalid_argument("generator must be square");
  auto g = group_as_groupoid(cyclic_names(n), cyclic_table(n));
  std::vector<RatMatrix> delta(n);
  RatMatrix power = RatMatrix::identity(gen.rows());
  for (int k = 0; k < n; ++k) {
    delta[g.arrow_index("g" + std::to_string(k))] = power;
    power = gen * power;
  }
  Workspace w;
  RepUTH r = rep_of_representation(g, constant_bundle(1, gen.rows()), delta);
  w.groupoids.emplace("G", std::move(g));
  w.reps.emplace("R", std::move(r));
  w.rep_base["R"] = "G";
  return w;
}

inline Workspace gen_type1(const std::string& base, int n, int rank) {
  Workspace w = base == "pair" ? gen_pair(n) : gen_group_as_groupoid(n);
  const FinGroupoid& g = w.groupoid("G");
  RepUTH r = type1_pullback(g, constant_bundle(g.n_objects(), rank));
  w.reps.emplace("R", std::move(r));
  w.rep_base["R"] = "G";
  return w;
}

// Type-0 rep of Z/n: flat actions generated by two matrices, then an
// optional seeded change of horizontal lift to produce a nonzero Omega.
inline Workspace gen_type0(int n, const RatMatrix& gen_c, const RatMatrix& gen_e,
                           uint64_t seed) {
  Workspace w = gen_group_as_groupoid(n);
  const FinGroupoid& g = w.groupoid("G");
  RepUTH r;
  r.g = g;
  r.c = constant_bundle(1, gen_c.rows());
  r.e = constant_bundle(1, gen_e.rows());
  r.partial = {RatMatrix::zero(gen_e.rows(), gen_c.rows())};
  r.delta_c.assign(n, RatMatrix());
  r.delta_e.assign(n, RatMatrix());
  RatMatrix pc = RatMatrix::identity(gen_c.rows());
  RatMatrix pe = RatMatrix::identity(gen_e.rows());
  for (int k = 0; k < n; ++k) {
    int a = g.arrow_index("g" + std::to_string(k));
    r.delta_c[a] = pc;
    r.delta_e[a] = pe;
    pc = gen_c * pc;
    pe = gen_e * pe;
  }
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    std::vector<RatMatrix> sigma;
    for (int a = 0; a < g.n_arrows(); ++a) {
      RatMatrix s = RatMatrix::zero(gen_c.rows(), gen_e.rows());
      if (!g.is_unit(a))
        for (int i = 0; i < s.rows(); ++i)
          for (int j = 0; j < s.cols(); ++j) s(i, j) = entry(rng);
      sigma.push_back(std::move(s));
    }
    r = change_of_lift(r, sigma);
  }
  w.reps.emplace("R", std::move(r));
  w.rep_base["R"] = "G";
  return w;
}

// A 2-vector space as a rep over the point: one matrix, the differential.
inline Workspace gen_two_vector_space(const RatMatrix& partial) {
  Workspace w;
  auto pt = trivial_groupoid();
  RepUTH r;
  r.g = pt;
  r.c = constant_bundle(1, partial.cols());
  r.e = constant_bundle(1, partial.rows());
  r.partial = {partial};
  r.delta_c = {RatMatrix::identity(partial.cols())};
  r.delta_e = {RatMatrix::identity(partial.rows())};
  w.groupoids.emplace("G", std::move(pt));
  w.reps.emplace("R", std::move(r));
  w.rep_base["R"] = "G";
  return w;
}

// Direct sum of two reps from an existing workspace, emitted together with
// the projection morphisms onto both summands.
inline Workspace gen_direct_sum(const Workspace& in, const std::string& a,
                                const std::string& b) {
  const RepUTH& ra = in.rep(a);
  const RepUTH& rb = in.rep(b);
  Workspace w;
  RepUTH sum = direct_sum(ra, rb);
  w.groupoids.emplace("G", ra.g);
  w.reps.emplace("R1", ra);
  w.reps.emplace("R2", rb);
  w.reps.emplace("Sum", std::move(sum));
  w.rep_base["R1"] = w.rep_base["R2"] = w.rep_base["Sum"] = "G";
  Workspace::VBMorphismEntry p1{sum_projection(ra, rb, true), "Sum", "R1", ""};
  Workspace::VBMorphismEntry p2{sum_projection(ra, rb, false), "Sum", "R2", ""};
  w.vb_morphisms.emplace("ProjL", std::move(p1));
  w.vb_morphisms.emplace("ProjR", std::move(p2));
  return w;
}

inline LieAlg named_lie_algebra(const std::string& name) {
  if (name == "sl2") return sl2_lie();
  if (name == "heis3") return heisenberg_lie();
  if (name.rfind("abelian", 0) == 0)
    return LieAlg::abelian(std::stoi(name.substr(7)));
  throw std::invalid_argument("unknown Lie algebra '" + name + "'");
}

// Z/n acting on a Lie algebra bundle over one object by automorphisms; the
// generator must act by a Lie algebra automorphism of order dividing n.
inline Workspace gen_la_action(int n, const std::string& lie_name,
                               const RatMatrix& gen) {
  LieAlg fibre = named_lie_algebra(lie_name);
  if (gen.rows() != fibre.dim || gen.cols() != fibre.dim)
    throw std::invalid_argument("automorphism has wrong shape");
  auto g = group_as_groupoid(cyclic_names(n), cyclic_table(n));
  std::vector<RatMatrix> delta(n);
  RatMatrix power = RatMatrix::identity(fibre.dim);
  for (int k = 0; k < n; ++k) {
    delta[g.arrow_index("g" + std::to_string(k))] = power;
    power = gen * power;
  }
  LAGroupoid l = la_from_action(g, {fibre}, delta);
  Workspace w;
  w.groupoids.emplace("G", std::move(g));
  w.las.emplace("L", std::move(l));
  w.la_base["L"] = "G";
  return w;
}

// The default Z/2 automorphism of sl2: swap e and f, negate h.
inline RatMatrix sl2_involution() {
  return RatMatrix::parse("0 1 0; 1 0 0; 0 0 -1");
}

}  // namespace multsec
