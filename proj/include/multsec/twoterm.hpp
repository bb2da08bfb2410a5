#pragma once

#include <stdexcept>
#include <string>

#include "multsec/linalg.hpp"

namespace multsec {

// A 2-term cochain complex delta: Q^d0 -> Q^d1 in fixed coordinates.
struct TwoTermComplex {
  int d0 = 0;
  int d1 = 0;
  RatMatrix delta;  // d1 x d0
};

struct TwoTermCohomology {
  Subspace h0;      // kernel, in degree-0 coordinates
  QuotientData h1;  // cokernel data, in degree-1 coordinates
  int dim_h0() const { return h0.dim(); }
  int dim_h1() const { return h1.representatives.cols(); }
};

inline TwoTermCohomology cohomology_of(const RatMatrix& delta) {
  TwoTermCohomology c;
  c.h0 = kernel_basis(delta);
  c.h1 = quotient_data(full_space(delta.rows()), image_basis(delta));
  return c;
}

inline TwoTermCohomology cohomology_of(const TwoTermComplex& k) {
  return cohomology_of(k.delta);
}

// A chain map between 2-term complexes, componentwise in their coordinates.
struct ChainMap2 {
  RatMatrix f0;  // tgt.d0 x src.d0
  RatMatrix f1;  // tgt.d1 x src.d1
};

inline ChainMap2 identity_chain_map(const TwoTermComplex& k) {
  return {RatMatrix::identity(k.d0), RatMatrix::identity(k.d1)};
}

inline ChainMap2 compose_chain_maps(const ChainMap2& g, const ChainMap2& f) {
  return {g.f0 * f.f0, g.f1 * f.f1};
}

inline void check_chain_map(const ChainMap2& f, const TwoTermComplex& src,
                            const TwoTermComplex& tgt,
                            const std::string& name = "chain map") {
  if (f.f0.rows() != tgt.d0 || f.f0.cols() != src.d0 || f.f1.rows() != tgt.d1 ||
      f.f1.cols() != src.d1)
    throw std::invalid_argument(name + ": wrong shapes");
  if (tgt.delta * f.f0 != f.f1 * src.delta)
    throw std::invalid_argument(name + ": does not commute with delta");
}

// Induced maps on H^0 and H^1, in the canonical cohomology bases.
struct HMaps {
  RatMatrix h0;
  RatMatrix h1;
};

inline HMaps induced_h(const ChainMap2& f, const TwoTermCohomology& src,
                       const TwoTermCohomology& tgt) {
  HMaps h;
  auto x = solve_all(tgt.h0.basis, f.f0 * src.h0.basis);
  if (!x)
    throw std::logic_error("induced_h: image of the kernel leaves the kernel");
  h.h0 = *x;
  h.h1 = tgt.h1.project * (f.f1 * src.h1.representatives);
  return h;
}

inline bool is_invertible(const RatMatrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

inline bool is_quasi_iso(const ChainMap2& f, const TwoTermCohomology& src,
                         const TwoTermCohomology& tgt) {
  if (src.dim_h0() != tgt.dim_h0() || src.dim_h1() != tgt.dim_h1())
    return false;
  HMaps h = induced_h(f, src, tgt);
  return is_invertible(h.h0) && is_invertible(h.h1);
}

inline bool is_surjective(const RatMatrix& m) { return rank(m) == m.rows(); }

// If a quasi-isomorphism is surjective in degree 0 it is surjective in
// degree 1 as well; checked on every internally produced map.
inline void check_degree1_surjectivity(const ChainMap2& f,
                                       const TwoTermCohomology& src,
                                       const TwoTermCohomology& tgt) {
  if (is_quasi_iso(f, src, tgt) && is_surjective(f.f0) && !is_surjective(f.f1))
    throw std::logic_error(
        "surjective-in-degree-0 quasi-isomorphism fails degree-1 "
        "surjectivity");
}

inline RatMatrix inverse(const RatMatrix& m) {
  if (!is_invertible(m)) throw std::invalid_argument("matrix not invertible");
  return *solve_all(m, RatMatrix::identity(m.rows()));
}

}  // namespace multsec
