#pragma once

#include <stdexcept>
#include <vector>

#include "multsec/common.hpp"
#include "multsec/linalg.hpp"

namespace multsec {

// A finite-dimensional Lie algebra over Q by structure constants:
// [e_i, e_j] = sum_k table[i*dim+j][k] e_k.
struct LieAlg {
  int dim = 0;
  std::vector<RatVector> table;

  static LieAlg abelian(int n) {
    LieAlg l;
    l.dim = n;
    l.table.assign(static_cast<size_t>(n) * n, zero_vector(n));
    return l;
  }

  const RatVector& bracket_basis(int i, int j) const {
    return table[static_cast<size_t>(i) * dim + j];
  }
  RatVector& bracket_basis(int i, int j) {
    return table[static_cast<size_t>(i) * dim + j];
  }

  RatVector bracket(const RatVector& u, const RatVector& v) const {
    RatVector out = zero_vector(dim);
    for (int i = 0; i < dim; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < dim; ++j) {
        if (v[j] == 0) continue;
        const RatVector& b = bracket_basis(i, j);
        Rat f = u[i] * v[j];
        for (int k = 0; k < dim; ++k)
          if (b[k] != 0) out[k] += f * b[k];
      }
    }
    return out;
  }
};

// sl2 with basis (e, f, h): [e,f]=h, [h,e]=2e, [h,f]=-2f.
inline LieAlg sl2_lie() {
  LieAlg l = LieAlg::abelian(3);
  auto set = [&](int i, int j, RatVector v) {
    l.bracket_basis(i, j) = v;
    l.bracket_basis(j, i) = vec_neg(v);
  };
  set(0, 1, RatVector{Rat(0), Rat(0), Rat(1)});    // [e,f]=h
  set(2, 0, RatVector{Rat(2), Rat(0), Rat(0)});    // [h,e]=2e
  set(2, 1, RatVector{Rat(0), Rat(-2), Rat(0)});   // [h,f]=-2f
  return l;
}

// Heisenberg: [x,y]=z central.
inline LieAlg heisenberg_lie() {
  LieAlg l = LieAlg::abelian(3);
  l.bracket_basis(0, 1) = RatVector{Rat(0), Rat(0), Rat(1)};
  l.bracket_basis(1, 0) = RatVector{Rat(0), Rat(0), Rat(-1)};
  return l;
}

inline Report validate_lie(const LieAlg& l) {
  Report r;
  if (static_cast<int>(l.table.size()) != l.dim * l.dim) {
    r.fail("structure constant table has wrong size");
    return r;
  }
  for (int i = 0; i < l.dim; ++i)
    for (int j = 0; j < l.dim; ++j) {
      if (static_cast<int>(l.bracket_basis(i, j).size()) != l.dim) {
        r.fail("structure constant row has wrong length");
        return r;
      }
      if (l.bracket_basis(i, j) != vec_neg(l.bracket_basis(j, i)))
        r.fail("antisymmetry fails at (" + std::to_string(i) + "," +
               std::to_string(j) + ")");
    }
  for (int i = 0; i < l.dim; ++i)
    for (int j = i + 1; j < l.dim; ++j)
      for (int k = j + 1; k < l.dim; ++k) {
        RatVector jac = l.bracket(l.bracket_basis(i, j), unit_vector(l.dim, k));
        jac = vec_add(jac,
                      l.bracket(l.bracket_basis(j, k), unit_vector(l.dim, i)));
        jac = vec_add(jac,
                      l.bracket(l.bracket_basis(k, i), unit_vector(l.dim, j)));
        if (!vec_is_zero(jac))
          r.fail("Jacobi identity fails at (" + std::to_string(i) + "," +
                 std::to_string(j) + "," + std::to_string(k) + ")");
      }
  return r;
}

inline bool is_lie_morphism(const RatMatrix& f, const LieAlg& src,
                            const LieAlg& tgt) {
  if (f.cols() != src.dim || f.rows() != tgt.dim)
    throw std::invalid_argument("is_lie_morphism: shape mismatch");
  for (int i = 0; i < src.dim; ++i)
    for (int j = i + 1; j < src.dim; ++j) {
      RatVector lhs = mat_vec(f, src.bracket_basis(i, j));
      RatVector rhs = tgt.bracket(column_of(f, i), column_of(f, j));
      if (lhs != rhs) return false;
    }
  return true;
}

inline bool is_derivation(const RatMatrix& d, const LieAlg& l) {
  if (d.rows() != l.dim || d.cols() != l.dim)
    throw std::invalid_argument("is_derivation: shape mismatch");
  for (int i = 0; i < l.dim; ++i)
    for (int j = i + 1; j < l.dim; ++j) {
      RatVector lhs = mat_vec(d, l.bracket_basis(i, j));
      RatVector rhs =
          vec_add(l.bracket(column_of(d, i), unit_vector(l.dim, j)),
                  l.bracket(unit_vector(l.dim, i), column_of(d, j)));
      if (lhs != rhs) return false;
    }
  return true;
}

inline RatMatrix ad_matrix(const LieAlg& l, const RatVector& u) {
  RatMatrix m(l.dim, l.dim);
  for (int j = 0; j < l.dim; ++j) {
    RatVector col = l.bracket(u, unit_vector(l.dim, j));
    for (int i = 0; i < l.dim; ++i) m(i, j) = col[i];
  }
  return m;
}

inline LieAlg direct_sum_lie(const LieAlg& a, const LieAlg& b) {
  LieAlg l = LieAlg::abelian(a.dim + b.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const RatVector& v = a.bracket_basis(i, j);
      for (int k = 0; k < a.dim; ++k) l.bracket_basis(i, j)[k] = v[k];
    }
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j) {
      const RatVector& v = b.bracket_basis(i, j);
      for (int k = 0; k < b.dim; ++k)
        l.bracket_basis(a.dim + i, a.dim + j)[a.dim + k] = v[k];
    }
  return l;
}

// Structure induced on a subspace in its basis coordinates; rejects
// subspaces that are not closed under the bracket.
inline LieAlg subalgebra(const LieAlg& l, const Subspace& s) {
  if (s.ambient != l.dim) throw std::invalid_argument("subalgebra: ambient");
  LieAlg out = LieAlg::abelian(s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      RatVector br = l.bracket(column_of(s.basis, i), column_of(s.basis, j));
      auto coords = coords_in(s, br);
      if (!coords)
        throw std::invalid_argument("subalgebra: subspace not closed under "
                                    "the bracket");
      out.bracket_basis(i, j) = *coords;
    }
  return out;
}

// Transports the structure through an isomorphism old <- new given by the
// columns of iso (bracket_new = iso^{-1} [iso x, iso y]).
inline LieAlg transport_lie(const LieAlg& l, const RatMatrix& iso) {
  Subspace s{l.dim, iso};
  return subalgebra(l, s);
}

}  // namespace multsec
