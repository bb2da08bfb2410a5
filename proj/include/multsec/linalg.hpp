#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "multsec/matrix.hpp"

namespace multsec {

// Reduced row echelon form with the leftmost-pivot rule: scan columns left to
// right, take the first nonzero entry at or below the current row. Every
// basis choice in the library funnels through this, which is what makes
// outputs reproducible bit for bit.
struct Rref {
  RatMatrix r;
  std::vector<int> pivots;  // pivot column of each pivot row, increasing
};

inline Rref rref(RatMatrix a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    Rat inv = Rat(1) / a(row, col);
    for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

inline int rank(const RatMatrix& a) {
  return static_cast<int>(rref(a).pivots.size());
}

// A linear subspace of Q^ambient. The basis columns are kept in the canonical
// form produced by canonical_span / kernel_basis: each column's lowest
// nonzero entry is 1, those pivot rows are strictly increasing across
// columns, and each pivot row vanishes in every other column. The form is
// unique per subspace, so equality of subspaces is equality of bases.
struct Subspace {
  int ambient = 0;
  RatMatrix basis;  // ambient x dim

  int dim() const { return basis.cols(); }
};

// Canonical basis of the span of the columns of m.
inline Subspace canonical_span(const RatMatrix& m) {
  const int n = m.rows();
  // Row-reduce the transposed, row-reversed matrix; unflip the result.
  RatMatrix t(m.cols(), n);
  for (int k = 0; k < m.cols(); ++k)
    for (int i = 0; i < n; ++i) t(k, i) = m(n - 1 - i, k);
  Rref rr = rref(std::move(t));
  const int d = static_cast<int>(rr.pivots.size());
  RatMatrix basis(n, d);
  for (int j = 0; j < d; ++j) {
    int src_row = d - 1 - j;  // reorder so pivot rows increase downwards
    for (int i = 0; i < n; ++i) basis(n - 1 - i, j) = rr.r(src_row, i);
  }
  return {n, std::move(basis)};
}

// Canonical basis of {x : Ax = 0}, read off the RREF: one vector per free
// column f with x[f] = 1 and x[p_i] = -R(i, f) at the pivot columns. This is
// already in the canonical column form described on Subspace.
inline Subspace kernel_basis(const RatMatrix& a) {
  Rref rr = rref(a);
  const int n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  RatMatrix basis(n, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int f = free_cols[k];
    basis(f, static_cast<int>(k)) = 1;
    for (size_t i = 0; i < rr.pivots.size(); ++i)
      basis(rr.pivots[i], static_cast<int>(k)) = -rr.r(static_cast<int>(i), f);
  }
  return {n, std::move(basis)};
}

inline Subspace image_basis(const RatMatrix& a) { return canonical_span(a); }

inline Subspace full_space(int n) { return {n, RatMatrix::identity(n)}; }
inline Subspace zero_space(int n) { return {n, RatMatrix(n, 0)}; }

// Solves AX = B column by column; free variables are pinned to 0 (pivot
// rule). Returns nothing if any column is inconsistent.
inline std::optional<RatMatrix> solve_all(const RatMatrix& a,
                                          const RatMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape");
  Rref rr = rref(hstack(a, b));
  for (int p : rr.pivots)
    if (p >= a.cols()) return std::nullopt;
  RatMatrix x(a.cols(), b.cols());
  for (size_t i = 0; i < rr.pivots.size(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      x(rr.pivots[i], j) = rr.r(static_cast<int>(i), a.cols() + j);
  return x;
}

inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  auto x = solve_all(a, column(b));
  if (!x) return std::nullopt;
  return column_of(*x, 0);
}

inline bool contains(const Subspace& s, const RatVector& v) {
  if (static_cast<int>(v.size()) != s.ambient)
    throw std::invalid_argument("ambient mismatch");
  return solve(s.basis, v).has_value();
}

// Coordinates of v in the basis of s; nothing if v is outside s.
inline std::optional<RatVector> coords_in(const Subspace& s,
                                          const RatVector& v) {
  return solve(s.basis, v);
}

inline bool subspace_equal(const Subspace& a, const Subspace& b) {
  return a.ambient == b.ambient && a.basis == b.basis;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("ambient mismatch");
  return canonical_span(hstack(a.basis, b.basis));
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("ambient mismatch");
  Subspace k = kernel_basis(hstack(a.basis, -b.basis));
  RatMatrix coeffs(a.dim(), k.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < k.dim(); ++j) coeffs(i, j) = k.basis(i, j);
  return canonical_span(a.basis * coeffs);
}

// Quotient W/U presented by the pivot-column complement rule. `project` maps
// W-coordinates onto quotient coordinates; `representatives` are the W-basis
// columns at the non-pivot indices, one per quotient coordinate, so
// project . (W-coords of representatives[k]) = e_k.
struct QuotientData {
  RatMatrix representatives;  // ambient x (dim W - dim U)
  RatMatrix project;          // (dim W - dim U) x dim W
  std::vector<int> complement_indices;
};

inline QuotientData quotient_data(const Subspace& w, const Subspace& u) {
  if (w.ambient != u.ambient) throw std::invalid_argument("ambient mismatch");
  auto x = solve_all(w.basis, u.basis);
  if (!x) throw std::invalid_argument("quotient_data: U not contained in W");
  Subspace inner = canonical_span(*x);  // U in W-coordinates, canonical
  const int wd = w.dim(), ud = inner.dim();
  // Bottom pivot row of each canonical column.
  std::vector<bool> is_pivot(wd, false);
  for (int j = 0; j < ud; ++j) {
    int p = -1;
    for (int i = wd - 1; i >= 0; --i)
      if (inner.basis(i, j) != 0) {
        p = i;
        break;
      }
    is_pivot[p] = true;
  }
  std::vector<int> comp;
  for (int i = 0; i < wd; ++i)
    if (!is_pivot[i]) comp.push_back(i);
  const int qd = static_cast<int>(comp.size());
  // Reduce modulo the canonical U-columns, then read off the complement
  // coordinates.
  RatMatrix project(qd, wd);
  std::vector<int> pivot_rows;
  for (int i = 0; i < wd; ++i)
    if (is_pivot[i]) pivot_rows.push_back(i);
  for (int k = 0; k < qd; ++k) {
    project(k, comp[k]) = 1;
    for (int j = 0; j < ud; ++j)
      project(k, pivot_rows[j]) -= inner.basis(comp[k], j);
  }
  RatMatrix reps(w.ambient, qd);
  for (int k = 0; k < qd; ++k)
    for (int i = 0; i < w.ambient; ++i) reps(i, k) = w.basis(i, comp[k]);
  // project kills U exactly.
  if (!(project * inner.basis).is_zero())
    throw std::logic_error("quotient_data: projection does not kill U");
  return {std::move(reps), std::move(project), std::move(comp)};
}

}  // namespace multsec
