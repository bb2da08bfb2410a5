#pragma once

#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multsec/rational.hpp"

namespace multsec {

using RatVector = std::vector<Rat>;

// Dense row-major matrix over the rationals. Zero-row / zero-column shapes
// are legal everywhere; empty bundles show up constantly.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative shape");
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RatMatrix zero(int rows, int cols) { return RatMatrix(rows, cols); }

  // Rows separated by ';' or '|', entries by spaces or commas,
  // e.g. "1,0; -2/3,4".
  static RatMatrix parse(std::string text) {
    for (auto& ch : text)
      if (ch == '|') ch = ';';
    std::vector<std::vector<Rat>> rows;
    std::string row_text;
    std::stringstream ss(text);
    while (std::getline(ss, row_text, ';')) {
      for (auto& ch : row_text)
        if (ch == ',') ch = ' ';
      std::stringstream rs(row_text);
      std::vector<Rat> row;
      std::string tok;
      while (rs >> tok) row.push_back(rat_from_string(tok));
      rows.push_back(std::move(row));
    }
    RatMatrix m(static_cast<int>(rows.size()),
                rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols())
        throw std::invalid_argument("ragged matrix literal");
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[index(i, j)]; }
  const Rat& operator()(int i, int j) const { return a_[index(i, j)]; }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  RatMatrix operator+(const RatMatrix& o) const {
    check_same_shape(o);
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  RatMatrix operator-(const RatMatrix& o) const {
    check_same_shape(o);
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  RatMatrix operator-() const {
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
  }
  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in mul");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }
  friend RatMatrix operator*(const Rat& s, const RatMatrix& m) {
    RatMatrix r(m.rows_, m.cols_);
    for (size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = s * m.a_[k];
    return r;
  }

 private:
  size_t index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw std::out_of_range("matrix index");
    return static_cast<size_t>(i) * cols_ + j;
  }
  void check_same_shape(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("shape mismatch");
  }

  int rows_, cols_;
  std::vector<Rat> a_;
};

inline RatMatrix transpose(const RatMatrix& m) {
  RatMatrix r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

inline RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack shape");
  RatMatrix r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

inline RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack shape");
  RatMatrix r(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

// Block diagonal of two matrices.
inline RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

inline RatMatrix submatrix(const RatMatrix& m, int row0, int col0, int rows,
                           int cols) {
  RatMatrix r(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r(i, j) = m(row0 + i, col0 + j);
  return r;
}

inline RatMatrix column(const RatVector& v) {
  RatMatrix r(static_cast<int>(v.size()), 1);
  for (int i = 0; i < r.rows(); ++i) r(i, 0) = v[i];
  return r;
}

inline RatVector column_of(const RatMatrix& m, int j) {
  RatVector v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

inline RatVector mat_vec(const RatMatrix& m, const RatVector& v) {
  if (m.cols() != static_cast<int>(v.size()))
    throw std::invalid_argument("mat_vec shape");
  RatVector r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r[i] += m(i, j) * v[j];
  return r;
}

inline RatVector vec_add(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add shape");
  RatVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVector vec_sub(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub shape");
  RatVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVector vec_scale(const Rat& s, const RatVector& a) {
  RatVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline RatVector vec_neg(const RatVector& a) { return vec_scale(Rat(-1), a); }

inline bool vec_is_zero(const RatVector& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline RatVector vec_concat(const RatVector& a, const RatVector& b) {
  RatVector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline RatVector zero_vector(int n) { return RatVector(static_cast<size_t>(n)); }

inline RatVector unit_vector(int n, int i) {
  RatVector v(static_cast<size_t>(n));
  v[i] = 1;
  return v;
}

inline std::string vec_to_string(const RatVector& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += rat_to_string(v[i]);
  }
  return out + ")";
}

}  // namespace multsec
