#pragma once
// Dense exact linear algebra: RREF, rank, kernel, solve, determinants, and
// canonical subspaces. A Subspace is identified with its reduced row-echelon
// basis, so equal subspaces compare equal as values.

#include <optional>

#include "pgrass/field.hpp"

namespace pgrass {

using Vec = std::vector<Elt>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& F, int rows, int cols)
      : field_(F), rows_(rows), cols_(cols), a_((size_t)rows * cols, F.zero()) {}

  static Matrix identity(const Field& F, int n) {
    Matrix m(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
  }

  static Matrix from_rows(const Field& F, const std::vector<Vec>& rows) {
    int r = (int)rows.size();
    int c = r ? (int)rows[0].size() : 0;
    Matrix m(F, r, c);
    for (int i = 0; i < r; ++i) {
      if ((int)rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Elt& at(int r, int c) { return a_[(size_t)r * cols_ + c]; }
  const Elt& at(int r, int c) const { return a_[(size_t)r * cols_ + c]; }

  Vec row(int r) const {
    Vec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
  }

  Matrix transposed() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix submatrix_cols(const std::vector<int>& cols) const {
    Matrix s(field_, rows_, (int)cols.size());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < (int)cols.size(); ++j) s.at(i, j) = at(i, cols[j]);
    return s;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.a_ == b.a_;
  }

 private:
  Field field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Elt> a_;
};

inline Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  const Field& F = a.field();
  Matrix c(F, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (F.is_zero(a.at(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j)
        c.at(i, j) = F.add(c.at(i, j), F.mul(a.at(i, k), b.at(k, j)));
    }
  return c;
}

inline Vec mul(const Matrix& m, const Vec& x) {
  if ((int)x.size() != m.cols()) throw std::invalid_argument("matrix/vector shape mismatch");
  const Field& F = m.field();
  Vec y(m.rows(), F.zero());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!F.is_zero(m.at(i, j))) y[i] = F.add(y[i], F.mul(m.at(i, j), x[j]));
  return y;
}

struct Rref {
  Matrix mat;
  std::vector<int> pivots;
  int rank = 0;
};

inline Rref rref(Matrix m) {
  const Field& F = m.field();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!F.is_zero(m.at(i, c))) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    Elt piv = F.inv(m.at(r, c));
    for (int j = 0; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), piv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || F.is_zero(m.at(i, c))) continue;
      Elt f = m.at(i, c);
      for (int j = 0; j < m.cols(); ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return Rref{std::move(m), std::move(pivots), r};
}

inline int rank(const Matrix& m) { return rref(m).rank; }

inline Elt det(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const Field& F = m.field();
  Matrix a = m;
  Elt d = F.one();
  int n = a.rows();
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int i = c; i < n; ++i)
      if (!F.is_zero(a.at(i, c))) { pr = i; break; }
    if (pr < 0) return F.zero();
    if (pr != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(pr, j), a.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, a.at(c, c));
    Elt inv = F.inv(a.at(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (F.is_zero(a.at(i, c))) continue;
      Elt f = F.mul(a.at(i, c), inv);
      for (int j = c; j < n; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(c, j)));
    }
  }
  return d;
}

// One solution of M x = b, if consistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if ((int)b.size() != m.rows()) throw std::invalid_argument("solve shape mismatch");
  const Field& F = m.field();
  Matrix aug(F, m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  Rref r = rref(aug);
  for (int i = 0; i < r.rank; ++i)
    if (r.pivots[i] == m.cols()) return std::nullopt;  // 0 = 1 row
  Vec x(m.cols(), F.zero());
  for (int i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.mat.at(i, m.cols());
  return x;
}

// Rows form a basis of the right kernel of m, in RREF.
inline Matrix kernel_basis(const Matrix& m) {
  const Field& F = m.field();
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> rows;
  for (int fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(m.cols(), F.zero());
    v[fc] = F.one();
    for (int i = 0; i < r.rank; ++i) v[r.pivots[i]] = F.neg(r.mat.at(i, fc));
    rows.push_back(std::move(v));
  }
  Matrix k = Matrix::from_rows(F, rows);
  if (k.rows() == 0) return Matrix(F, 0, m.cols());
  return rref(k).mat;
}

// A k-dimensional subspace of F^N held as its canonical RREF basis. Two
// Subspace values are equal iff they are the same subspace.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(const Field& F, int ambient) {
    Subspace s;
    s.basis_ = Matrix(F, 0, ambient);
    return s;
  }

  // Requires the rows to be independent.
  static Subspace from_basis(const Matrix& m) {
    Rref r = rref(m);
    if (r.rank != m.rows()) throw std::invalid_argument("rank-deficient basis");
    Subspace s;
    s.basis_ = std::move(r.mat);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  // Row space of an arbitrary matrix.
  static Subspace from_span(const Matrix& m) {
    Rref r = rref(m);
    Matrix b(m.field(), r.rank, m.cols());
    for (int i = 0; i < r.rank; ++i)
      for (int j = 0; j < m.cols(); ++j) b.at(i, j) = r.mat.at(i, j);
    Subspace s;
    s.basis_ = std::move(b);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  const Field& field() const { return basis_.field(); }
  int ambient() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const {
    const Field& F = field();
    Vec w = v;
    for (int i = 0; i < dim(); ++i) {
      Elt f = w[pivots_[i]];
      if (F.is_zero(f)) continue;
      for (int j = 0; j < ambient(); ++j) w[j] = F.sub(w[j], F.mul(f, basis_.at(i, j)));
    }
    for (const Elt& x : w)
      if (!F.is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  Subspace sum(const Subspace& other) const {
    std::vector<Vec> rows;
    for (int i = 0; i < dim(); ++i) rows.push_back(basis_.row(i));
    for (int i = 0; i < other.dim(); ++i) rows.push_back(other.basis_.row(i));
    Matrix m = rows.empty() ? Matrix(field(), 0, ambient()) : Matrix::from_rows(field(), rows);
    return from_span(m);
  }

  // v reduced modulo this subspace; zero iff contained.
  Vec reduce(Vec v) const {
    const Field& F = field();
    for (int i = 0; i < dim(); ++i) {
      Elt f = v[pivots_[i]];
      if (F.is_zero(f)) continue;
      for (int j = 0; j < ambient(); ++j) v[j] = F.sub(v[j], F.mul(f, basis_.at(i, j)));
    }
    return v;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  // Lexicographic on the canonical basis entries; a deterministic total
  // order used for sorted output.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.ambient(); ++j) {
        const Elt &x = a.basis_.at(i, j), &y = b.basis_.at(i, j);
        if (!(x == y)) return x < y;
      }
    return false;
  }

 private:
  Matrix basis_;
  std::vector<int> pivots_;
};

inline Subspace kernel(const Matrix& m) { return Subspace::from_span(kernel_basis(m)); }

// Key usable in ordered/unordered containers.
inline std::string subspace_key(const Subspace& s) {
  std::string k;
  k.reserve((size_t)s.dim() * s.ambient() * 3);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.ambient(); ++j) {
      k += s.field().str(s.basis().at(i, j));
      k += ',';
    }
  return k;
}

}  // namespace pgrass
