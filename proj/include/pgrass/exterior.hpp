#pragma once
// Grade-k exterior algebra over F^N: colex subset indexing, Pluecker
// coordinates by minors of the canonical RREF basis, wedge products across
// grades, and an exact incremental span accumulator.

#include <algorithm>
#include <sstream>

#include "pgrass/matrix.hpp"

namespace pgrass {

inline std::int64_t binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Subsets of {1..N} carry 1-based, strictly increasing indices. The colex
// rank of {t_1 < ... < t_k} is sum_i C(t_i - 1, i); it does not depend on N.
inline std::int64_t subset_rank(const std::vector<int>& t) {
  std::int64_t r = 0;
  for (int i = 0; i < (int)t.size(); ++i) {
    if (t[i] < 1 || (i > 0 && t[i] <= t[i - 1]))
      throw std::invalid_argument("subset must be strictly increasing and 1-based");
    r += binom(t[i] - 1, i + 1);
  }
  return r;
}

inline std::vector<int> subset_unrank(std::int64_t r, int k) {
  if (r < 0) throw std::out_of_range("subset rank");
  std::vector<int> t(k);
  for (int i = k; i >= 1; --i) {
    int v = i;
    while (binom(v, i) <= r) ++v;  // largest v with C(v-1, i) <= r is v
    t[i - 1] = v;
    r -= binom(v - 1, i);
  }
  if (r != 0) throw std::out_of_range("subset rank");
  return t;
}

// Parity of the shuffle merging sorted a and sorted b: (-1)^{#{(x,y) in a*b : x > y}}.
inline int shuffle_sign(const std::vector<int>& a, const std::vector<int>& b) {
  int inv = 0;
  for (int x : a)
    for (int y : b)
      if (x > y) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

// A grade-k vector of the exterior algebra of F^N, with C(N,k) coordinates
// indexed by k-subsets in colex order. Grade 0 is the scalar line.
class WedgeVector {
 public:
  WedgeVector() = default;
  WedgeVector(const Field& F, int ambient, int grade)
      : field_(F), ambient_(ambient), grade_(grade), coords_(binom(ambient, grade), F.zero()) {
    if (grade < 0 || grade > ambient) throw std::invalid_argument("grade out of range");
  }

  static WedgeVector basis(const Field& F, int ambient, const std::vector<int>& subset) {
    WedgeVector w(F, ambient, (int)subset.size());
    w.coords_[subset_rank(subset)] = F.one();
    return w;
  }

  static WedgeVector scalar(const Field& F, int ambient, const Elt& c) {
    WedgeVector w(F, ambient, 0);
    w.coords_[0] = c;
    return w;
  }

  const Field& field() const { return field_; }
  int ambient() const { return ambient_; }
  int grade() const { return grade_; }
  std::int64_t size() const { return (std::int64_t)coords_.size(); }
  const std::vector<Elt>& coords() const { return coords_; }
  Elt& operator[](std::int64_t i) { return coords_[i]; }
  const Elt& operator[](std::int64_t i) const { return coords_[i]; }
  Elt at(const std::vector<int>& subset) const { return coords_[subset_rank(subset)]; }

  bool is_zero() const {
    for (const Elt& c : coords_)
      if (!field_.is_zero(c)) return false;
    return true;
  }

  WedgeVector add(const WedgeVector& o) const {
    check_compatible(o);
    WedgeVector r = *this;
    for (size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = field_.add(coords_[i], o.coords_[i]);
    return r;
  }

  WedgeVector sub(const WedgeVector& o) const {
    check_compatible(o);
    WedgeVector r = *this;
    for (size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = field_.sub(coords_[i], o.coords_[i]);
    return r;
  }

  WedgeVector scaled(const Elt& c) const {
    WedgeVector r = *this;
    for (Elt& x : r.coords_) x = field_.mul(x, c);
    return r;
  }

  friend bool operator==(const WedgeVector& a, const WedgeVector& b) {
    return a.ambient_ == b.ambient_ && a.grade_ == b.grade_ && a.field_ == b.field_ &&
           a.coords_ == b.coords_;
  }

  // Sparse text dump: grade, then "t1,..,tk:coeff" pairs in colex order.
  std::string dump() const {
    std::ostringstream os;
    os << grade_;
    for (std::int64_t i = 0; i < size(); ++i) {
      if (field_.is_zero(coords_[i])) continue;
      auto t = subset_unrank(i, grade_);
      os << ' ';
      for (int j = 0; j < grade_; ++j) os << (j ? "," : "") << t[j];
      if (grade_ == 0) os << "()";
      os << ':' << field_.str(coords_[i]);
    }
    return os.str();
  }

 private:
  void check_compatible(const WedgeVector& o) const {
    if (ambient_ != o.ambient_ || grade_ != o.grade_ || !(field_ == o.field_))
      throw std::invalid_argument("wedge vectors live in different spaces");
  }

  Field field_;
  int ambient_ = 0, grade_ = 0;
  std::vector<Elt> coords_;
};

// Bilinear wedge product. Coordinate at T is the signed sum over splittings
// T = T1 | T2 with |T1| = h of sign(shuffle) u[T1] w[T2].
inline WedgeVector wedge(const WedgeVector& u, const WedgeVector& w) {
  if (u.ambient() != w.ambient() || !(u.field() == w.field()))
    throw std::invalid_argument("wedge of vectors over different spaces");
  const Field& F = u.field();
  int h = u.grade(), k = w.grade(), N = u.ambient();
  if (h + k > N) throw std::invalid_argument("wedge grade overflow");
  WedgeVector out(F, N, h + k);
  for (std::int64_t iu = 0; iu < u.size(); ++iu) {
    if (F.is_zero(u[iu])) continue;
    auto a = subset_unrank(iu, h);
    for (std::int64_t iw = 0; iw < w.size(); ++iw) {
      if (F.is_zero(w[iw])) continue;
      auto b = subset_unrank(iw, k);
      bool disjoint = true;
      std::vector<int> t;
      t.reserve(h + k);
      std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(t));
      for (int i = 1; i < (int)t.size(); ++i)
        if (t[i] == t[i - 1]) { disjoint = false; break; }
      if (!disjoint) continue;
      Elt term = F.mul(u[iu], w[iw]);
      if (shuffle_sign(a, b) < 0) term = F.neg(term);
      std::int64_t it = subset_rank(t);
      out[it] = F.add(out[it], term);
    }
  }
  return out;
}

// Wedge of the rows of m, in row order: coordinate at T is the k x k minor
// on columns T. No canonicalization.
inline WedgeVector wedge_rows(const Matrix& m) {
  const Field& F = m.field();
  int k = m.rows(), N = m.cols();
  WedgeVector out(F, N, k);
  if (k == 0) return WedgeVector::scalar(F, N, F.one());
  for (std::int64_t i = 0; i < out.size(); ++i) {
    auto t = subset_unrank(i, k);
    std::vector<int> cols(k);
    for (int j = 0; j < k; ++j) cols[j] = t[j] - 1;
    out[i] = det(m.submatrix_cols(cols));
  }
  return out;
}

// Pluecker image of a subspace, computed from the canonical RREF basis so
// equal subspaces give identical coordinates.
inline WedgeVector plucker(const Subspace& s) {
  if (s.dim() == 0) throw std::invalid_argument("pluecker image of the zero subspace");
  return wedge_rows(s.basis());
}

// Factor the row wedge through the canonical subspace: wedge_rows(m) equals
// scale * plucker(S). scale is the minor of m on S's pivot columns.
inline std::pair<Subspace, Elt> plucker_of_rows(const Matrix& m) {
  Subspace s = Subspace::from_basis(m);
  std::vector<int> cols(s.pivots().begin(), s.pivots().end());
  Elt scale = det(m.submatrix_cols(cols));
  return {std::move(s), scale};
}

// Growable exact span of a set of grade-k wedge vectors, kept in reduced
// echelon form over the colex coordinate indexing. Inserting a vector that
// is already in the span leaves the state unchanged.
class SpanAccumulator {
 public:
  SpanAccumulator() = default;
  SpanAccumulator(const Field& F, int ambient, int grade)
      : field_(F), ambient_(ambient), grade_(grade), width_(binom(ambient, grade)) {}

  const Field& field() const { return field_; }
  int ambient() const { return ambient_; }
  int grade() const { return grade_; }
  std::int64_t dim() const { return (std::int64_t)rows_.size(); }
  std::int64_t full_dim() const { return width_; }
  bool saturated() const { return dim() == width_; }

  bool insert(const WedgeVector& v) {
    check(v);
    return insert_coords(v.coords());
  }

  bool insert_coords(std::vector<Elt> w) {
    reduce(w);
    std::int64_t piv = leading(w);
    if (piv < 0) return false;
    Elt inv = field_.inv(w[piv]);
    for (Elt& x : w) x = field_.mul(x, inv);
    // clear the new pivot column in the existing rows
    for (size_t i = 0; i < rows_.size(); ++i) {
      Elt f = rows_[i][piv];
      if (field_.is_zero(f)) continue;
      for (std::int64_t j = 0; j < width_; ++j)
        rows_[i][j] = field_.sub(rows_[i][j], field_.mul(f, w[j]));
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(w));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
  }

  bool contains(const WedgeVector& v) const {
    check(v);
    std::vector<Elt> w = v.coords();
    reduce(w);
    return leading(w) < 0;
  }

  // Associative merge, for combining per-worker partial spans.
  void merge(const SpanAccumulator& other) {
    if (other.ambient_ != ambient_ || other.grade_ != grade_ || !(other.field_ == field_))
      throw std::invalid_argument("accumulator mismatch");
    for (const auto& row : other.rows_) insert_coords(row);
  }

  // Reduced echelon bases are canonical, so span equality is row equality.
  friend bool span_equal(const SpanAccumulator& a, const SpanAccumulator& b) {
    return a.ambient_ == b.ambient_ && a.grade_ == b.grade_ && a.rows_ == b.rows_;
  }

  const std::vector<std::vector<Elt>>& rows() const { return rows_; }

  WedgeVector row_vector(size_t i) const {
    WedgeVector w(field_, ambient_, grade_);
    for (std::int64_t j = 0; j < width_; ++j) w[j] = rows_[i][j];
    return w;
  }

 private:
  void check(const WedgeVector& v) const {
    if (v.ambient() != ambient_ || v.grade() != grade_ || !(v.field() == field_))
      throw std::invalid_argument("accumulator/vector mismatch");
  }

  std::int64_t leading(const std::vector<Elt>& w) const {
    for (std::int64_t j = 0; j < width_; ++j)
      if (!field_.is_zero(w[j])) return j;
    return -1;
  }

  void reduce(std::vector<Elt>& w) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      Elt f = w[pivots_[i]];
      if (field_.is_zero(f)) continue;
      for (std::int64_t j = 0; j < width_; ++j)
        w[j] = field_.sub(w[j], field_.mul(f, rows_[i][j]));
    }
  }

  Field field_;
  int ambient_ = 0, grade_ = 0;
  std::int64_t width_ = 0;
  std::vector<std::vector<Elt>> rows_;   // reduced echelon, pivots increasing
  std::vector<std::int64_t> pivots_;
};

}  // namespace pgrass
