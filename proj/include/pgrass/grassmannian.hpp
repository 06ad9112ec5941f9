#pragma once
// Points and lines of the polar k-Grassmannian of a form, the exact span of
// its Grassmann embedding image, the radical-decomposition check, and the
// characteristic-2 span comparison against the polarized symplectic image.

#include <functional>
#include <ostream>

#include "pgrass/forms.hpp"

namespace pgrass {

// Points of the polar k-Grassmannian are totally singular k-subspaces,
// represented throughout by their canonical Subspace values.

enum class LineRegime { Pencil, Top };

struct PolarLine {
  LineRegime regime;
  Subspace X;                 // dim k-1, totally singular
  std::optional<Subspace> Y;  // dim k+1, pencil regime only
  std::vector<Subspace> members;
};

namespace detail {

// First point of w (in the global order) that is not in z.
inline const Vec* min_point_outside(const std::vector<Vec>& sorted_pts, const Subspace& z) {
  for (const Vec& v : sorted_pts)
    if (!z.contains(v)) return &v;
  return nullptr;
}

// Canonical generation chain: starting from 0, repeatedly adjoin the least
// point not yet covered. Every subspace is produced along exactly one chain,
// which makes the DFS emit each totally singular subspace exactly once.
inline bool chain_passes_through(const std::vector<Vec>& sorted_pts, const Field& F,
                                 const Subspace& u, const Vec& v_norm) {
  Subspace z = Subspace::zero(F, u.ambient());
  for (int step = 0; step < u.dim(); ++step) {
    const Vec* m = min_point_outside(sorted_pts, z);
    if (m == nullptr) return false;
    if (!u.contains(*m)) return false;
    std::vector<Vec> rows;
    for (int i = 0; i < z.dim(); ++i) rows.push_back(z.basis().row(i));
    rows.push_back(*m);
    z = Subspace::from_span(Matrix::from_rows(F, rows));
  }
  if (!(z == u)) return false;
  const Vec* m = min_point_outside(sorted_pts, u);
  return m != nullptr && *m == v_norm;
}

inline Vec normalize_point(const Field& F, Vec v) {
  for (const Elt& x : v) {
    if (F.is_zero(x)) continue;
    Elt inv = F.inv(x);
    for (Elt& y : v) y = F.mul(y, inv);
    break;
  }
  return v;
}

// True iff v is the least point of (u + <v>) \ u. The points of that coset
// are exactly the normalizations of v + w for w in u, so this rejects all
// but one extension vector per candidate subspace without building the
// subspace at all.
inline bool is_min_coset_point(const Field& F, const Subspace& u, const Vec& v) {
  std::int64_t q = F.order();
  int j = u.dim();
  std::int64_t total = 1;
  for (int i = 0; i < j; ++i) total *= q;
  for (std::int64_t code = 1; code < total; ++code) {
    Vec w = v;
    std::int64_t c = code;
    for (int i = 0; i < j; ++i) {
      Elt coef = F.element(c % q);
      c /= q;
      if (F.is_zero(coef)) continue;
      for (int t = 0; t < u.ambient(); ++t)
        w[t] = F.add(w[t], F.mul(coef, u.basis().at(i, t)));
    }
    if (normalize_point(F, std::move(w)) < v) return false;
  }
  return true;
}

inline bool dfs_points(const Form& f, int k, const Subspace& u,
                       const std::function<bool(const Subspace&)>& emit) {
  if (u.dim() == k) return emit(u);
  Subspace up = perp(f, u);
  for (const Vec& v : singular_points(f, up)) {
    if (u.contains(v)) continue;
    if (!is_min_coset_point(f.field, u, v)) continue;
    std::vector<Vec> rows;
    for (int i = 0; i < u.dim(); ++i) rows.push_back(u.basis().row(i));
    rows.push_back(v);
    Subspace w = Subspace::from_span(Matrix::from_rows(f.field, rows));
    std::vector<Vec> wpts = projective_points(w);
    if (!chain_passes_through(wpts, f.field, u, v)) continue;
    if (!dfs_points(f, k, w, emit)) return false;
  }
  return true;
}

}  // namespace detail

// Orderly depth-first enumeration: every totally singular k-subspace is
// visited exactly once, in a deterministic order. The callback returns
// false to stop early.
inline void for_each_point(const Form& f, int k, const std::function<bool(const Subspace&)>& emit) {
  detail::require_finite(f.field, "point enumeration");
  if (k < 1 || k > f.params.witt_index())
    throw std::invalid_argument("k out of range 1..n+d");
  detail::dfs_points(f, k, Subspace::zero(f.field, f.ambient()), emit);
}

inline std::vector<Subspace> enumerate_points(const Form& f, int k) {
  std::vector<Subspace> out;
  for_each_point(f, k, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// All k-subspaces of F^N, by direct enumeration of reduced row-echelon
// matrices (pivot set in colex order, then free entries by code). This is
// the naive oracle the orderly enumerator is checked against.
inline void for_each_rref(const Field& F, int k, int N,
                          const std::function<void(const Subspace&)>& emit) {
  detail::require_finite(F, "subspace enumeration");
  std::int64_t q = F.order();
  for (std::int64_t pr = 0; pr < binom(N, k); ++pr) {
    std::vector<int> piv = subset_unrank(pr, k);  // 1-based columns
    std::vector<bool> is_piv(N + 1, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> free_pos;  // (row, col) 0-based
    for (int i = 0; i < k; ++i)
      for (int c = piv[i] + 1; c <= N; ++c)
        if (!is_piv[c]) free_pos.push_back({i, c - 1});
    std::int64_t total = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) total *= q;
    for (std::int64_t code = 0; code < total; ++code) {
      Matrix m(F, k, N);
      for (int i = 0; i < k; ++i) m.at(i, piv[i] - 1) = F.one();
      std::int64_t c = code;
      for (auto [r, col] : free_pos) {
        m.at(r, col) = F.element(c % q);
        c /= q;
      }
      emit(Subspace::from_basis(m));
    }
  }
}

inline std::vector<Subspace> filter_all_subspaces_oracle(const Form& f, int k) {
  std::vector<Subspace> out;
  for_each_rref(f.field, k, f.ambient(), [&](const Subspace& s) {
    if (is_totally_singular(f, s)) out.push_back(s);
  });
  return out;
}

// Lines of the polar k-Grassmannian. Pencil regime (k < n+d): one line per
// pair X < Y with Y totally singular of dimension k+1; top regime
// (k = n+d): one line per totally singular X of dimension n+d-1.
inline std::vector<PolarLine> enumerate_lines(const Form& f, int k) {
  detail::require_finite(f.field, "line enumeration");
  int top = f.params.witt_index();
  if (k < 1 || k > top) throw std::invalid_argument("k out of range 1..n+d");
  std::vector<PolarLine> lines;
  if (k < top) {
    for (const Subspace& y : enumerate_points(f, k + 1)) {
      // (k-1)-subspaces of y via RREF matrices in y-coordinates
      std::vector<Subspace> xs;
      for_each_rref(f.field, k - 1, k + 1, [&](const Subspace& inner) {
        if (k - 1 == 0) {
          xs.push_back(Subspace::zero(f.field, f.ambient()));
          return;
        }
        Matrix rows = mul(inner.basis(), y.basis());
        xs.push_back(Subspace::from_span(rows));
      });
      if (k - 1 == 0 && !xs.empty()) xs.resize(1);
      for (const Subspace& x : xs) {
        PolarLine ln{LineRegime::Pencil, x, y, {}};
        std::set<std::string> seen;
        for (const Vec& v : projective_points(y)) {
          if (x.contains(v)) continue;
          std::vector<Vec> rows;
          for (int i = 0; i < x.dim(); ++i) rows.push_back(x.basis().row(i));
          rows.push_back(v);
          Subspace z = Subspace::from_span(Matrix::from_rows(f.field, rows));
          if (seen.insert(subspace_key(z)).second) ln.members.push_back(std::move(z));
        }
        std::sort(ln.members.begin(), ln.members.end());
        lines.push_back(std::move(ln));
      }
    }
  } else {
    for (const Subspace& x : enumerate_points(f, top - 1)) {
      PolarLine ln{LineRegime::Top, x, std::nullopt, {}};
      Subspace xp = perp(f, x);
      std::set<std::string> seen;
      for (const Vec& v : singular_points(f, xp)) {
        if (x.contains(v)) continue;
        std::vector<Vec> rows;
        for (int i = 0; i < x.dim(); ++i) rows.push_back(x.basis().row(i));
        rows.push_back(v);
        Subspace y = Subspace::from_span(Matrix::from_rows(f.field, rows));
        if (!is_totally_singular(f, y)) continue;
        if (f.quadratic() && !xp.contains(y)) continue;
        if (seen.insert(subspace_key(y)).second) ln.members.push_back(std::move(y));
      }
      std::sort(ln.members.begin(), ln.members.end());
      if (!ln.members.empty()) lines.push_back(std::move(ln));
    }
  }
  return lines;
}

struct EmbeddingSpan {
  std::int64_t dim = 0;
  std::int64_t points = 0;
  SpanAccumulator acc;
};

// dim <e_k(P_k)> by streaming Pluecker images into a span accumulator.
// Full enumeration by default; with fast=true the stream stops as soon as
// the span reaches `target` (or the whole wedge space).
inline EmbeddingSpan embedding_span(const Form& f, int k, bool fast = false,
                                    std::int64_t target = -1) {
  EmbeddingSpan out;
  out.acc = SpanAccumulator(f.field, f.ambient(), k);
  for_each_point(f, k, [&](const Subspace& s) {
    ++out.points;
    out.acc.insert(plucker(s));
    if (fast && (out.acc.saturated() || (target >= 0 && out.acc.dim() >= target))) return false;
    return true;
  });
  out.dim = out.acc.dim();
  return out;
}

// One canonical RREF basis per line, row-major, entries in the field's text
// encoding.
inline void stream_points(const Form& f, int k, std::ostream& os) {
  for_each_point(f, k, [&](const Subspace& s) {
    for (int i = 0; i < s.dim(); ++i)
      for (int j = 0; j < s.ambient(); ++j) {
        if (i + j) os << ' ';
        os << f.field.str(s.basis().at(i, j));
      }
    os << '\n';
    return true;
  });
}

// Reduced form of the same kind on the first N-d coordinates.
inline Form nondegenerate_reduction(const Form& f) {
  const auto& p = f.params;
  switch (f.kind) {
    case FormKind::Hermitian: return build_hermitian(f.field, p.n, p.d0, 0, f.kappa);
    case FormKind::Alternating: return build_alternating(f.field, p.n, 0);
    case FormKind::Quadratic:
      if (f.even_char())
        return build_quadratic_even(f.field, p.n, p.m, p.dp0, 0, f.lambda, f.mu, f.kappa);
      return build_quadratic_odd(f.field, p.n, p.d0, 0, f.kappa);
    default: throw std::invalid_argument("no reduction for this kind");
  }
}

inline WedgeVector embed_wedge(const WedgeVector& w, int ambient) {
  // Subsets of {1..M} occupy the first C(M, k) colex ranks of {1..ambient}.
  WedgeVector out(w.field(), ambient, w.grade());
  for (std::int64_t i = 0; i < w.size(); ++i) out[i] = w[i];
  return out;
}

struct DecompositionTerm {
  int i = 0;
  std::int64_t reduced_dim = 0;  // dim <P-bar_{k-i}>
  std::int64_t radical_choose = 0;
};

struct DecompositionReport {
  int k = 0;
  std::int64_t dim_full = 0;
  std::int64_t dim_sum = 0;
  bool subspace_equal = false;
  bool dim_identity = false;
  std::vector<DecompositionTerm> terms;
  bool ok() const { return subspace_equal && dim_identity; }
};

// Verifies <P_k> = (+)_i <P-bar_{k-i}> wedge Lambda^i R as subspaces, with
// i running over max(0, k-n)..min(d, k), plus the dimension identity.
inline DecompositionReport decomposition_verify(const Form& f, int k) {
  const auto& p = f.params;
  if (p.d == 0) throw std::invalid_argument("form is non-degenerate; nothing to verify");
  detail::require_finite(f.field, "decomposition_verify");
  if (k < 1 || k > p.witt_index()) throw std::invalid_argument("k out of range 1..n+d");
  DecompositionReport rep;
  rep.k = k;
  Form fbar = nondegenerate_reduction(f);
  int Nbar = fbar.ambient();
  EmbeddingSpan full = embedding_span(f, k);
  rep.dim_full = full.dim;
  SpanAccumulator sum(f.field, f.ambient(), k);
  std::int64_t expect = 0;
  for (int i = std::max(0, k - p.n); i <= std::min(p.d, k); ++i) {
    std::vector<WedgeVector> reduced_rows;
    if (k - i == 0) {
      reduced_rows.push_back(WedgeVector::scalar(f.field, f.ambient(), f.field.one()));
    } else {
      EmbeddingSpan red = embedding_span(fbar, k - i);
      for (size_t r = 0; r < (size_t)red.dim; ++r)
        reduced_rows.push_back(embed_wedge(red.acc.row_vector(r), f.ambient()));
    }
    DecompositionTerm term;
    term.i = i;
    term.reduced_dim = (std::int64_t)reduced_rows.size();
    term.radical_choose = binom(p.d, i);
    expect += term.reduced_dim * term.radical_choose;
    // wedge every reduced basis row with every i-subset of the radical block
    for (std::int64_t dr = 0; dr < binom(p.d, i); ++dr) {
      std::vector<int> dsub = subset_unrank(dr, i);
      for (int& c : dsub) c += Nbar;  // shift into the radical coordinates
      WedgeVector ed = WedgeVector::basis(f.field, f.ambient(), dsub);
      for (const WedgeVector& w : reduced_rows) sum.insert(wedge(w, ed));
    }
    rep.terms.push_back(term);
  }
  rep.dim_sum = sum.dim();
  rep.subspace_equal = span_equal(full.acc, sum);
  rep.dim_identity = rep.dim_full == expect && rep.dim_sum == expect;
  return rep;
}

enum class SpanRelation { Equal, StrictSubset };

struct SpanCompareReport {
  SpanRelation relation = SpanRelation::Equal;
  std::int64_t dim_quadric = 0;
  std::int64_t dim_symplectic = 0;
};

// <Q_k> versus <S_k(f_q)> for a characteristic-2 quadratic form.
inline SpanCompareReport span_compare(const Form& f, int k) {
  if (f.kind != FormKind::Quadratic || !f.even_char())
    throw std::invalid_argument("span_compare needs a char-2 quadratic form");
  if (k > f.params.n) throw std::invalid_argument("span_compare needs k <= n");
  Form fq = polarize(f);
  EmbeddingSpan qs = embedding_span(f, k);
  EmbeddingSpan ss = embedding_span(fq, k);
  SpanCompareReport rep;
  rep.dim_quadric = qs.dim;
  rep.dim_symplectic = ss.dim;
  rep.relation = span_equal(qs.acc, ss.acc) ? SpanRelation::Equal : SpanRelation::StrictSubset;
  if (rep.relation == SpanRelation::StrictSubset) {
    for (size_t i = 0; i < (size_t)qs.dim; ++i)
      if (!ss.acc.contains(qs.acc.row_vector(i)))
        throw std::logic_error("quadric span is not inside the symplectic span");
  }
  return rep;
}

}  // namespace pgrass
