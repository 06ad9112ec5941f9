#pragma once
// Quotients of projective embeddings and liftings through them: validation
// of quotient pairs, the unique vector lift, lifting an induced subfield
// embedding to a new projective embedding over the subfield, the parabolic
// nucleus fixture, a search for codimension-1 quotient kernels, and the
// dimension bound evaluator for the lifted embeddings.

#include "pgrass/grassmannian.hpp"

namespace pgrass {

struct EmbeddedGeometry {
  Field field;
  int codomain_dim = 0;
  std::vector<int> points;              // abstract ids
  std::vector<std::vector<int>> lines;  // id sets
  std::map<int, Subspace> image;        // id -> 1-dim subspace of F^codomain_dim

  Vec rep(int p) const { return image.at(p).basis().row(0); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string why) {
    ok = false;
    violations.push_back(std::move(why));
  }
};

// (E1): each line's image set is a full line of PG(V); (E2): the images
// span the codomain.
inline ValidationReport validate_embedding(const EmbeddedGeometry& g) {
  ValidationReport rep;
  if (!g.field.finite()) {
    rep.fail("validation needs a finite field");
    return rep;
  }
  std::int64_t q = g.field.order();
  std::set<std::string> distinct;
  std::vector<Vec> all;
  for (int p : g.points) {
    auto it = g.image.find(p);
    if (it == g.image.end() || it->second.dim() != 1) {
      rep.fail("point " + std::to_string(p) + " has no 1-dimensional image");
      return rep;
    }
    if (!distinct.insert(subspace_key(it->second)).second)
      rep.fail("images are not injective at point " + std::to_string(p));
    all.push_back(g.rep(p));
  }
  Subspace span = Subspace::from_span(Matrix::from_rows(g.field, all));
  if (span.dim() != g.codomain_dim) rep.fail("(E2) images do not span the codomain");
  for (size_t li = 0; li < g.lines.size(); ++li) {
    const auto& line = g.lines[li];
    std::vector<Vec> reps;
    std::set<std::string> pts;
    for (int p : line) {
      reps.push_back(g.rep(p));
      pts.insert(subspace_key(g.image.at(p)));
    }
    Subspace ls = Subspace::from_span(Matrix::from_rows(g.field, reps));
    if (ls.dim() != 2 || (std::int64_t)pts.size() != q + 1)
      rep.fail("(E1) line " + std::to_string(li) + " is not a full projective line");
  }
  return rep;
}

struct QuotientPair {
  EmbeddedGeometry top;     // epsilon-tilde into V-tilde
  EmbeddedGeometry bottom;  // epsilon into V
  Matrix phi;               // linear, V-tilde -> V
};

// Surjectivity, projective agreement phi(eps-tilde) = eps on every point,
// and kernel avoidance of all points and secants.
inline ValidationReport validate_quotient(const QuotientPair& pair) {
  ValidationReport rep;
  const Field& F = pair.top.field;
  if (!(pair.bottom.field == F)) rep.fail("top and bottom live over different fields");
  if (pair.top.points != pair.bottom.points || pair.top.lines != pair.bottom.lines)
    rep.fail("top and bottom have different abstract geometries");
  if (pair.phi.rows() != pair.bottom.codomain_dim || pair.phi.cols() != pair.top.codomain_dim)
    rep.fail("phi has the wrong shape");
  if (!rep.ok) return rep;
  if (rank(pair.phi) != pair.bottom.codomain_dim) rep.fail("phi is not surjective");
  Matrix K = kernel_basis(pair.phi);
  Subspace ker = Subspace::from_span(K);
  for (int p : pair.top.points) {
    Vec vt = pair.top.rep(p);
    Vec v = mul(pair.phi, vt);
    bool zero = true;
    for (const Elt& x : v)
      if (!F.is_zero(x)) zero = false;
    if (zero) {
      rep.fail("point " + std::to_string(p) + " image lies in ker(phi)");
      continue;
    }
    Subspace img = Subspace::from_span(Matrix::from_rows(F, {v}));
    if (!(img == pair.bottom.image.at(p)))
      rep.fail("phi does not match the bottom embedding at point " + std::to_string(p));
  }
  // secant avoidance, checked exhaustively over all point pairs
  for (size_t a = 0; a < pair.top.points.size(); ++a)
    for (size_t b = a + 1; b < pair.top.points.size(); ++b) {
      std::vector<Vec> rows = {pair.top.rep(pair.top.points[a]), pair.top.rep(pair.top.points[b])};
      for (int i = 0; i < ker.dim(); ++i) rows.push_back(ker.basis().row(i));
      if (rank(Matrix::from_rows(F, rows)) != 2 + ker.dim()) {
        rep.fail("ker(phi) meets the secant of points " + std::to_string(pair.top.points[a]) +
                 "," + std::to_string(pair.top.points[b]));
        return rep;
      }
    }
  ValidationReport te = validate_embedding(pair.top);
  ValidationReport be = validate_embedding(pair.bottom);
  for (auto& v : te.violations) rep.fail("top: " + v);
  for (auto& v : be.violations) rep.fail("bottom: " + v);
  return rep;
}

// The unique vector of eps-tilde(p) mapping to v under phi.
inline Vec lift_vector(const QuotientPair& pair, int p, const Vec& v) {
  const Field& F = pair.top.field;
  if (!pair.bottom.image.at(p).contains(v)) throw std::invalid_argument("v is not in eps(p)");
  bool zero = true;
  for (const Elt& x : v)
    if (!F.is_zero(x)) zero = false;
  if (zero) throw std::invalid_argument("v must be nonzero");
  Vec wt = pair.top.rep(p);
  Vec pw = mul(pair.phi, wt);
  Elt t = F.zero();
  for (size_t i = 0; i < v.size(); ++i)
    if (!F.is_zero(v[i])) {
      t = F.div(pw[i], v[i]);
      break;
    }
  if (F.is_zero(t)) throw std::invalid_argument("phi kills the top image: invalid pair");
  for (size_t i = 0; i < v.size(); ++i)
    if (!(pw[i] == F.mul(t, v[i])))
      throw std::invalid_argument("phi(top rep) is not proportional to v");
  Elt ti = F.inv(t);
  Vec out(wt.size());
  for (size_t i = 0; i < wt.size(); ++i) out[i] = F.mul(ti, wt[i]);
  return out;
}

struct LiftedEmbedding {
  Field field;     // F, the big field
  Field subfield;  // F0
  int g = 1;       // |F : F0|
  std::vector<int> points;
  std::map<int, Vec> lifting;  // canonical-representative lifts, in F^{dim V-tilde}
  std::int64_t dim_over_subfield = 0;
  bool lines_ok = false;  // (E1) over F0, checked line by line
};

namespace detail {

inline bool in_subfield(const Field& F, int e0, const Elt& x) {
  std::int64_t q0 = 1;
  for (int i = 0; i < e0; ++i) q0 *= F.p;
  return F.pow(x, q0) == x;
}

}  // namespace detail

// Lifts the canonical subfield-rational representative of every chosen
// point through phi and spans the result over F0. The images of the chosen
// lines must close up into full F0-lines, which is the projectivity of the
// lifted embedding.
inline LiftedEmbedding lift_embedding(const QuotientPair& pair, const Field& F0,
                                      const std::vector<int>& pts0,
                                      const std::vector<std::vector<int>>& lines0) {
  const Field& F = pair.top.field;
  if (!F.finite() || !F0.finite() || F0.p != F.p || F.e % F0.e != 0)
    throw std::invalid_argument("F0 must be a subfield of the pair's field");
  const int e0 = F0.e;
  LiftedEmbedding out;
  out.field = F;
  out.subfield = F0;
  out.g = F.e / e0;
  out.points = pts0;
  for (int p : pts0) {
    Vec v0 = pair.bottom.rep(p);  // canonical: leading coefficient 1
    for (const Elt& x : v0)
      if (!detail::in_subfield(F, e0, x))
        throw std::invalid_argument("point " + std::to_string(p) +
                                    " has no subfield-rational canonical coordinates");
    out.lifting[p] = lift_vector(pair, p, v0);
  }
  // F0-dimension of the span: run a GF(p)-echelon over the digit expansion
  // of every F0-multiple of every lifting; the F0-dimension is the GF(p)
  // rank divided by e0.
  Field Fp = Field::gf(F.p, 1);
  std::vector<Elt> f0_basis;
  {
    SpanAccumulator dig_acc(Fp, F.e, 1);
    for (std::int64_t i = 0; i < F.order() && (int)f0_basis.size() < e0; ++i) {
      Elt x = F.element(i);
      if (F.is_zero(x) || !detail::in_subfield(F, e0, x)) continue;
      auto dig = F.digits(x.num);
      dig.resize(F.e, 0);
      std::vector<Elt> row;
      for (auto c : dig) row.push_back(Fp.from_int(c));
      if (dig_acc.insert_coords(std::move(row))) f0_basis.push_back(x);
    }
    if ((int)f0_basis.size() != e0) throw std::logic_error("subfield basis extraction failed");
  }
  const int M = pair.top.codomain_dim;
  SpanAccumulator acc(Fp, F.e * M, 1);
  for (auto& [p, lv] : out.lifting) {
    for (const Elt& c : f0_basis) {
      std::vector<Elt> row;
      row.reserve((size_t)F.e * M);
      for (int j = 0; j < M; ++j) {
        Elt y = F.mul(c, lv[j]);
        auto dig = F.digits(y.num);
        dig.resize(F.e, 0);
        for (int t = 0; t < F.e; ++t) row.push_back(Fp.from_int(dig[t]));
      }
      acc.insert_coords(std::move(row));
    }
  }
  if (acc.dim() % e0 != 0) throw std::logic_error("span is not F0-stable");
  out.dim_over_subfield = acc.dim() / e0;
  // (E1): on every chosen line, each lifting is an F0-combination of the
  // liftings of two chosen base points.
  out.lines_ok = true;
  std::int64_t q0 = 1;
  for (int i = 0; i < e0; ++i) q0 *= F.p;
  for (const auto& line : lines0) {
    if ((std::int64_t)line.size() != q0 + 1) {
      out.lines_ok = false;
      continue;
    }
    const Vec& s = out.lifting.at(line[0]);
    const Vec& t = out.lifting.at(line[1]);
    for (size_t r = 2; r < line.size(); ++r) {
      const Vec& rv = out.lifting.at(line[r]);
      Matrix sys(F, M, 2);
      for (int j = 0; j < M; ++j) {
        sys.at(j, 0) = s[j];
        sys.at(j, 1) = t[j];
      }
      auto sol = solve(sys, rv);
      if (!sol || !detail::in_subfield(F, e0, (*sol)[0]) || !detail::in_subfield(F, e0, (*sol)[1])) {
        out.lines_ok = false;
        break;
      }
    }
  }
  return out;
}

// Natural embedding of the parabolic polar space in 2n+1 coordinates over a
// char-2 field, quotiented by its nucleus onto the symplectic embedding.
inline QuotientPair nucleus_fixture(int n, const Field& F) {
  if (F.characteristic() != 2) throw std::invalid_argument("nucleus fixture needs characteristic 2");
  if (n < 2) throw std::invalid_argument("nucleus fixture needs n >= 2");
  Form f = build_quadratic_even(F, n, 0, 1, 0);
  const int M = 2 * n + 1;
  QuotientPair pair;
  pair.top.field = F;
  pair.top.codomain_dim = M;
  pair.bottom.field = F;
  pair.bottom.codomain_dim = M - 1;
  std::map<std::string, int> id_of;
  std::vector<Subspace> pts = enumerate_points(f, 1);
  for (size_t i = 0; i < pts.size(); ++i) {
    int id = (int)i;
    pair.top.points.push_back(id);
    pair.bottom.points.push_back(id);
    id_of[subspace_key(pts[i])] = id;
    pair.top.image[id] = pts[i];
  }
  for (const Subspace& line : enumerate_points(f, 2)) {
    std::vector<int> ids;
    for (const Vec& v : projective_points(line))
      ids.push_back(id_of.at(subspace_key(Subspace::from_span(Matrix::from_rows(F, {v})))));
    std::sort(ids.begin(), ids.end());
    pair.top.lines.push_back(ids);
    pair.bottom.lines.push_back(std::move(ids));
  }
  pair.phi = Matrix(F, M - 1, M);
  for (int i = 0; i < M - 1; ++i) pair.phi.at(i, i) = F.one();
  for (int id : pair.top.points) {
    Vec v = mul(pair.phi, pair.top.rep(id));
    pair.bottom.image[id] = Subspace::from_span(Matrix::from_rows(F, {v}));
  }
  return pair;
}

// Exhaustive search for a 1-dimensional kernel avoiding every point image
// and every secant; builds the quotient pair through the coordinate
// projection when one exists.
inline std::optional<QuotientPair> find_quotient_kernel(const EmbeddedGeometry& emb) {
  const Field& F = emb.field;
  const int M = emb.codomain_dim;
  std::vector<Subspace> secants;
  for (size_t a = 0; a < emb.points.size(); ++a)
    for (size_t b = a + 1; b < emb.points.size(); ++b)
      secants.push_back(Subspace::from_span(
          Matrix::from_rows(F, {emb.rep(emb.points[a]), emb.rep(emb.points[b])})));
  std::set<std::string> point_keys;
  for (int p : emb.points) point_keys.insert(subspace_key(emb.image.at(p)));
  Subspace full = Subspace::from_basis(Matrix::identity(F, M));
  for (const Vec& w : projective_points(full)) {
    Subspace K = Subspace::from_span(Matrix::from_rows(F, {w}));
    if (point_keys.count(subspace_key(K))) continue;
    bool clean = true;
    for (const Subspace& s : secants)
      if (s.contains(w)) { clean = false; break; }
    if (!clean) continue;
    // project from K through the pivot coordinate
    int pv = K.pivots()[0];
    QuotientPair pair;
    pair.top = emb;
    pair.bottom.field = F;
    pair.bottom.codomain_dim = M - 1;
    pair.bottom.points = emb.points;
    pair.bottom.lines = emb.lines;
    pair.phi = Matrix(F, M - 1, M);
    int r = 0;
    for (int j = 0; j < M; ++j) {
      if (j == pv) continue;
      pair.phi.at(r, j) = F.one();
      pair.phi.at(r, pv) = F.neg(w[j]);
      ++r;
    }
    for (int p : emb.points) {
      Vec v = mul(pair.phi, emb.rep(p));
      pair.bottom.image[p] = Subspace::from_span(Matrix::from_rows(F, {v}));
    }
    return pair;
  }
  return std::nullopt;
}

// Dimension window for the lifted embedding over a degree-g extension:
// C(N,k) - C(N,k-2) <= dim <= C(N,k) + C(N,k-2) (g-1).
inline std::pair<std::int64_t, std::int64_t> weyl_like_bounds(int N, int k, int g) {
  if (g < 1 || k < 1) throw std::invalid_argument("need g >= 1 and k >= 1");
  return {binom(N, k) - binom(N, k - 2), binom(N, k) + binom(N, k - 2) * (std::int64_t)(g - 1)};
}

}  // namespace pgrass
