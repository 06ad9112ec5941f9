#pragma once
// Closed-form dimension predictions for Grassmann embeddings of polar
// Grassmannians, the symplectic generating set E_k(s), and executable
// spanning certificates: explicit exact linear combinations of Pluecker
// images of totally singular subspaces equal to a target wedge vector,
// built by replaying the constructive proofs step by step.

#include "pgrass/grassmannian.hpp"

namespace pgrass {

// Main dimension formulas. For k <= n: C(N,k) for Hermitian and odd
// quadratic kinds, C(N,k) - C(N,k-2) for alternating and even quadratic.
// For n < k <= n+d the defect-corrected sums apply; C(m,h) = 0 outside
// 0 <= h <= m throughout.
inline std::int64_t predicted_dim(FormKind kind, bool even_char, int N, int k, int n, int d) {
  if (kind == FormKind::SymmetricBilinear)
    throw std::invalid_argument("no prediction for plain symmetric kinds");
  if (n < 1 || d < 0 || N < 2 * n + d) throw std::invalid_argument("inconsistent parameters");
  if (k < 1 || k > n + d) throw std::invalid_argument("k out of range 1..n+d");
  bool reduced = kind == FormKind::Alternating || (kind == FormKind::Quadratic && even_char);
  if (k <= n)
    return reduced ? binom(N, k) - binom(N, k - 2) : binom(N, k);
  std::int64_t s1 = 0, s2 = 0;
  for (int i = 0; i <= k - n - 1; ++i) {
    s1 += binom(N - d, k - i) * binom(d, i);
    s2 += binom(N - d, k - i - 2) * binom(d, i);
  }
  if (!reduced) return binom(N, k) - s1;
  return binom(N, k) - binom(N, k - 2) - s1 + s2;
}

inline std::int64_t predicted_dim(const Form& f, int k) {
  return predicted_dim(f.kind, f.even_char(), f.params.N, k, f.params.n, f.params.d);
}

// sum_i C(N-d, k-i) C(d, i) = C(N, k).
inline bool vandermonde_check(int N, int d, int k) {
  if (d < 0 || d > N) throw std::invalid_argument("need 0 <= d <= N");
  std::int64_t s = 0;
  for (int i = 0; i <= d; ++i) s += binom(N - d, k - i) * binom(d, i);
  return s == binom(N, k);
}

// Descriptor (A, B, C, D) of a symplectic generating vector: A, B index
// odd/even halves of hyperbolic pairs, C is a set of disjoint pairs with
// i_1 < i_2 < ... and i_r < j_r, D indexes radical coordinates. All parts
// pairwise disjoint with total weight k.
struct GenDescriptor {
  std::vector<int> A, B;
  std::vector<std::pair<int, int>> C;
  std::vector<int> D;

  int weight() const { return (int)(A.size() + B.size() + 2 * C.size() + D.size()); }

  std::vector<int> cbar() const {
    std::vector<int> out;
    for (auto [i, j] : C) {
      out.push_back(i);
      out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

// e_{A,B,C,D} = e_A^+ ^ e_B^- ^ u_C ^ e_D with u_{i,j} = e_{2i-1}^e_{2i} - e_{2j-1}^e_{2j}.
inline WedgeVector descriptor_vector(const Field& F, int N, const GenDescriptor& g) {
  WedgeVector w = WedgeVector::scalar(F, N, F.one());
  std::vector<int> ap;
  for (int i : g.A) ap.push_back(2 * i - 1);
  if (!ap.empty()) w = wedge(w, WedgeVector::basis(F, N, ap));
  std::vector<int> bm;
  for (int i : g.B) bm.push_back(2 * i);
  if (!bm.empty()) w = wedge(w, WedgeVector::basis(F, N, bm));
  for (auto [i, j] : g.C) {
    WedgeVector u = WedgeVector::basis(F, N, {2 * i - 1, 2 * i})
                        .sub(WedgeVector::basis(F, N, {2 * j - 1, 2 * j}));
    w = wedge(w, u);
  }
  if (!g.D.empty()) w = wedge(w, WedgeVector::basis(F, N, g.D));
  return w;
}

namespace detail {

inline void gen_pairs(const std::vector<int>& avail, int h,
                      std::vector<std::pair<int, int>>& cur,
                      const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  if (h == 0) {
    emit(cur);
    return;
  }
  if ((int)avail.size() < 2 * h) return;
  // the least participating index opens the next pair
  for (size_t a = 0; a + 1 < avail.size(); ++a) {
    if ((int)(avail.size() - a) < 2 * h) break;
    for (size_t b = a + 1; b < avail.size(); ++b) {
      cur.push_back({avail[a], avail[b]});
      std::vector<int> rest;
      for (size_t t = a + 1; t < avail.size(); ++t)
        if (t != b) rest.push_back(avail[t]);
      gen_pairs(rest, h - 1, cur, emit);
      cur.pop_back();
    }
  }
}

}  // namespace detail

// Every admissible descriptor for n hyperbolic pairs and a d-dimensional
// radical, paired with its wedge vector. Deterministic order.
inline std::vector<std::pair<GenDescriptor, WedgeVector>> symplectic_genset(const Field& F, int n,
                                                                            int d, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("genset needs 1 <= k <= n");
  int N = 2 * n + d;
  std::vector<std::pair<GenDescriptor, WedgeVector>> out;
  std::int64_t assigns = 1;
  for (int i = 0; i < n; ++i) assigns *= 3;
  for (std::int64_t code = 0; code < assigns; ++code) {
    GenDescriptor g;
    std::vector<int> rest;
    std::int64_t c = code;
    for (int i = 1; i <= n; ++i) {
      int tag = (int)(c % 3);
      c /= 3;
      if (tag == 1) g.A.push_back(i);
      else if (tag == 2) g.B.push_back(i);
      else rest.push_back(i);
    }
    int base = (int)(g.A.size() + g.B.size());
    if (base > k) continue;
    for (int h = 0; 2 * h + base <= k; ++h) {
      int rd = k - base - 2 * h;
      if (rd > d) continue;
      std::vector<std::pair<int, int>> cur;
      detail::gen_pairs(rest, h, cur, [&](const std::vector<std::pair<int, int>>& C) {
        for (std::int64_t dr = 0; dr < binom(d, rd); ++dr) {
          GenDescriptor full = g;
          full.C = C;
          for (int idx : subset_unrank(dr, rd)) full.D.push_back(idx + 2 * n);
          out.push_back({full, descriptor_vector(F, N, full)});
        }
      });
    }
  }
  return out;
}

struct GensetReport {
  bool spans = false;
  std::int64_t cardinality = 0;
  std::int64_t span_dim = 0;
  std::int64_t embedding_dim = 0;
  std::int64_t predicted = 0;
  bool cardinality_equals_dim = false;
};

// span(E_k(s)) versus the enumerated embedding span, as subspaces.
inline GensetReport verify_genset(const Form& f, int k) {
  if (f.kind != FormKind::Alternating)
    throw std::invalid_argument("generating set is defined for alternating forms");
  auto gens = symplectic_genset(f.field, f.params.n, f.params.d, k);
  SpanAccumulator acc(f.field, f.ambient(), k);
  for (auto& [g, w] : gens) acc.insert(w);
  EmbeddingSpan full = embedding_span(f, k);
  GensetReport rep;
  rep.cardinality = (std::int64_t)gens.size();
  rep.span_dim = acc.dim();
  rep.embedding_dim = full.dim;
  rep.spans = span_equal(acc, full.acc);
  rep.predicted = predicted_dim(f, k);
  rep.cardinality_equals_dim = rep.cardinality == rep.span_dim;
  return rep;
}

// --- spanning certificates --------------------------------------------------

struct TraceNode {
  std::string label;
  std::vector<TraceNode> children;
};

struct CertTerm {
  Elt coeff;
  Subspace generator;
};

struct Certificate {
  Form form;
  int k = 0;
  WedgeVector target;
  std::vector<CertTerm> terms;
  TraceNode trace;
};

struct VerifyResult {
  bool ok = true;
  std::string message;
};

// Re-evaluates sum coeff * plucker(generator) and checks exact equality
// with the target, plus total singularity of every generator.
inline VerifyResult verify_certificate(const Certificate& c) {
  const Field& F = c.form.field;
  for (size_t t = 0; t < c.terms.size(); ++t) {
    const Subspace& g = c.terms[t].generator;
    if (g.dim() != c.k) return {false, "generator " + std::to_string(t) + " has wrong dimension"};
    if (!is_totally_singular(c.form, g))
      return {false, "generator " + std::to_string(t) + " is not totally singular"};
  }
  WedgeVector sum(F, c.form.ambient(), c.k);
  for (const CertTerm& t : c.terms) sum = sum.add(plucker(t.generator).scaled(t.coeff));
  if (!(sum == c.target)) {
    WedgeVector diff = sum.sub(c.target);
    return {false, "sum differs from target: " + diff.dump()};
  }
  return {true, ""};
}

namespace certdetail {

struct RawTerm {
  Elt coeff;
  std::vector<Vec> rows;
};

struct RawComb {
  std::vector<RawTerm> terms;
  TraceNode trace;
};

inline RawComb scalar_comb(const Field& F, const std::string& label) {
  return RawComb{{RawTerm{F.one(), {}}}, TraceNode{label, {}}};
}

inline RawComb combine(const Field& F, const RawComb& a, const RawComb& b) {
  RawComb out;
  out.trace = TraceNode{"orthogonal-combine", {a.trace, b.trace}};
  for (const RawTerm& ta : a.terms)
    for (const RawTerm& tb : b.terms) {
      RawTerm t;
      t.coeff = F.mul(ta.coeff, tb.coeff);
      t.rows = ta.rows;
      t.rows.insert(t.rows.end(), tb.rows.begin(), tb.rows.end());
      out.terms.push_back(std::move(t));
    }
  return out;
}

inline void accumulate(const Field& F, RawComb& into, const RawComb& part, const Elt& scale) {
  for (const RawTerm& t : part.terms) {
    if (F.is_zero(F.mul(t.coeff, scale))) continue;
    into.terms.push_back(RawTerm{F.mul(t.coeff, scale), t.rows});
  }
  into.trace.children.push_back(part.trace);
}

inline Vec unit(const Field& F, int N, int idx1) {
  Vec v(N, F.zero());
  v[idx1 - 1] = F.one();
  return v;
}

inline Certificate finalize(const Form& f, int k, WedgeVector target, RawComb comb) {
  const Field& F = f.field;
  Certificate c;
  c.form = f;
  c.k = k;
  c.target = std::move(target);
  c.trace = std::move(comb.trace);
  std::map<std::string, size_t> index;
  std::vector<CertTerm> terms;
  for (RawTerm& t : comb.terms) {
    auto [sub, scale] = plucker_of_rows(Matrix::from_rows(F, t.rows));
    Elt coeff = F.mul(t.coeff, scale);
    std::string key = subspace_key(sub);
    auto it = index.find(key);
    if (it == index.end()) {
      index[key] = terms.size();
      terms.push_back(CertTerm{coeff, std::move(sub)});
    } else {
      terms[it->second].coeff = F.add(terms[it->second].coeff, coeff);
    }
  }
  for (CertTerm& t : terms)
    if (!F.is_zero(t.coeff)) c.terms.push_back(std::move(t));
  return c;
}

// Shared recursion context for the Hermitian and odd-quadratic proofs:
// hyperbolic pairs 1..n, anisotropic coordinates 2n+1..2n+d0.
struct PairPool {
  int n = 0;
  std::vector<bool> used;  // 1-based pair indices

  explicit PairPool(int n_) : n(n_), used(n_ + 1, false) {}

  // least unused pair disjoint from the index set J
  int take_free(const std::vector<int>& J) {
    for (int i = 1; i <= n; ++i) {
      if (used[i]) continue;
      bool touched = false;
      for (int j : J)
        if (j == 2 * i - 1 || j == 2 * i) { touched = true; break; }
      if (!touched) {
        used[i] = true;
        return i;
      }
    }
    throw std::logic_error("no free hyperbolic pair left (is k <= n?)");
  }

  void take(int i) { used[i] = true; }
};

inline std::vector<int> without(const std::vector<int>& J, std::initializer_list<int> drop) {
  std::vector<int> out;
  for (int j : J) {
    bool d = false;
    for (int x : drop)
      if (x == j) d = true;
    if (!d) out.push_back(j);
  }
  return out;
}

// Target e_J over the non-degenerate part of a Hermitian form.
inline RawComb hermitian_core(const Form& f, std::vector<int> J, PairPool& pool) {
  const Field& F = f.field;
  const int N = f.ambient(), n = f.params.n;
  if (J.empty()) return scalar_comb(F, "empty");
  int j = J.back();
  if (j > 2 * n) {
    // anisotropic index: e_j = u - e_{2i-1} - t e_{2i} with Tr(t) = -kappa_j
    Elt kap = f.kappa[j - 2 * n - 1];
    int i = pool.take_free(J);
    Elt t = F.trace_preimage(F.neg(kap));
    Vec u = unit(F, N, 2 * i - 1);
    u[2 * i - 1] = t;  // coordinate 2i, 0-based index 2i-1
    u[j - 1] = F.one();
    RawComb local;
    local.trace = TraceNode{"trace-zero-extension", {}};
    local.terms.push_back(RawTerm{F.one(), {u}});
    local.terms.push_back(RawTerm{F.neg(F.one()), {unit(F, N, 2 * i - 1)}});
    local.terms.push_back(RawTerm{F.neg(t), {unit(F, N, 2 * i)}});
    RawComb rest = hermitian_core(f, without(J, {j}), pool);
    return combine(F, rest, local);
  }
  int j0 = J.front();
  int i0 = (j0 + 1) / 2;
  bool partner = (j0 % 2 == 1) && J.size() > 1 && J[1] == j0 + 1;
  if (!partner) {
    pool.take(i0);
    RawComb local;
    local.trace = TraceNode{"coordinate-point", {}};
    local.terms.push_back(RawTerm{F.one(), {unit(F, N, j0)}});
    RawComb rest = hermitian_core(f, without(J, {j0}), pool);
    return combine(F, local, rest);
  }
  // whole hyperbolic pair: difference of two singular planes plus wedge
  // corrections, with alpha beta^{-1} outside the fixed field
  pool.take(i0);
  int i1 = pool.take_free(without(J, {j0, j0 + 1}));
  Elt alpha = F.zero(), beta = F.zero();
  bool found = false;
  for (std::int64_t a = 1; a < F.order() && !found; ++a)
    for (std::int64_t b = 1; b < F.order() && !found; ++b) {
      Elt ea = F.element(a), eb = F.element(b);
      if (!F.in_fixed_field(F.mul(ea, F.inv(eb)))) {
        alpha = ea;
        beta = eb;
        found = true;
      }
    }
  if (!found) throw std::logic_error("field equals its fixed field");
  auto u1 = [&](const Elt& x) {
    Vec v(N, F.zero());
    v[2 * i0 - 2] = x;
    v[2 * i1 - 2] = F.one();
    return v;
  };
  auto u2 = [&](const Elt& x) {
    Vec v(N, F.zero());
    v[2 * i0 - 1] = F.neg(F.inv(F.conj(x)));
    v[2 * i1 - 1] = F.one();
    return v;
  };
  auto pw = [&](const Elt& x) { return F.mul(x, F.inv(F.conj(x))); };  // x^{1-sigma}
  Elt c = F.sub(pw(alpha), pw(beta));
  if (F.is_zero(c)) throw std::logic_error("alpha^{1-sigma} = beta^{1-sigma}");
  Elt ci = F.inv(c);
  RawComb local;
  local.trace = TraceNode{"hyperbolic-pair-difference", {}};
  local.terms.push_back(RawTerm{ci, {u1(beta), u2(beta)}});
  local.terms.push_back(RawTerm{F.neg(ci), {u1(alpha), u2(alpha)}});
  Elt w1 = F.mul(F.neg(ci), F.sub(beta, alpha));
  Elt w2 = F.mul(F.neg(ci), F.sub(F.inv(F.conj(beta)), F.inv(F.conj(alpha))));
  if (!F.is_zero(w1))
    local.terms.push_back(RawTerm{w1, {unit(F, N, 2 * i0 - 1), unit(F, N, 2 * i1)}});
  if (!F.is_zero(w2))
    local.terms.push_back(RawTerm{w2, {unit(F, N, 2 * i0), unit(F, N, 2 * i1 - 1)}});
  RawComb rest = hermitian_core(f, without(J, {j0, j0 + 1}), pool);
  return combine(F, local, rest);
}

// Target e_J over the non-degenerate part of an odd-characteristic
// quadratic form.
inline RawComb quadratic_odd_core(const Form& f, std::vector<int> J, PairPool& pool) {
  const Field& F = f.field;
  const int N = f.ambient(), n = f.params.n;
  if (J.empty()) return scalar_comb(F, "empty");
  Elt half = F.inv(F.from_int(2));
  int j = J.back();
  if (j > 2 * n) {
    // e_j = (v1 - v2)/2 with v_{1,2} = e_{2i-1} - kappa_j e_{2i} +- e_j
    Elt kap = f.kappa[j - 2 * n - 1];
    int i = pool.take_free(J);
    Vec v1(N, F.zero()), v2(N, F.zero());
    v1[2 * i - 2] = F.one();
    v1[2 * i - 1] = F.neg(kap);
    v1[j - 1] = F.one();
    v2 = v1;
    v2[j - 1] = F.neg(F.one());
    RawComb local;
    local.trace = TraceNode{"anisotropic-midpoint", {}};
    local.terms.push_back(RawTerm{half, {v1}});
    local.terms.push_back(RawTerm{F.neg(half), {v2}});
    RawComb rest = quadratic_odd_core(f, without(J, {j}), pool);
    return combine(F, rest, local);
  }
  int j0 = J.front();
  int x = (j0 + 1) / 2;
  bool partner = (j0 % 2 == 1) && J.size() > 1 && J[1] == j0 + 1;
  if (!partner) {
    pool.take(x);
    RawComb local;
    local.trace = TraceNode{"coordinate-point", {}};
    local.terms.push_back(RawTerm{F.one(), {unit(F, N, j0)}});
    RawComb rest = quadratic_odd_core(f, without(J, {j0}), pool);
    return combine(F, local, rest);
  }
  // e_{2x-1}^e_{2x} = (u1^u2 + u3^u4 - w - w') / 2
  pool.take(x);
  int h = pool.take_free(without(J, {j0, j0 + 1}));
  auto mk = [&](int a, const Elt& ca, int b, const Elt& cb) {
    Vec v(N, F.zero());
    v[a - 1] = ca;
    v[b - 1] = cb;
    return v;
  };
  Elt one = F.one(), neg = F.neg(F.one());
  Vec su1 = mk(2 * x - 1, one, 2 * h - 1, neg);
  Vec su2 = mk(2 * x, one, 2 * h, one);
  Vec su3 = mk(2 * x - 1, one, 2 * h, neg);
  Vec su4 = mk(2 * x, one, 2 * h - 1, one);
  RawComb local;
  local.trace = TraceNode{"quadric-pair-sum", {}};
  local.terms.push_back(RawTerm{half, {su1, su2}});
  local.terms.push_back(RawTerm{half, {su3, su4}});
  local.terms.push_back(RawTerm{F.neg(half), {unit(F, N, 2 * x - 1), unit(F, N, 2 * h)}});
  local.terms.push_back(RawTerm{half, {unit(F, N, 2 * h - 1), unit(F, N, 2 * x)}});
  local.terms.push_back(RawTerm{F.neg(half), {unit(F, N, 2 * x - 1), unit(F, N, 2 * h - 1)}});
  local.terms.push_back(RawTerm{half, {unit(F, N, 2 * h), unit(F, N, 2 * x)}});
  RawComb rest = quadratic_odd_core(f, without(J, {j0, j0 + 1}), pool);
  return combine(F, local, rest);
}

inline void split_radical(const Form& f, const std::vector<int>& J, std::vector<int>& core,
                          std::vector<int>& rad) {
  int first_rad = f.ambient() - f.params.d + 1;
  for (int j : J)
    (j >= first_rad ? rad : core).push_back(j);
}

inline RawComb radical_factor(const Field& F, int N, const std::vector<int>& rad) {
  RawComb local;
  local.trace = TraceNode{"radical-factor", {}};
  RawTerm t;
  t.coeff = F.one();
  for (int j : rad) t.rows.push_back(unit(F, N, j));
  local.terms.push_back(std::move(t));
  return local;
}

}  // namespace certdetail

// Certificate with target e_J for a Hermitian form, J a k-subset of the
// coordinates, k <= n. Works over any field carrying the involution.
inline Certificate certificate_hermitian(const Form& f, int k, const std::vector<int>& J) {
  if (f.kind != FormKind::Hermitian) throw std::invalid_argument("hermitian form required");
  if ((int)J.size() != k || k < 1 || k > f.params.n)
    throw std::invalid_argument("need |J| = k and 1 <= k <= n");
  std::vector<int> Js = J;
  std::sort(Js.begin(), Js.end());
  std::vector<int> core, rad;
  certdetail::split_radical(f, Js, core, rad);
  certdetail::PairPool pool(f.params.n);
  certdetail::RawComb comb = certdetail::hermitian_core(f, core, pool);
  if (!rad.empty())
    comb = certdetail::combine(f.field, comb, certdetail::radical_factor(f.field, f.ambient(), rad));
  return certdetail::finalize(f, k, WedgeVector::basis(f.field, f.ambient(), Js), std::move(comb));
}

// Certificate with target e_J for an odd-characteristic quadratic form
// (finite field or rationals), k <= n.
inline Certificate certificate_quadratic_odd(const Form& f, int k, const std::vector<int>& J) {
  if (f.kind != FormKind::Quadratic || f.even_char())
    throw std::invalid_argument("odd-characteristic quadratic form required");
  if ((int)J.size() != k || k < 1 || k > f.params.n)
    throw std::invalid_argument("need |J| = k and 1 <= k <= n");
  std::vector<int> Js = J;
  std::sort(Js.begin(), Js.end());
  std::vector<int> core, rad;
  certdetail::split_radical(f, Js, core, rad);
  certdetail::PairPool pool(f.params.n);
  certdetail::RawComb comb = certdetail::quadratic_odd_core(f, core, pool);
  if (!rad.empty())
    comb = certdetail::combine(f.field, comb, certdetail::radical_factor(f.field, f.ambient(), rad));
  return certdetail::finalize(f, k, WedgeVector::basis(f.field, f.ambient(), Js), std::move(comb));
}

namespace certdetail {

// Context for the characteristic-2 certificates. q-pairs are the n
// hyperbolic pairs of q itself; pairs n+1..n+m are the binary anisotropic
// blocks, hyperbolic only for the polarized form.
struct EvenCtx {
  const Form& f;
  int n, m, N;
  std::set<int> pool;  // auxiliary q-pairs still available

  const Field& F() const { return f.field; }

  int take(std::initializer_list<int> avoid = {}) {
    for (int i : pool) {
      bool bad = false;
      for (int a : avoid)
        if (a == i) bad = true;
      if (!bad) {
        pool.erase(i);
        return i;
      }
    }
    throw std::logic_error("even-characteristic certificate ran out of free pairs");
  }
};

RawComb even_core(EvenCtx& ctx, const GenDescriptor& desc);

// u_{i,h} for q-hyperbolic pairs i, h: solve the little ruled-quadric system
// over the six coordinate-rational singular planes. The solved coefficients
// lie in the prime field and stay valid over every extension.
inline RawComb even_base_pair(EvenCtx& ctx, int i, int h) {
  const Field& F = ctx.F();
  const int N = ctx.N;
  std::vector<std::vector<Vec>> planes = {
      {unit(F, N, 2 * i - 1), unit(F, N, 2 * h - 1)},
      {unit(F, N, 2 * i - 1), unit(F, N, 2 * h)},
      {unit(F, N, 2 * i), unit(F, N, 2 * h - 1)},
      {unit(F, N, 2 * i), unit(F, N, 2 * h)},
      {},
      {}};
  Vec a = unit(F, N, 2 * i - 1), b = unit(F, N, 2 * i);
  a[2 * h - 2] = F.one();  // e_{2i-1} + e_{2h-1}
  b[2 * h - 1] = F.one();  // e_{2i} + e_{2h}
  planes[4] = {a, b};
  Vec c = unit(F, N, 2 * i - 1), d = unit(F, N, 2 * i);
  c[2 * h - 1] = F.one();  // e_{2i-1} + e_{2h}
  d[2 * h - 2] = F.one();  // e_{2i} + e_{2h-1}
  planes[5] = {c, d};
  WedgeVector target = WedgeVector::basis(F, N, {2 * i - 1, 2 * i})
                           .add(WedgeVector::basis(F, N, {2 * h - 1, 2 * h}));
  Matrix sys(F, (int)binom(N, 2), 6);
  for (int t = 0; t < 6; ++t) {
    WedgeVector p = wedge_rows(Matrix::from_rows(F, planes[t]));
    for (std::int64_t r = 0; r < p.size(); ++r) sys.at((int)r, t) = p[r];
  }
  auto sol = solve(sys, target.coords());
  if (!sol) throw std::logic_error("ruled-quadric system inconsistent");
  RawComb out;
  out.trace = TraceNode{"ruled-quadric-solve", {}};
  for (int t = 0; t < 6; ++t)
    if (!F.is_zero((*sol)[t])) out.terms.push_back(RawTerm{(*sol)[t], planes[t]});
  return out;
}

// Exhaustive exact fallback on the six coordinates of pairs {x, lo, hi}:
// enumerate the singular planes supported there and solve for u_{lo,hi}.
// Needed only over GF(2) when a single free pair remains.
inline RawComb even_local_solve(EvenCtx& ctx, int x, int lo, int hi) {
  const Field& F = ctx.F();
  const int N = ctx.N;
  std::vector<int> coords = {2 * x - 1, 2 * x, 2 * lo - 1, 2 * lo, 2 * hi - 1, 2 * hi};
  std::vector<std::vector<Vec>> gens;
  for_each_rref(F, 2, 6, [&](const Subspace& inner) {
    std::vector<Vec> rows;
    for (int r = 0; r < 2; ++r) {
      Vec v(N, F.zero());
      for (int cidx = 0; cidx < 6; ++cidx) v[coords[cidx] - 1] = inner.basis().at(r, cidx);
      rows.push_back(std::move(v));
    }
    Subspace s = Subspace::from_span(Matrix::from_rows(F, rows));
    if (is_totally_singular(ctx.f, s)) gens.push_back(rows);
  });
  WedgeVector target = WedgeVector::basis(F, N, {2 * lo - 1, 2 * lo})
                           .add(WedgeVector::basis(F, N, {2 * hi - 1, 2 * hi}));
  Matrix sys(F, (int)binom(N, 2), (int)gens.size());
  for (size_t t = 0; t < gens.size(); ++t) {
    WedgeVector p = wedge_rows(Matrix::from_rows(F, gens[t]));
    for (std::int64_t r = 0; r < p.size(); ++r) sys.at((int)r, (int)t) = p[r];
  }
  auto sol = solve(sys, target.coords());
  if (!sol) throw std::logic_error("local quadric system inconsistent");
  RawComb out;
  out.trace = TraceNode{"local-quadric-solve", {}};
  for (size_t t = 0; t < gens.size(); ++t)
    if (!F.is_zero((*sol)[t])) out.terms.push_back(RawTerm{(*sol)[t], gens[t]});
  return out;
}

// Decompose a grade-2 correction w into basis wedges and certify each one
// recursively inside the allotted pair set.
inline RawComb certify_correction(EvenCtx& ctx, const WedgeVector& w, std::set<int> local_pairs) {
  const Field& F = ctx.F();
  RawComb out;
  out.trace = TraceNode{"correction-terms", {}};
  for (std::int64_t r = 0; r < w.size(); ++r) {
    if (F.is_zero(w[r])) continue;
    auto t = subset_unrank(r, 2);
    int pa = (t[0] + 1) / 2, pb = (t[1] + 1) / 2;
    if (pa == pb) throw std::logic_error("correction has a diagonal pair component");
    GenDescriptor g;
    for (int idx : t)
      (idx % 2 == 1 ? g.A : g.B).push_back((idx + 1) / 2);
    EvenCtx sub{ctx.f, ctx.n, ctx.m, ctx.N, {}};
    for (int pp : local_pairs)
      if (pp != pa && pp != pb) sub.pool.insert(pp);
    accumulate(F, out, even_core(sub, g), w[r]);
  }
  return out;
}

// u_{lo,hi} with hi in the binary anisotropic range, via the two-singular-
// vector constructions; the correction terms recurse on smaller targets.
inline RawComb even_mixed_pair(EvenCtx& ctx, int lo, int hi, bool allow_long) {
  const Field& F = ctx.F();
  const int N = ctx.N, n = ctx.n;
  auto qof = [&](int coord1) {
    Vec v = unit(F, N, coord1);
    return evaluate(ctx.f, v);
  };
  WedgeVector target = WedgeVector::basis(F, N, {2 * lo - 1, 2 * lo})
                           .add(WedgeVector::basis(F, N, {2 * hi - 1, 2 * hi}));
  bool lo_hyperbolic = lo <= n;
  if (allow_long && ctx.pool.size() >= 2) {
    int x = ctx.take({lo, hi});
    int y = ctx.take({lo, hi, x});
    Elt alpha = F.add(qof(2 * lo - 1), qof(2 * hi - 1));
    Elt beta = F.add(qof(2 * lo), qof(2 * hi));
    Vec su1 = unit(F, N, 2 * x - 1);
    su1[2 * x - 1] = alpha;
    su1[2 * lo - 2] = F.one();
    su1[2 * hi - 2] = F.one();
    Vec su2 = unit(F, N, 2 * y - 1);
    su2[2 * y - 1] = beta;
    su2[2 * lo - 1] = F.one();
    su2[2 * hi - 1] = F.one();
    RawComb out;
    out.trace = TraceNode{"mixed-pair-long", {}};
    out.terms.push_back(RawTerm{F.one(), {su1, su2}});
    WedgeVector w = wedge_rows(Matrix::from_rows(F, {su1, su2})).sub(target);
    accumulate(F, out, certify_correction(ctx, w, {x, y, lo <= n ? lo : x}), F.one());
    return out;
  }
  if (!lo_hyperbolic) throw std::logic_error("binary-block pair needs two free q-pairs");
  if (F.order() > 2) {
    // single-free-pair construction; needs alpha outside {0,1}
    int x = ctx.take({lo, hi});
    Elt lam = qof(2 * hi - 1), muv = qof(2 * hi);
    Elt alpha = F.element(2);
    Elt beta = F.div(lam, alpha);
    Elt alphap = F.add(alpha, F.one());
    Elt betap = F.div(muv, alphap);
    Vec su1(N, F.zero());
    su1[2 * x - 2] = alpha;
    su1[2 * x - 1] = beta;
    su1[2 * lo - 2] = F.one();
    su1[2 * hi - 2] = F.one();
    Vec su2(N, F.zero());
    su2[2 * x - 1] = F.one();
    su2[2 * lo - 1] = alphap;
    su2[2 * lo - 2] = betap;
    su2[2 * hi - 1] = F.one();
    RawComb out;
    out.trace = TraceNode{"mixed-pair-short", {}};
    out.terms.push_back(RawTerm{F.one(), {su1, su2}});
    // u1^u2 = alpha (x-diag) + (alpha+1)(lo-diag) + (hi-diag) + w
    WedgeVector diag = WedgeVector::basis(F, N, {2 * x - 1, 2 * x}).scaled(alpha);
    diag = diag.add(WedgeVector::basis(F, N, {2 * lo - 1, 2 * lo}).scaled(alphap));
    diag = diag.add(WedgeVector::basis(F, N, {2 * hi - 1, 2 * hi}));
    WedgeVector w = wedge_rows(Matrix::from_rows(F, {su1, su2})).sub(diag);
    accumulate(F, out, certify_correction(ctx, w, {x, lo}), F.one());
    accumulate(F, out, even_base_pair(ctx, x, lo), alpha);
    return out;
  }
  int x = ctx.take({lo, hi});
  return even_local_solve(ctx, x, lo, hi);
}

inline RawComb even_core(EvenCtx& ctx, const GenDescriptor& desc) {
  const Field& F = ctx.F();
  const int N = ctx.N, n = ctx.n;
  // descriptor-touched q-pairs are occupied, not auxiliary
  for (int i : desc.A)
    if (i <= n) ctx.pool.erase(i);
  for (int i : desc.B)
    if (i <= n) ctx.pool.erase(i);
  for (auto [i, j] : desc.C) {
    if (i <= n) ctx.pool.erase(i);
    if (j <= n) ctx.pool.erase(j);
  }
  // remaining minimal demand, used to decide when the two-pair construction
  // is affordable
  auto min_cost = [&](std::pair<int, int> c) { return (c.first > n && c.second > n) ? 2 : 1; };
  int demand = 0;
  for (auto c : desc.C)
    if (c.second > n || c.first > n) demand += min_cost(c);
  for (int i : desc.A)
    if (i > n) demand += 1;
  for (int i : desc.B)
    if (i > n) demand += 1;
  demand += (int)desc.D.size();  // kappa coordinates (radical handled by caller)

  RawComb acc = scalar_comb(F, "start");
  acc.trace = TraceNode{"product", {}};

  auto attach = [&](RawComb part) { acc = combine(F, acc, part); };

  for (int i : desc.A) {
    if (i > n) continue;
    RawComb pt;
    pt.trace = TraceNode{"coordinate-point", {}};
    pt.terms.push_back(RawTerm{F.one(), {unit(F, N, 2 * i - 1)}});
    attach(std::move(pt));
  }
  for (int i : desc.B) {
    if (i > n) continue;
    RawComb pt;
    pt.trace = TraceNode{"coordinate-point", {}};
    pt.terms.push_back(RawTerm{F.one(), {unit(F, N, 2 * i)}});
    attach(std::move(pt));
  }
  for (auto [i, j] : desc.C) {
    if (j <= n) {
      attach(even_base_pair(ctx, i, j));
      continue;
    }
    int cost = min_cost({i, j});
    demand -= cost;
    bool allow_long = (int)ctx.pool.size() >= demand + 2 && cost == 1;
    if (cost == 2) allow_long = true;
    int lo = std::min(i, j), hi = std::max(i, j);
    attach(even_mixed_pair(ctx, lo, hi, allow_long));
  }
  auto shift = [&](int i, bool odd_half) {
    demand -= 1;
    int jfree = ctx.take({i});
    Elt coef = odd_half ? evaluate(ctx.f, unit(F, N, 2 * i - 1)) : evaluate(ctx.f, unit(F, N, 2 * i));
    int tgt = odd_half ? 2 * i - 1 : 2 * i;
    Vec v = unit(F, N, 2 * jfree - 1);
    v[2 * jfree - 1] = coef;
    v[tgt - 1] = F.one();
    RawComb local;
    local.trace = TraceNode{"binary-block-shift", {}};
    local.terms.push_back(RawTerm{F.one(), {v}});
    local.terms.push_back(RawTerm{F.one(), {unit(F, N, 2 * jfree - 1)}});
    local.terms.push_back(RawTerm{coef, {unit(F, N, 2 * jfree)}});
    attach(std::move(local));
  };
  for (int i : desc.A)
    if (i > n) shift(i, true);
  for (int i : desc.B)
    if (i > n) shift(i, false);
  for (int j : desc.D) {
    demand -= 1;
    Elt kap = evaluate(ctx.f, unit(F, N, j));
    int i = ctx.take({});
    Vec u = unit(F, N, 2 * i - 1);
    u[2 * i - 1] = kap;
    u[j - 1] = F.one();
    RawComb local;
    local.trace = TraceNode{"diagonal-block-shift", {}};
    local.terms.push_back(RawTerm{F.one(), {u}});
    local.terms.push_back(RawTerm{F.one(), {unit(F, N, 2 * i - 1)}});
    local.terms.push_back(RawTerm{kap, {unit(F, N, 2 * i)}});
    attach(std::move(local));
  }
  return acc;
}

}  // namespace certdetail

// Certificate expressing the symplectic generator e_{A,B,C,D} of the
// polarized form as a combination of Pluecker images of q-singular
// k-spaces. Characteristic 2, k <= n.
inline Certificate certificate_quadratic_even(const Form& f, int k, const GenDescriptor& desc) {
  if (f.kind != FormKind::Quadratic || !f.even_char())
    throw std::invalid_argument("characteristic-2 quadratic form required");
  const int n = f.params.n, m = f.params.m, N = f.params.N;
  if (desc.weight() != k || k < 1 || k > n)
    throw std::invalid_argument("descriptor weight must be k with 1 <= k <= n");
  int npairs = n + m;
  auto in_range = [&](int i) { return i >= 1 && i <= npairs; };
  for (int i : desc.A)
    if (!in_range(i)) throw std::invalid_argument("A index out of range");
  for (int i : desc.B)
    if (!in_range(i)) throw std::invalid_argument("B index out of range");
  for (auto [i, j] : desc.C)
    if (!in_range(i) || !in_range(j) || i >= j) throw std::invalid_argument("bad C pair");
  for (size_t r = 1; r < desc.C.size(); ++r)
    if (desc.C[r - 1].first >= desc.C[r].first) throw std::invalid_argument("C pairs out of order");
  {
    std::set<int> seen;
    for (int i : desc.A) seen.insert(i);
    for (int i : desc.B)
      if (!seen.insert(i).second) throw std::invalid_argument("descriptor parts overlap");
    for (int i : desc.cbar())
      if (!seen.insert(i).second) throw std::invalid_argument("descriptor parts overlap");
  }
  for (int j : desc.D)
    if (j <= 2 * npairs || j > N) throw std::invalid_argument("D index out of range");

  // split D into kappa coordinates and radical coordinates of q
  GenDescriptor core = desc;
  core.D.clear();
  std::vector<int> rad;
  for (int j : desc.D)
    (j > N - f.params.d ? rad : core.D).push_back(j);

  certdetail::EvenCtx ctx{f, n, m, N, {}};
  for (int i = 1; i <= n; ++i) ctx.pool.insert(i);
  certdetail::RawComb comb = certdetail::even_core(ctx, core);
  if (!rad.empty())
    comb = certdetail::combine(f.field, comb, certdetail::radical_factor(f.field, N, rad));
  WedgeVector target = descriptor_vector(f.field, N, desc);
  return certdetail::finalize(f, k, std::move(target), std::move(comb));
}

}  // namespace pgrass
