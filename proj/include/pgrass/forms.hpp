#pragma once
// Standard-shape Hermitian, alternating and quadratic forms with prescribed
// Witt parameters: construction (with verified anisotropy), evaluation,
// polarization, radicals and perps, total-singularity tests, a brute-force
// Witt-parameter oracle, and minimal field-extension normalization of
// non-degenerate quadratic forms.
//
// Coordinate layout of every built form: n hyperbolic pairs at positions
// (2i-1, 2i), then the anisotropic block, then a d-dimensional radical as
// the last d coordinates. Indices in this header are 1-based where they
// name coordinates.

#include <map>
#include <set>

#include "pgrass/exterior.hpp"

namespace pgrass {

enum class FormKind { Hermitian, Alternating, Quadratic, SymmetricBilinear };

inline std::string form_kind_name(FormKind k) {
  switch (k) {
    case FormKind::Hermitian: return "hermitian";
    case FormKind::Alternating: return "alternating";
    case FormKind::Quadratic: return "quadratic";
    case FormKind::SymmetricBilinear: return "symmetric";
  }
  return "?";
}

struct WittParams {
  int n = 0;    // reduced Witt index
  int d0 = 0;   // anisotropic defect
  int d = 0;    // singular defect (radical dimension)
  int N = 0;    // ambient dimension, N = 2n + d0 + d
  // Characteristic-2 quadratic refinement: d0 = 2m + dp0.
  int m = 0;
  int dp0 = 0;
  bool even_quadratic = false;

  int witt_index() const { return n + d; }
  friend bool operator==(const WittParams&, const WittParams&) = default;
};

struct Form {
  FormKind kind = FormKind::Alternating;
  Field field;
  WittParams params;
  Matrix coeffs;  // Gram matrix, or upper-triangular Q when quadratic
  Matrix bilin;   // Gram of the bilinearization (Q + Q^T when quadratic)
  std::vector<Elt> kappa, lambda, mu;

  int ambient() const { return params.N; }
  bool quadratic() const { return kind == FormKind::Quadratic; }
  bool even_char() const { return field.characteristic() == 2; }
};

// q(u) for quadratic forms; the single-argument arity is invalid otherwise.
inline Elt evaluate(const Form& f, const Vec& u) {
  if (f.kind != FormKind::Quadratic)
    throw std::invalid_argument("one-argument evaluation needs a quadratic form");
  if ((int)u.size() != f.ambient()) throw std::invalid_argument("vector length mismatch");
  const Field& F = f.field;
  Elt acc = F.zero();
  for (int i = 0; i < f.ambient(); ++i) {
    if (F.is_zero(u[i])) continue;
    for (int j = i; j < f.ambient(); ++j) {
      const Elt& c = f.coeffs.at(i, j);
      if (F.is_zero(c) || F.is_zero(u[j])) continue;
      acc = F.add(acc, F.mul(c, F.mul(u[i], u[j])));
    }
  }
  return acc;
}

// h(u,v), s(u,v) or b(u,v); invalid arity for quadratic forms.
inline Elt evaluate(const Form& f, const Vec& u, const Vec& v) {
  if (f.kind == FormKind::Quadratic)
    throw std::invalid_argument("quadratic forms take a single argument; polarize first");
  if ((int)u.size() != f.ambient() || (int)v.size() != f.ambient())
    throw std::invalid_argument("vector length mismatch");
  const Field& F = f.field;
  bool herm = f.kind == FormKind::Hermitian;
  Elt acc = F.zero();
  for (int i = 0; i < f.ambient(); ++i) {
    if (F.is_zero(u[i])) continue;
    Elt ui = herm ? F.conj(u[i]) : u[i];
    for (int j = 0; j < f.ambient(); ++j) {
      const Elt& c = f.coeffs.at(i, j);
      if (F.is_zero(c) || F.is_zero(v[j])) continue;
      acc = F.add(acc, F.mul(ui, F.mul(c, v[j])));
    }
  }
  return acc;
}

// Value of the bilinearization (f_q for quadratic kinds, the form itself
// for bilinear kinds, h itself for Hermitian).
inline Elt pair_value(const Form& f, const Vec& u, const Vec& v) {
  const Field& F = f.field;
  bool herm = f.kind == FormKind::Hermitian;
  Elt acc = F.zero();
  for (int i = 0; i < f.ambient(); ++i) {
    if (F.is_zero(u[i])) continue;
    Elt ui = herm ? F.conj(u[i]) : u[i];
    for (int j = 0; j < f.ambient(); ++j) {
      const Elt& c = f.bilin.at(i, j);
      if (F.is_zero(c) || F.is_zero(v[j])) continue;
      acc = F.add(acc, F.mul(ui, F.mul(c, v[j])));
    }
  }
  return acc;
}

inline bool is_singular_vector(const Form& f, const Vec& v) {
  const Field& F = f.field;
  switch (f.kind) {
    case FormKind::Quadratic: return F.is_zero(evaluate(f, v));
    case FormKind::Alternating: return true;
    default: return F.is_zero(evaluate(f, v, v));
  }
}

// Singularity on a basis plus vanishing of the (bilinearized) form on basis
// pairs; this suffices on the span.
inline bool is_totally_singular(const Form& f, const Subspace& s) {
  if (s.ambient() != f.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  for (int i = 0; i < s.dim(); ++i)
    if (!is_singular_vector(f, s.basis().row(i))) return false;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i; j < s.dim(); ++j)
      if (!f.field.is_zero(pair_value(f, s.basis().row(i), s.basis().row(j)))) return false;
  return true;
}

namespace detail {

inline void require_finite(const Field& F, const char* what) {
  if (!F.finite()) throw InfiniteFieldError(std::string(what) + " requires a finite field");
}

// Exhaustive singular-vector search on the block spanned by the given
// coordinate columns (1-based); true iff only the zero vector is singular.
inline bool block_anisotropic(const Form& f, const std::vector<int>& coords) {
  const Field& F = f.field;
  std::int64_t q = F.order();
  int b = (int)coords.size();
  std::int64_t total = 1;
  for (int i = 0; i < b; ++i) total *= q;
  for (std::int64_t code = 1; code < total; ++code) {
    Vec v(f.ambient(), F.zero());
    std::int64_t c = code;
    for (int i = 0; i < b; ++i) { v[coords[i] - 1] = F.element(c % q); c /= q; }
    if (is_singular_vector(f, v)) return false;
  }
  return true;
}

}  // namespace detail

// --- builders -------------------------------------------------------------

inline Form build_hermitian(const Field& F, int n, int d0, int d, std::vector<Elt> kappa = {}) {
  if (!F.has_involution())
    throw std::invalid_argument("hermitian form needs a field with an order-2 automorphism");
  if (n < 1 || d0 < 0 || d < 0) throw std::invalid_argument("bad hermitian parameters");
  if (kappa.empty()) kappa.assign(d0, F.one());
  if ((int)kappa.size() != d0) throw std::invalid_argument("kappa must have length d0");
  for (const Elt& k : kappa)
    if (F.is_zero(k) || !F.in_fixed_field(k))
      throw std::invalid_argument("kappa entries must be nonzero elements of the fixed field");
  int N = 2 * n + d0 + d;
  Form f;
  f.kind = FormKind::Hermitian;
  f.field = F;
  f.params = WittParams{n, d0, d, N};
  f.coeffs = Matrix(F, N, N);
  for (int i = 0; i < n; ++i) {
    f.coeffs.at(2 * i, 2 * i + 1) = F.one();
    f.coeffs.at(2 * i + 1, 2 * i) = F.one();
  }
  for (int j = 0; j < d0; ++j) f.coeffs.at(2 * n + j, 2 * n + j) = kappa[j];
  f.bilin = f.coeffs;
  f.kappa = std::move(kappa);
  if (d0 > 0) {
    std::vector<int> block;
    for (int j = 0; j < d0; ++j) block.push_back(2 * n + j + 1);
    if (!detail::block_anisotropic(f, block))
      throw std::invalid_argument("hermitian anisotropic block of dimension " + std::to_string(d0) +
                                  " is not realizable over this field");
  }
  return f;
}

inline Form build_alternating(const Field& F, int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("bad alternating parameters");
  int N = 2 * n + d;
  Form f;
  f.kind = FormKind::Alternating;
  f.field = F;
  f.params = WittParams{n, 0, d, N};
  f.coeffs = Matrix(F, N, N);
  for (int i = 0; i < n; ++i) {
    f.coeffs.at(2 * i, 2 * i + 1) = F.one();
    f.coeffs.at(2 * i + 1, 2 * i) = F.neg(F.one());
  }
  f.bilin = f.coeffs;
  return f;
}

inline Form build_quadratic_odd(const Field& F, int n, int d0, int d, std::vector<Elt> kappa = {}) {
  if (F.characteristic() == 2) throw std::invalid_argument("odd-characteristic builder got a char-2 field");
  if (n < 1 || d0 < 0 || d < 0) throw std::invalid_argument("bad quadratic parameters");
  if (kappa.empty()) {
    if (!F.finite()) {
      kappa.assign(d0, F.one());  // sum of squares
    } else {
      for (int j = 0; j < d0; ++j) {
        if (j == 0) {
          kappa.push_back(F.one());
        } else {
          // least c with -c a non-square, so that x^2 + c y^2 is anisotropic
          Elt c = F.zero();
          for (std::int64_t i = 1; i < F.order(); ++i) {
            Elt cand = F.element(i);
            if (!F.sqrt(F.neg(cand)).has_value()) { c = cand; break; }
          }
          if (F.is_zero(c)) throw std::invalid_argument("no anisotropic default available");
          kappa.push_back(c);
        }
      }
    }
  }
  if ((int)kappa.size() != d0) throw std::invalid_argument("kappa must have length d0");
  for (const Elt& k : kappa)
    if (F.is_zero(k)) throw std::invalid_argument("kappa entries must be nonzero");
  int N = 2 * n + d0 + d;
  Form f;
  f.kind = FormKind::Quadratic;
  f.field = F;
  f.params = WittParams{n, d0, d, N};
  f.coeffs = Matrix(F, N, N);
  for (int i = 0; i < n; ++i) f.coeffs.at(2 * i, 2 * i + 1) = F.one();
  for (int j = 0; j < d0; ++j) f.coeffs.at(2 * n + j, 2 * n + j) = kappa[j];
  f.bilin = Matrix(F, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      f.bilin.at(i, j) = F.add(f.coeffs.at(i, j), f.coeffs.at(j, i));
  f.kappa = kappa;
  if (d0 > 0) {
    if (F.finite()) {
      std::vector<int> block;
      for (int j = 0; j < d0; ++j) block.push_back(2 * n + j + 1);
      if (!detail::block_anisotropic(f, block))
        throw std::invalid_argument("quadratic anisotropic block is not anisotropic (d0 = " +
                                    std::to_string(d0) + ")");
    } else {
      bool pos = kappa[0].num > 0;
      for (const Elt& k : kappa)
        if ((k.num > 0) != pos)
          throw std::invalid_argument("rational anisotropy certificate needs all kappa of one sign");
    }
  }
  return f;
}

inline Form build_quadratic_even(const Field& F, int n, int m, int dp0, int d,
                                 std::vector<Elt> lambda = {}, std::vector<Elt> mu = {},
                                 std::vector<Elt> kappa = {}) {
  if (F.characteristic() != 2) throw std::invalid_argument("even-characteristic builder needs char 2");
  if (n < 1 || m < 0 || dp0 < 0 || d < 0) throw std::invalid_argument("bad quadratic parameters");
  auto irreducible = [&](const Elt& la, const Elt& muv) {
    return poly_roots(F, {muv, F.one(), la}).empty();
  };
  if (lambda.empty() && mu.empty() && m > 0) {
    // least irreducible pair by coefficient order
    Elt la = F.zero(), muv = F.zero();
    bool found = false;
    for (std::int64_t i = 1; i < F.order() && !found; ++i)
      for (std::int64_t j = 1; j < F.order() && !found; ++j)
        if (irreducible(F.element(i), F.element(j))) {
          la = F.element(i);
          muv = F.element(j);
          found = true;
        }
    if (!found) throw std::invalid_argument("no irreducible binary block exists");
    lambda.assign(m, la);
    mu.assign(m, muv);
  }
  if (kappa.empty()) kappa.assign(dp0, F.one());
  if ((int)lambda.size() != m || (int)mu.size() != m)
    throw std::invalid_argument("lambda and mu must have length m");
  if ((int)kappa.size() != dp0) throw std::invalid_argument("kappa must have length dp0");
  for (int i = 0; i < m; ++i)
    if (!irreducible(lambda[i], mu[i]))
      throw std::invalid_argument("lambda t^2 + t + mu is reducible at block " + std::to_string(i + 1));
  for (const Elt& k : kappa)
    if (F.is_zero(k)) throw std::invalid_argument("kappa entries must be nonzero");
  int d0 = 2 * m + dp0;
  int N = 2 * n + d0 + d;
  Form f;
  f.kind = FormKind::Quadratic;
  f.field = F;
  f.params = WittParams{n, d0, d, N, m, dp0, true};
  f.coeffs = Matrix(F, N, N);
  for (int i = 0; i < n; ++i) f.coeffs.at(2 * i, 2 * i + 1) = F.one();
  for (int i = 0; i < m; ++i) {
    int a = 2 * n + 2 * i;
    f.coeffs.at(a, a) = lambda[i];
    f.coeffs.at(a, a + 1) = F.one();
    f.coeffs.at(a + 1, a + 1) = mu[i];
  }
  for (int j = 0; j < dp0; ++j) {
    int a = 2 * n + 2 * m + j;
    f.coeffs.at(a, a) = kappa[j];
  }
  f.bilin = Matrix(F, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      f.bilin.at(i, j) = F.add(f.coeffs.at(i, j), f.coeffs.at(j, i));
  f.lambda = std::move(lambda);
  f.mu = std::move(mu);
  f.kappa = std::move(kappa);
  if (d0 > 0) {
    std::vector<int> block;
    for (int j = 0; j < d0; ++j) block.push_back(2 * n + j + 1);
    if (!detail::block_anisotropic(f, block))
      throw std::invalid_argument("q1 + q2 block is not anisotropic (dp0 = " + std::to_string(dp0) +
                                  " over a perfect field?)");
  }
  return f;
}

// Bilinear form polarizing a quadratic one: alternating in characteristic 2
// (reduced Witt index n+m, radical of dimension dp0 + d), symmetric otherwise.
inline Form polarize(const Form& f) {
  if (f.kind != FormKind::Quadratic) throw std::invalid_argument("polarize needs a quadratic form");
  Form g;
  g.field = f.field;
  g.coeffs = f.bilin;
  g.bilin = f.bilin;
  if (f.even_char()) {
    g.kind = FormKind::Alternating;
    g.params = WittParams{f.params.n + f.params.m, 0, f.params.dp0 + f.params.d, f.params.N};
  } else {
    g.kind = FormKind::SymmetricBilinear;
    g.params = f.params;
    g.params.even_quadratic = false;
  }
  return g;
}

// Radical: kernel of the bilinearization, intersected with the singular
// vectors when the form is quadratic in characteristic 2.
inline Subspace radical(const Form& f) {
  const Field& F = f.field;
  Matrix k = kernel_basis(f.bilin);
  Subspace K = Subspace::from_span(k);
  if (f.kind != FormKind::Quadratic || !f.even_char()) return K;
  // q is additive and p-semilinear on K; split off one non-singular
  // direction if present.
  std::vector<Vec> rows;
  int piv = -1;
  Elt qpiv = F.zero();
  for (int i = 0; i < K.dim(); ++i) {
    Elt qi = evaluate(f, K.basis().row(i));
    if (!F.is_zero(qi)) { piv = i; qpiv = qi; break; }
  }
  if (piv < 0) return K;
  for (int i = 0; i < K.dim(); ++i) {
    if (i == piv) continue;
    Vec v = K.basis().row(i);
    Elt qi = evaluate(f, v);
    if (!F.is_zero(qi)) {
      Elt c = *F.sqrt(F.div(qi, qpiv));
      Vec pr = K.basis().row(piv);
      for (int j = 0; j < (int)v.size(); ++j) v[j] = F.add(v[j], F.mul(c, pr[j]));
    }
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return Subspace::zero(F, f.ambient());
  return Subspace::from_span(Matrix::from_rows(F, rows));
}

// Orthogonal complement with respect to the bilinearization (the form
// itself for Hermitian kind).
inline Subspace perp(const Form& f, const Subspace& s) {
  if (s.ambient() != f.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const Field& F = f.field;
  Matrix rows(F, s.dim(), f.ambient());
  for (int i = 0; i < s.dim(); ++i) {
    Vec u = s.basis().row(i);
    if (f.kind == FormKind::Hermitian)
      for (Elt& x : u) x = F.conj(x);
    Vec r(f.ambient(), F.zero());
    for (int a = 0; a < f.ambient(); ++a) {
      if (F.is_zero(u[a])) continue;
      for (int b = 0; b < f.ambient(); ++b)
        r[b] = F.add(r[b], F.mul(u[a], f.bilin.at(a, b)));
    }
    for (int b = 0; b < f.ambient(); ++b) rows.at(i, b) = r[b];
  }
  return Subspace::from_span(kernel_basis(rows));
}

// --- point utilities shared by the enumerators -----------------------------

// Canonical representatives (first nonzero coordinate 1) of all projective
// points of a subspace, sorted in the global point order.
inline std::vector<Vec> projective_points(const Subspace& s) {
  const Field& F = s.field();
  detail::require_finite(F, "projective point enumeration");
  std::int64_t q = F.order();
  int k = s.dim();
  std::vector<Vec> out;
  for (int t = 0; t < k; ++t) {
    std::int64_t tail = 1;
    for (int i = t + 1; i < k; ++i) tail *= q;
    for (std::int64_t code = 0; code < tail; ++code) {
      Vec v(s.ambient(), F.zero());
      auto addrow = [&](int row, const Elt& c) {
        if (F.is_zero(c)) return;
        for (int j = 0; j < s.ambient(); ++j)
          v[j] = F.add(v[j], F.mul(c, s.basis().at(row, j)));
      };
      addrow(t, F.one());
      std::int64_t cc = code;
      for (int i = t + 1; i < k; ++i) { addrow(i, F.element(cc % q)); cc /= q; }
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Vec> singular_points(const Form& f, const Subspace& within) {
  std::vector<Vec> pts = projective_points(within);
  std::vector<Vec> out;
  for (auto& v : pts)
    if (is_singular_vector(f, v)) out.push_back(std::move(v));
  return out;
}

// --- brute-force Witt parameters -------------------------------------------

// Level-by-level closure of all totally singular subspaces; independent of
// the orderly enumerator in grassmannian.hpp. Desk scale only.
inline std::map<int, std::vector<Subspace>> all_totally_singular_by_dim(const Form& f) {
  detail::require_finite(f.field, "totally singular closure");
  std::map<int, std::vector<Subspace>> levels;
  std::vector<Subspace> cur = {Subspace::zero(f.field, f.ambient())};
  int k = 0;
  while (!cur.empty()) {
    levels[k] = cur;
    std::set<std::string> seen;
    std::vector<Subspace> next;
    for (const Subspace& u : cur) {
      Subspace up = perp(f, u);
      for (const Vec& v : singular_points(f, up)) {
        if (u.contains(v)) continue;
        std::vector<Vec> rows;
        for (int i = 0; i < u.dim(); ++i) rows.push_back(u.basis().row(i));
        rows.push_back(v);
        Subspace w = Subspace::from_span(Matrix::from_rows(f.field, rows));
        std::string key = subspace_key(w);
        if (seen.insert(std::move(key)).second) next.push_back(std::move(w));
      }
    }
    cur = std::move(next);
    ++k;
  }
  levels.erase(0);
  return levels;
}

inline WittParams witt_params_bruteforce(const Form& f) {
  detail::require_finite(f.field, "witt_params_bruteforce");
  int d = radical(f).dim();
  auto levels = all_totally_singular_by_dim(f);
  int witt = levels.empty() ? 0 : levels.rbegin()->first;
  WittParams w;
  w.d = d;
  w.n = witt - d;
  w.N = f.ambient();
  w.d0 = w.N - 2 * w.n - d;
  if (f.kind == FormKind::Quadratic && f.even_char()) {
    int rad_fq = Subspace::from_span(kernel_basis(f.bilin)).dim();
    w.dp0 = rad_fq - d;
    w.m = (w.d0 - w.dp0) / 2;
    w.even_quadratic = true;
  }
  return w;
}

// --- field-extension normalization (non-degenerate quadratic forms) --------

struct Extension {
  Field Fhat;        // minimal extension realizing the normal shape
  FieldHom hom;      // embedding of the base field
  Matrix new_basis;  // rows = new basis vectors in the old coordinates
  Form fhat;         // the form extended to Fhat, still in old coordinates
  int degree = 1;    // |Fhat : F|
};

namespace detail {

inline Form extend_scalars(const Form& f, const Field& Fhat, const FieldHom& hom) {
  Form g;
  g.kind = f.kind;
  g.field = Fhat;
  g.params = f.params;
  g.coeffs = Matrix(Fhat, f.ambient(), f.ambient());
  g.bilin = Matrix(Fhat, f.ambient(), f.ambient());
  for (int i = 0; i < f.ambient(); ++i)
    for (int j = 0; j < f.ambient(); ++j) {
      g.coeffs.at(i, j) = hom(f.coeffs.at(i, j));
      g.bilin.at(i, j) = hom(f.bilin.at(i, j));
    }
  for (const Elt& k : f.kappa) g.kappa.push_back(hom(k));
  for (const Elt& k : f.lambda) g.lambda.push_back(hom(k));
  for (const Elt& k : f.mu) g.mu.push_back(hom(k));
  return g;
}

inline FieldHom identity_hom(const Field& F) {
  Elt gen = F.e > 1 ? Elt{F.p, 1} : F.zero();
  return FieldHom{F, F, gen};
}

}  // namespace detail

// Characteristic 2: hyperbolize the lambda/mu blocks over the splitting
// field of the polynomials lambda_i t^2 + t + mu_i. Over a finite base that
// field is the quadratic extension, so the degree is 1 or 2.
inline Extension extend_normalize_even(const Form& f) {
  if (f.kind != FormKind::Quadratic || !f.even_char())
    throw std::invalid_argument("extend_normalize_even needs a char-2 quadratic form");
  if (f.params.d != 0) throw std::invalid_argument("degenerate input");
  detail::require_finite(f.field, "extend_normalize_even");
  const int n = f.params.n, m = f.params.m, N = f.params.N;
  if (m == 0) {
    Extension ext{f.field, detail::identity_hom(f.field), Matrix::identity(f.field, N), f, 1};
    return ext;
  }
  Field Fhat = Field::gf(f.field.p, 2 * f.field.e);
  FieldHom hom = embed_field(f.field, Fhat);
  Form fhat = detail::extend_scalars(f, Fhat, hom);
  Matrix basis = Matrix::identity(Fhat, N);
  for (int i = 0; i < m; ++i) {
    auto roots = poly_roots(Fhat, {hom(f.mu[i]), Fhat.one(), hom(f.lambda[i])});
    if (roots.size() != 2) throw std::logic_error("binary block does not split upstairs");
    Elt alpha = roots[0], beta = roots[1];
    Elt gamma = *Fhat.sqrt(Fhat.add(alpha, beta));
    Elt gi = Fhat.inv(gamma);
    int a = 2 * n + 2 * i;
    basis.at(a, a) = Fhat.mul(alpha, gi);
    basis.at(a, a + 1) = gi;
    basis.at(a + 1, a) = Fhat.mul(beta, gi);
    basis.at(a + 1, a + 1) = gi;
  }
  Extension ext{Fhat, hom, std::move(basis), std::move(fhat), 2};
  // sanity: the new basis realizes the hyperbolic shape
  for (int i = 0; i < n + m; ++i) {
    Vec u = ext.new_basis.row(2 * i), v = ext.new_basis.row(2 * i + 1);
    if (!Fhat.is_zero(evaluate(ext.fhat, u)) || !Fhat.is_zero(evaluate(ext.fhat, v)) ||
        !(pair_value(ext.fhat, u, v) == Fhat.one()))
      throw std::logic_error("normalized basis is not hyperbolic");
  }
  return ext;
}

// Odd characteristic: over a finite field the anisotropic block has
// dimension at most 2 and hyperbolizes over the quadratic extension.
inline Extension extend_normalize_odd(const Form& f) {
  if (f.kind != FormKind::Quadratic || f.even_char())
    throw std::invalid_argument("extend_normalize_odd needs an odd-characteristic quadratic form");
  if (f.params.d != 0) throw std::invalid_argument("degenerate input");
  detail::require_finite(f.field, "extend_normalize_odd");
  const int n = f.params.n, d0 = f.params.d0, N = f.params.N;
  if (d0 <= 1) {
    Extension ext{f.field, detail::identity_hom(f.field), Matrix::identity(f.field, N), f, 1};
    return ext;
  }
  if (d0 != 2) throw std::invalid_argument("anisotropic defect > 2 over a finite field");
  Field Fhat = Field::gf(f.field.p, 2 * f.field.e);
  FieldHom hom = embed_field(f.field, Fhat);
  Form fhat = detail::extend_scalars(f, Fhat, hom);
  Elt k1 = hom(f.kappa[0]), k2 = hom(f.kappa[1]);
  Elt s = *Fhat.sqrt(Fhat.neg(Fhat.div(k2, k1)));
  Matrix basis = Matrix::identity(Fhat, N);
  // v1 = s e_{N-1} + e_N and v2 = -s e_{N-1} + e_N are singular with
  // b(v1, v2) = 4 k2; scale the second to make the pair hyperbolic.
  Elt c = Fhat.inv(Fhat.mul(Fhat.from_int(4), k2));
  basis.at(N - 2, N - 2) = s;
  basis.at(N - 2, N - 1) = Fhat.one();
  basis.at(N - 1, N - 2) = Fhat.mul(c, Fhat.neg(s));
  basis.at(N - 1, N - 1) = c;
  Extension ext{Fhat, hom, std::move(basis), std::move(fhat), 2};
  for (int i = 0; i < n + 1; ++i) {
    Vec u = ext.new_basis.row(2 * i), v = ext.new_basis.row(2 * i + 1);
    if (!Fhat.is_zero(evaluate(ext.fhat, u)) || !Fhat.is_zero(evaluate(ext.fhat, v)) ||
        !(pair_value(ext.fhat, u, v) == Fhat.one()))
      throw std::logic_error("normalized basis is not hyperbolic");
  }
  return ext;
}

}  // namespace pgrass
