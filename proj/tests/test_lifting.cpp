#include "doctest.h"
#include "pgrass/lifting.hpp"

using namespace pgrass;

namespace {

QuotientPair identity_pair(const EmbeddedGeometry& emb) {
  QuotientPair p;
  p.top = emb;
  p.bottom = emb;
  p.phi = Matrix::identity(emb.field, emb.codomain_dim);
  return p;
}

// The symplectic polar space W(3,q) with its natural embedding.
EmbeddedGeometry symplectic_w3(const Field& F) {
  Form s = build_alternating(F, 2, 0);
  EmbeddedGeometry g;
  g.field = F;
  g.codomain_dim = 4;
  std::map<std::string, int> id_of;
  std::vector<Subspace> pts = enumerate_points(s, 1);
  for (size_t i = 0; i < pts.size(); ++i) {
    g.points.push_back((int)i);
    g.image[(int)i] = pts[i];
    id_of[subspace_key(pts[i])] = (int)i;
  }
  for (const Subspace& line : enumerate_points(s, 2)) {
    std::vector<int> ids;
    for (const Vec& v : projective_points(line))
      ids.push_back(id_of.at(subspace_key(Subspace::from_span(Matrix::from_rows(F, {v})))));
    std::sort(ids.begin(), ids.end());
    g.lines.push_back(std::move(ids));
  }
  return g;
}

}  // namespace

TEST_CASE("weyl-like dimension bounds") {
  CHECK(weyl_like_bounds(6, 2, 2) == std::pair<std::int64_t, std::int64_t>{14, 16});
  CHECK(weyl_like_bounds(6, 2, 1) == std::pair<std::int64_t, std::int64_t>{14, 15});
  CHECK(weyl_like_bounds(5, 1, 2) == std::pair<std::int64_t, std::int64_t>{5, 5});
  for (int N = 2; N <= 8; ++N)
    for (int k = 1; k <= N; ++k)
      for (int g = 1; g <= 3; ++g) {
        auto [lo, hi] = weyl_like_bounds(N, k, g);
        CHECK(lo <= hi);
        CHECK((lo == hi) == (binom(N, k - 2) == 0));
      }
  CHECK_THROWS_AS(weyl_like_bounds(5, 1, 0), std::invalid_argument);
}

TEST_CASE("an identity pair is a valid quotient") {
  QuotientPair idp = identity_pair(symplectic_w3(Field::gf(2)));
  ValidationReport rep = validate_quotient(idp);
  CHECK(rep.ok);
  CHECK(Subspace::from_span(kernel_basis(idp.phi)).dim() == 0);
}

TEST_CASE("nucleus fixture over GF(2) validates") {
  QuotientPair pair = nucleus_fixture(2, Field::gf(2));
  CHECK(pair.top.points.size() == 15);
  CHECK(pair.top.codomain_dim == 5);
  CHECK(pair.bottom.codomain_dim == 4);
  ValidationReport rep = validate_quotient(pair);
  if (!rep.ok)
    for (auto& v : rep.violations) MESSAGE(v);
  CHECK(rep.ok);
  // bijective on points: all of PG(3,2) appears downstairs
  std::set<std::string> images;
  for (int p : pair.bottom.points) images.insert(subspace_key(pair.bottom.image.at(p)));
  CHECK(images.size() == 15);
}

TEST_CASE("nucleus fixture over GF(4) validates") {
  QuotientPair pair = nucleus_fixture(2, Field::gf(2, 2));
  CHECK(pair.top.points.size() == 85);
  ValidationReport rep = validate_quotient(pair);
  if (!rep.ok)
    for (auto& v : rep.violations) MESSAGE(v);
  CHECK(rep.ok);
}

TEST_CASE("a pair whose kernel hits a point image is rejected") {
  QuotientPair pair = nucleus_fixture(2, Field::gf(2));
  // project along a singular point instead of the nucleus
  const Field& F = pair.top.field;
  Vec bad = pair.top.rep(pair.top.points[0]);
  int pv = -1;
  for (int j = 0; j < 5; ++j)
    if (!F.is_zero(bad[j])) { pv = j; break; }
  Matrix phi(F, 4, 5);
  int r = 0;
  for (int j = 0; j < 5; ++j) {
    if (j == pv) continue;
    phi.at(r, j) = F.one();
    phi.at(r, pv) = F.neg(bad[j]);
    ++r;
  }
  QuotientPair broken = pair;
  broken.phi = phi;
  for (int p : broken.top.points) {
    Vec v = mul(phi, broken.top.rep(p));
    bool zero = true;
    for (const Elt& x : v)
      if (!F.is_zero(x)) zero = false;
    if (zero) continue;  // leave the stale image; validation must still fail
    broken.bottom.image[p] = Subspace::from_span(Matrix::from_rows(F, {v}));
  }
  ValidationReport rep = validate_quotient(broken);
  CHECK(!rep.ok);
  bool kernel_hit = false;
  for (auto& v : rep.violations)
    if (v.find("ker(phi)") != std::string::npos) kernel_hit = true;
  CHECK(kernel_hit);
}

TEST_CASE("vector lifting: identity, matching, scaling, uniqueness") {
  QuotientPair idp = identity_pair(symplectic_w3(Field::gf(2)));
  for (int p : idp.top.points) {
    Vec v = idp.bottom.rep(p);
    CHECK(lift_vector(idp, p, v) == v);
  }

  QuotientPair pair = nucleus_fixture(2, Field::gf(2, 2));
  const Field& F = pair.top.field;
  for (int p : {pair.top.points[0], pair.top.points[7]}) {
    Vec v = pair.bottom.rep(p);
    Vec lv = lift_vector(pair, p, v);
    CHECK(mul(pair.phi, lv) == v);
    CHECK(pair.top.image.at(p).contains(lv));
    // scaling law
    for (std::int64_t c = 1; c < F.order(); ++c) {
      Vec cv(v.size()), clv(lv.size());
      for (size_t i = 0; i < v.size(); ++i) cv[i] = F.mul(F.element(c), v[i]);
      for (size_t i = 0; i < lv.size(); ++i) clv[i] = F.mul(F.element(c), lv[i]);
      CHECK(lift_vector(pair, p, cv) == clv);
    }
    // the fiber meets the top image exactly once, exhaustively
    Vec wt = pair.top.rep(p);
    int hits = 0;
    for (std::int64_t c = 1; c < F.order(); ++c) {
      Vec cand(wt.size());
      for (size_t i = 0; i < wt.size(); ++i) cand[i] = F.mul(F.element(c), wt[i]);
      if (mul(pair.phi, cand) == v) ++hits;
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("lifting the rational subgeometry of Q(4,4) -> W(3,4) is 5-dimensional") {
  Field F4 = Field::gf(2, 2);
  Field F2 = Field::gf(2);
  QuotientPair pair = nucleus_fixture(2, F4);
  // GF(2)-rational points of the bottom embedding
  std::vector<int> pts0;
  std::set<int> in0;
  for (int p : pair.bottom.points) {
    Vec v = pair.bottom.rep(p);
    bool rational = true;
    for (const Elt& x : v)
      if (!(x == F4.zero() || x == F4.one())) rational = false;
    if (rational) {
      pts0.push_back(p);
      in0.insert(p);
    }
  }
  CHECK(pts0.size() == 15);
  std::vector<std::vector<int>> lines0;
  for (const auto& line : pair.top.lines) {
    std::vector<int> restricted;
    for (int p : line)
      if (in0.count(p)) restricted.push_back(p);
    if (restricted.size() == 3) lines0.push_back(restricted);
  }
  CHECK(lines0.size() == 15);
  LiftedEmbedding lifted = lift_embedding(pair, F2, pts0, lines0);
  CHECK(lifted.g == 2);
  CHECK(lifted.dim_over_subfield == 5);
  CHECK(lifted.lines_ok);
}

TEST_CASE("identity-pair collapse reproduces the original embedding") {
  EmbeddedGeometry w3 = symplectic_w3(Field::gf(2));
  QuotientPair idp = identity_pair(w3);
  LiftedEmbedding lifted = lift_embedding(idp, Field::gf(2), w3.points, w3.lines);
  CHECK(lifted.g == 1);
  CHECK(lifted.dim_over_subfield == w3.codomain_dim);
  CHECK(lifted.lines_ok);
  for (int p : w3.points) CHECK(lifted.lifting.at(p) == w3.rep(p));
}

TEST_CASE("quotient kernel search") {
  QuotientPair fixture = nucleus_fixture(2, Field::gf(2));
  auto found = find_quotient_kernel(fixture.top);
  REQUIRE(found.has_value());
  Subspace K = Subspace::from_span(kernel_basis(found->phi));
  CHECK(K.dim() == 1);
  Vec e5(5, Field::gf(2).zero());
  e5[4] = Field::gf(2).one();
  CHECK(K.contains(e5));  // the nucleus
  ValidationReport rep = validate_quotient(*found);
  CHECK(rep.ok);

  // the symplectic embedding covers every point of PG(3,2): no kernel exists
  CHECK(!find_quotient_kernel(symplectic_w3(Field::gf(2))).has_value());
}
