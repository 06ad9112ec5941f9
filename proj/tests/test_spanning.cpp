#include "doctest.h"
#include "pgrass/spanning.hpp"

using namespace pgrass;

namespace {

bool trace_contains(const TraceNode& t, const std::string& label) {
  if (t.label == label) return true;
  for (const TraceNode& c : t.children)
    if (trace_contains(c, label)) return true;
  return false;
}

// All k-subsets of {1..N}, in colex order.
std::vector<std::vector<int>> all_subsets(int N, int k) {
  std::vector<std::vector<int>> out;
  for (std::int64_t r = 0; r < binom(N, k); ++r) out.push_back(subset_unrank(r, k));
  return out;
}

}  // namespace

TEST_CASE("predicted dimensions") {
  CHECK(predicted_dim(FormKind::Alternating, false, 6, 2, 3, 0) == 14);
  CHECK(predicted_dim(FormKind::Hermitian, false, 5, 3, 2, 1) == 6);
  CHECK(predicted_dim(FormKind::Alternating, false, 5, 3, 2, 1) == 5);
  CHECK(predicted_dim(FormKind::Quadratic, true, 4, 2, 2, 0) == 5);
  CHECK(predicted_dim(FormKind::Quadratic, false, 5, 2, 2, 0) == 10);
  CHECK(predicted_dim(FormKind::Hermitian, false, 4, 1, 2, 0) == 4);
  CHECK_THROWS_AS(predicted_dim(FormKind::Hermitian, false, 4, 3, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(predicted_dim(FormKind::Hermitian, false, 3, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("vandermonde identity for the whole desk range") {
  CHECK(vandermonde_check(5, 2, 2));
  for (int N = 0; N <= 12; ++N)
    for (int d = 0; d <= N; ++d)
      for (int k = 0; k <= N; ++k) CHECK(vandermonde_check(N, d, k));
}

TEST_CASE("symplectic generating set, small golden instances") {
  Field F2 = Field::gf(2);
  auto g22 = symplectic_genset(F2, 2, 0, 2);
  CHECK(g22.size() == 5);  // e1^e3, e1^e4, e2^e3, e2^e4, u_{1,2}
  int pure = 0, mixed = 0;
  for (auto& [d, w] : g22) {
    if (d.C.empty()) ++pure;
    else ++mixed;
  }
  CHECK(pure == 4);
  CHECK(mixed == 1);
  auto g1 = symplectic_genset(F2, 2, 1, 1);
  CHECK(g1.size() == 5);  // e1..e5 at grade 1
  CHECK((std::int64_t)g22.size() == predicted_dim(FormKind::Alternating, false, 4, 2, 2, 0));
  CHECK_THROWS_AS(symplectic_genset(F2, 2, 0, 3), std::invalid_argument);
}

TEST_CASE("generating set spans the symplectic embedding image") {
  GensetReport a = verify_genset(build_alternating(Field::gf(2), 2, 0), 2);
  CHECK(a.spans);
  CHECK(a.cardinality == 5);
  CHECK(a.span_dim == 5);
  CHECK(a.cardinality_equals_dim);
  GensetReport b = verify_genset(build_alternating(Field::gf(3), 3, 0), 2);
  CHECK(b.spans);
  CHECK(b.span_dim == 14);
  GensetReport c = verify_genset(build_alternating(Field::gf(2), 2, 1), 2);
  CHECK(c.spans);
  CHECK(c.span_dim == 9);
  CHECK_THROWS_AS(verify_genset(build_quadratic_odd(Field::gf(3), 2, 0, 0), 2),
                  std::invalid_argument);
}

TEST_CASE("hermitian certificates") {
  Field F4 = Field::gf(2, 2);
  Form f = build_hermitian(F4, 2, 0, 0);

  Certificate pair = certificate_hermitian(f, 2, {1, 2});
  CHECK(verify_certificate(pair).ok);
  CHECK(trace_contains(pair.trace, "hyperbolic-pair-difference"));

  Certificate single = certificate_hermitian(f, 2, {1, 3});
  CHECK(verify_certificate(single).ok);
  CHECK(single.terms.size() == 1);
  CHECK(single.terms[0].coeff == F4.one());

  Form g = build_hermitian(F4, 2, 1, 0);
  Certificate aniso = certificate_hermitian(g, 2, {1, 5});
  CHECK(verify_certificate(aniso).ok);
  CHECK(trace_contains(aniso.trace, "trace-zero-extension"));

  CHECK_THROWS_AS(certificate_hermitian(f, 3, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("hermitian certificates cover every coordinate target and span everything") {
  for (Form f : {build_hermitian(Field::gf(2, 2), 2, 0, 0), build_hermitian(Field::gf(2, 2), 2, 1, 0),
                 build_hermitian(Field::gf(2, 2), 2, 0, 1), build_hermitian(Field::gf(3, 2), 2, 1, 0)}) {
    for (int k = 1; k <= f.params.n; ++k) {
      SpanAccumulator acc(f.field, f.ambient(), k);
      for (const auto& J : all_subsets(f.ambient(), k)) {
        Certificate c = certificate_hermitian(f, k, J);
        VerifyResult v = verify_certificate(c);
        CHECK(v.ok);
        if (!v.ok) MESSAGE(v.message);
        acc.insert(c.target);
      }
      CHECK(acc.dim() == binom(f.ambient(), k));
    }
  }
}

TEST_CASE("odd quadratic certificates") {
  Field F3 = Field::gf(3);
  Form f = build_quadratic_odd(F3, 2, 0, 0);
  Certificate pair = certificate_quadratic_odd(f, 2, {1, 2});
  CHECK(verify_certificate(pair).ok);
  CHECK(trace_contains(pair.trace, "quadric-pair-sum"));
  Certificate single = certificate_quadratic_odd(f, 2, {1, 3});
  CHECK(verify_certificate(single).ok);
  CHECK(single.terms.size() == 1);
  CHECK(single.terms[0].coeff == F3.one());

  Form g = build_quadratic_odd(F3, 2, 1, 0);
  Certificate aniso = certificate_quadratic_odd(g, 1, {5});
  CHECK(verify_certificate(aniso).ok);
  CHECK(trace_contains(aniso.trace, "anisotropic-midpoint"));

  CHECK_THROWS_AS(certificate_quadratic_odd(build_quadratic_even(Field::gf(2), 2, 0, 0, 0), 2, {1, 2}),
                  std::invalid_argument);
}

TEST_CASE("odd quadratic certificates cover every coordinate target") {
  for (Form f : {build_quadratic_odd(Field::gf(3), 2, 0, 0), build_quadratic_odd(Field::gf(3), 2, 1, 0),
                 build_quadratic_odd(Field::gf(3), 2, 2, 0), build_quadratic_odd(Field::gf(3), 2, 1, 1),
                 build_quadratic_odd(Field::gf(5), 2, 1, 0)}) {
    for (int k = 1; k <= f.params.n; ++k) {
      SpanAccumulator acc(f.field, f.ambient(), k);
      for (const auto& J : all_subsets(f.ambient(), k)) {
        Certificate c = certificate_quadratic_odd(f, k, J);
        VerifyResult v = verify_certificate(c);
        CHECK(v.ok);
        if (!v.ok) MESSAGE(v.message);
        acc.insert(c.target);
      }
      CHECK(acc.dim() == binom(f.ambient(), k));
    }
  }
}

TEST_CASE("a rational certificate needs no enumeration") {
  Field Q = Field::rationals();
  Form f = build_quadratic_odd(Q, 2, 3, 0, {Q.one(), Q.one(), Q.one()});
  CHECK(f.params.N == 7);
  Certificate c = certificate_quadratic_odd(f, 2, {1, 7});
  CHECK(verify_certificate(c).ok);
  Certificate c2 = certificate_quadratic_odd(f, 2, {6, 7});
  CHECK(verify_certificate(c2).ok);
  Certificate c3 = certificate_quadratic_odd(f, 2, {1, 2});
  CHECK(verify_certificate(c3).ok);
}

TEST_CASE("even quadratic certificates, base and shifts") {
  Field F2 = Field::gf(2);
  Form hyp = build_quadratic_even(F2, 2, 0, 0, 0);
  GenDescriptor dc;
  dc.C = {{1, 2}};
  Certificate base = certificate_quadratic_even(hyp, 2, dc);
  CHECK(verify_certificate(base).ok);
  CHECK(trace_contains(base.trace, "ruled-quadric-solve"));

  Form mixed = build_quadratic_even(F2, 2, 1, 0, 0);
  GenDescriptor dab;
  dab.A = {1};
  dab.B = {2};
  Certificate plain = certificate_quadratic_even(mixed, 2, dab);
  CHECK(verify_certificate(plain).ok);
  CHECK(plain.terms.size() == 1);

  Form para = build_quadratic_even(F2, 2, 0, 1, 0);
  GenDescriptor dd;
  dd.A = {1};
  dd.D = {5};
  Certificate kap = certificate_quadratic_even(para, 2, dd);
  CHECK(verify_certificate(kap).ok);
  CHECK(trace_contains(kap.trace, "diagonal-block-shift"));

  GenDescriptor bad;
  bad.A = {1, 9};
  CHECK_THROWS_AS(certificate_quadratic_even(mixed, 2, bad), std::invalid_argument);
}

TEST_CASE("even quadratic certificates, binary-block pairs over GF(2) and GF(4)") {
  // over GF(2) the single-free-pair construction has no valid coefficient,
  // so the exact local solve takes over
  Form f2 = build_quadratic_even(Field::gf(2), 2, 1, 0, 0);
  GenDescriptor dmix;
  dmix.C = {{1, 3}};
  Certificate local = certificate_quadratic_even(f2, 2, dmix);
  CHECK(verify_certificate(local).ok);
  CHECK(trace_contains(local.trace, "local-quadric-solve"));

  Form f4 = build_quadratic_even(Field::gf(2, 2), 2, 1, 0, 0);
  Certificate shortc = certificate_quadratic_even(f4, 2, dmix);
  CHECK(verify_certificate(shortc).ok);
  CHECK(trace_contains(shortc.trace, "mixed-pair-short"));

  // with spare pairs the two-auxiliary construction applies over GF(2) too
  Form wide = build_quadratic_even(Field::gf(2), 4, 1, 0, 0);
  GenDescriptor dwide;
  dwide.C = {{1, 5}};
  Certificate longc = certificate_quadratic_even(wide, 2, dwide);
  CHECK(verify_certificate(longc).ok);
  CHECK(trace_contains(longc.trace, "mixed-pair-long"));

  // binary-block halves in A and B run through the isotropic shift
  GenDescriptor dshift;
  dshift.A = {3};
  dshift.B = {1};
  Certificate shift = certificate_quadratic_even(f2, 2, dshift);
  CHECK(verify_certificate(shift).ok);
  CHECK(trace_contains(shift.trace, "binary-block-shift"));
}

TEST_CASE("even quadratic certificates cover the whole generating set") {
  for (Form f : {build_quadratic_even(Field::gf(2), 2, 0, 0, 0),
                 build_quadratic_even(Field::gf(2), 2, 1, 0, 0),
                 build_quadratic_even(Field::gf(2), 2, 0, 1, 1),
                 build_quadratic_even(Field::gf(2, 2), 2, 1, 0, 0)}) {
    Form fq = polarize(f);
    for (int k = 1; k <= f.params.n; ++k) {
      auto gens = symplectic_genset(f.field, fq.params.n, fq.params.d, k);
      SpanAccumulator targets(f.field, f.ambient(), k);
      for (auto& [desc, w] : gens) {
        Certificate c = certificate_quadratic_even(f, k, desc);
        VerifyResult v = verify_certificate(c);
        CHECK(v.ok);
        if (!v.ok) MESSAGE(v.message);
        CHECK(c.target == w);
        targets.insert(w);
      }
      EmbeddingSpan ss = embedding_span(fq, k);
      CHECK(span_equal(targets, ss.acc));
    }
  }
}

TEST_CASE("tampered certificates fail verification") {
  Field F4 = Field::gf(2, 2);
  Form f = build_hermitian(F4, 2, 0, 0);
  Certificate c = certificate_hermitian(f, 2, {1, 2});
  REQUIRE(verify_certificate(c).ok);

  Certificate bad_coeff = c;
  bad_coeff.terms[0].coeff = F4.add(bad_coeff.terms[0].coeff, F4.one());
  VerifyResult r1 = verify_certificate(bad_coeff);
  CHECK(!r1.ok);
  CHECK(r1.message.find("differs") != std::string::npos);

  Certificate bad_gen = c;
  Vec e1(4, F4.zero()), e2(4, F4.zero());
  e1[0] = F4.one();
  e2[1] = F4.one();
  bad_gen.terms[0].generator = Subspace::from_basis(Matrix::from_rows(F4, {e1, e2}));
  VerifyResult r2 = verify_certificate(bad_gen);
  CHECK(!r2.ok);
  CHECK(r2.message.find("singular") != std::string::npos);
}
