#include <random>

#include "doctest.h"
#include "pgrass/exterior.hpp"

using namespace pgrass;

TEST_CASE("colex subset indexing") {
  CHECK(subset_rank({1, 2}) == 0);
  CHECK(subset_rank({3, 4}) == 5);  // greatest of C(4,2)=6 when N=4
  CHECK(subset_unrank(1, 2) == std::vector<int>{1, 3});
  // order for N=4, k=2 is 12, 13, 23, 14, 24, 34
  std::vector<std::vector<int>> expected = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};
  for (int i = 0; i < 6; ++i) CHECK(subset_unrank(i, 2) == expected[i]);
  for (std::int64_t r = 0; r < binom(9, 4); ++r) CHECK(subset_rank(subset_unrank(r, 4)) == r);
  CHECK_THROWS_AS(subset_rank({2, 2}), std::invalid_argument);
}

TEST_CASE("binomial convention") {
  CHECK(binom(5, -1) == 0);
  CHECK(binom(4, 6) == 0);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(10, 5) == 252);
}

TEST_CASE("wedge of basis vectors") {
  Field Q = Field::rationals();
  WedgeVector e1 = WedgeVector::basis(Q, 4, {1});
  WedgeVector e2 = WedgeVector::basis(Q, 4, {2});
  WedgeVector w = wedge(e1, e2);
  CHECK(w.at({1, 2}) == Q.one());
  WedgeVector r = wedge(e2, e1);
  CHECK(r.at({1, 2}) == Q.from_int(-1));
  WedgeVector quad = wedge(WedgeVector::basis(Q, 4, {1, 2}), WedgeVector::basis(Q, 4, {3, 4}));
  CHECK(quad.at({1, 2, 3, 4}) == Q.one());  // even shuffle
  CHECK(wedge(e1, e1).is_zero());
}

TEST_CASE("wedge rejects mismatched operands") {
  Field Q = Field::rationals();
  CHECK_THROWS_AS(wedge(WedgeVector::basis(Q, 4, {1, 2}), WedgeVector::basis(Q, 5, {1, 2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(wedge(WedgeVector::basis(Q, 4, {1, 2, 3}), WedgeVector::basis(Q, 4, {1, 2})),
                  std::invalid_argument);  // grade overflow
}

TEST_CASE("plucker of coordinate and generic subspaces") {
  Field F2 = Field::gf(2);
  Subspace s = Subspace::from_basis(Matrix::from_rows(
      F2, {{F2.one(), F2.zero(), F2.zero(), F2.zero()}, {F2.zero(), F2.zero(), F2.one(), F2.zero()}}));
  WedgeVector p = plucker(s);
  CHECK(p.at({1, 3}) == F2.one());
  std::int64_t nz = 0;
  for (std::int64_t i = 0; i < p.size(); ++i)
    if (!F2.is_zero(p[i])) ++nz;
  CHECK(nz == 1);

  // <e1+e4, e2+e3>: nonzero minors exactly at 12, 13, 24, 34
  Subspace t = Subspace::from_basis(Matrix::from_rows(
      F2, {{F2.one(), F2.zero(), F2.zero(), F2.one()}, {F2.zero(), F2.one(), F2.one(), F2.zero()}}));
  WedgeVector q = plucker(t);
  CHECK(q.at({1, 2}) == F2.one());
  CHECK(q.at({1, 3}) == F2.one());
  CHECK(q.at({2, 4}) == F2.one());
  CHECK(q.at({3, 4}) == F2.one());
  CHECK(q.at({1, 4}) == F2.zero());
  CHECK(q.at({2, 3}) == F2.zero());
}

TEST_CASE("plucker is invariant under basis change, 1000 random trials") {
  std::mt19937 rng(42);
  Field F = Field::gf(3);
  Matrix m = Matrix::from_rows(F, {{F.one(), F.from_int(2), F.zero(), F.one(), F.one()},
                                   {F.zero(), F.one(), F.one(), F.from_int(2), F.zero()},
                                   {F.zero(), F.zero(), F.one(), F.one(), F.from_int(2)}});
  Subspace s = Subspace::from_basis(m);
  WedgeVector p = plucker(s);
  int trials = 0;
  while (trials < 1000) {
    Matrix g(F, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.at(i, j) = F.element((std::int64_t)(rng() % 3));
    if (F.is_zero(det(g))) continue;
    ++trials;
    CHECK(plucker(Subspace::from_basis(mul(g, m))) == p);
  }
}

TEST_CASE("wedge is graded-anticommutative and associative on random input") {
  std::mt19937 rng(5);
  Field F = Field::gf(5);
  auto rand_wedge = [&](int grade) {
    WedgeVector w(F, 6, grade);
    for (std::int64_t i = 0; i < w.size(); ++i) w[i] = F.element((std::int64_t)(rng() % 5));
    return w;
  };
  for (int trial = 0; trial < 50; ++trial) {
    for (auto [h, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
      WedgeVector u = rand_wedge(h), w = rand_wedge(k);
      WedgeVector uw = wedge(u, w), wu = wedge(w, u);
      if ((h * k) % 2 == 1) wu = wu.scaled(F.neg(F.one()));
      CHECK(uw == wu);
    }
    WedgeVector a = rand_wedge(1), b = rand_wedge(2), c = rand_wedge(2);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("plucker of a direct sum matches the wedge up to the shuffle sign") {
  Field F3 = Field::gf(3);
  Subspace a = Subspace::from_basis(
      Matrix::from_rows(F3, {{F3.zero(), F3.zero(), F3.one(), F3.zero(), F3.zero()}}));
  Subspace b = Subspace::from_basis(Matrix::from_rows(
      F3, {{F3.one(), F3.from_int(2), F3.zero(), F3.zero(), F3.zero()},
           {F3.zero(), F3.zero(), F3.zero(), F3.one(), F3.one()}}));
  std::vector<Vec> rows = {a.basis().row(0), b.basis().row(0), b.basis().row(1)};
  auto [sum, scale] = plucker_of_rows(Matrix::from_rows(F3, rows));
  CHECK(sum.dim() == 3);
  WedgeVector lhs = wedge(plucker(a), plucker(b));
  CHECK(lhs == plucker(sum).scaled(scale));
}

TEST_CASE("span accumulator") {
  Field F2 = Field::gf(2);
  SpanAccumulator acc(F2, 4, 2);
  WedgeVector e12 = WedgeVector::basis(F2, 4, {1, 2});
  CHECK(acc.insert(e12));
  CHECK(!acc.insert(e12));
  CHECK(acc.dim() == 1);
  for (std::int64_t i = 0; i < binom(4, 2); ++i) {
    WedgeVector w(F2, 4, 2);
    w[i] = F2.one();
    acc.insert(w);
  }
  CHECK(acc.dim() == 6);
  CHECK(acc.saturated());
}

TEST_CASE("span equality is an equivalence on test triples") {
  Field F3 = Field::gf(3);
  auto mk = [&](std::vector<std::vector<int>> subsets) {
    SpanAccumulator acc(F3, 5, 2);
    for (auto& t : subsets) acc.insert(WedgeVector::basis(F3, 5, t));
    return acc;
  };
  SpanAccumulator a = mk({{1, 2}, {1, 3}});
  SpanAccumulator b = mk({{1, 3}, {1, 2}});
  SpanAccumulator c = mk({{1, 2}, {1, 3}, {2, 3}});
  CHECK(span_equal(a, a));
  CHECK(span_equal(a, b));
  CHECK(span_equal(b, a));
  CHECK(!span_equal(a, c));
  // combination of generators lands in the span
  WedgeVector comb = WedgeVector::basis(F3, 5, {1, 2}).scaled(F3.from_int(2));
  comb = comb.add(WedgeVector::basis(F3, 5, {1, 3}));
  CHECK(a.contains(comb));
}

TEST_CASE("partial accumulators merge associatively") {
  Field F3 = Field::gf(3);
  std::vector<WedgeVector> vs;
  std::mt19937 rng(17);
  for (int i = 0; i < 12; ++i) {
    WedgeVector w(F3, 5, 2);
    for (std::int64_t j = 0; j < w.size(); ++j) w[j] = F3.element((std::int64_t)(rng() % 3));
    vs.push_back(w);
  }
  SpanAccumulator whole(F3, 5, 2);
  for (const auto& w : vs) whole.insert(w);
  SpanAccumulator left(F3, 5, 2), right(F3, 5, 2);
  for (size_t i = 0; i < vs.size(); ++i) (i % 2 ? left : right).insert(vs[i]);
  SpanAccumulator ab = left;
  ab.merge(right);
  SpanAccumulator ba = right;
  ba.merge(left);
  CHECK(span_equal(ab, whole));
  CHECK(span_equal(ba, whole));
  CHECK(span_equal(ab, ba));
}

TEST_CASE("wedge vector text dump") {
  Field F3 = Field::gf(3);
  WedgeVector w = WedgeVector::basis(F3, 4, {1, 2});
  w = w.add(WedgeVector::basis(F3, 4, {3, 4}).scaled(F3.from_int(2)));
  CHECK(w.dump() == "2 1,2:1 3,4:2");
}
