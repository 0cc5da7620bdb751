#include <doctest.h>

#include <random>

#include "strata/bilinear.hpp"
#include "strata/expr.hpp"

using namespace strata;

namespace {

CycMat m2(int a, int b, int c, int d) {
  CycMat m(2, 2);
  m(0, 0) = Cyclo(a);
  m(0, 1) = Cyclo(b);
  m(1, 0) = Cyclo(c);
  m(1, 1) = Cyclo(d);
  return m;
}

CycMat rand_inv(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    CycMat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Cyclo(d(rng));
    if (!mat_det(m).is_zero()) return m;
  }
}

bool class2_equal(const Canon2& a, const Canon2& b) {
  if (a.tag != b.tag) return false;
  if (a.tag != Canon2Tag::Bpq) return true;
  if (a.pq && b.pq)
    return a.pq->first == b.pq->first && a.pq->second == b.pq->second;
  if (a.cosquare_trace && b.cosquare_trace)
    return *a.cosquare_trace == *b.cosquare_trace;
  return false;
}

}  // namespace

TEST_CASE("canon2 basics") {
  // alternating form
  Canon2 c = canon2(m2(0, 1, -1, 0));
  CHECK(c.tag == Canon2Tag::C);
  REQUIRE(c.witness.has_value());
  CHECK(*c.witness == cyc_identity(2));

  Canon2 z = canon2(m2(0, 0, 0, 0));
  CHECK(z.tag == Canon2Tag::Zero);

  // [[2,0],[0,0]] -> B(0:0) with witness diag(1/sqrt2, 1)
  Canon2 r1 = canon2(m2(2, 0, 0, 0));
  CHECK(r1.tag == Canon2Tag::Bpq);
  REQUIRE(r1.pq.has_value());
  CHECK(r1.pq->first == Cyclo(0));
  CHECK(r1.pq->second == Cyclo(0));
  REQUIRE(r1.witness.has_value());
  CycMat chk = mat_transpose(*r1.witness) * m2(2, 0, 0, 0) * *r1.witness;
  CHECK(chk == r1.canonical);
}

TEST_CASE("canon2 fixed points and class function") {
  std::mt19937 rng(5);
  for (auto [p, q] : {std::pair{1, 2}, {1, -1}, {1, 0}, {0, 0}, {1, 1}, {2, 5}}) {
    CycMat b = canonical2_matrix(Canon2Tag::Bpq, Cyclo(p), Cyclo(q));
    Canon2 c = canon2(b);
    REQUIRE(c.pq.has_value());
    // applying canon2 to its own canonical output returns it unchanged
    Canon2 again = canon2(c.canonical);
    REQUIRE(again.pq.has_value());
    CHECK(again.pq->first == c.pq->first);
    CHECK(again.pq->second == c.pq->second);
    CHECK(again.canonical == c.canonical);
    // class function under random congruences
    for (int t = 0; t < 25; ++t) {
      CycMat g = rand_inv(2, rng);
      Canon2 moved = canon2(mat_transpose(g) * b * g);
      CHECK(class2_equal(moved, c));
    }
  }
}

TEST_CASE("canon2 sigma2 reduction identifies swapped parameters") {
  Canon2 a = canon2(canonical2_matrix(Canon2Tag::Bpq, Cyclo(1), Cyclo(2)));
  Canon2 b = canon2(canonical2_matrix(Canon2Tag::Bpq, Cyclo(2), Cyclo(1)));
  CHECK(class2_equal(a, b));
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
}

TEST_CASE("are_cogredient 2x2") {
  CycMat b12 = canonical2_matrix(Canon2Tag::Bpq, Cyclo(1), Cyclo(2));
  CycMat b21 = canonical2_matrix(Canon2Tag::Bpq, Cyclo(2), Cyclo(1));
  auto v = are_cogredient(b12, b21);
  REQUIRE(v.tag == CogredienceVerdict::Tag::Witness);
  CHECK(mat_transpose(*v.p) * b12 * *v.p == b21);

  CycMat b13 = canonical2_matrix(Canon2Tag::Bpq, Cyclo(1), Cyclo(3));
  auto r = are_cogredient(b12, b13);
  CHECK(r.tag != CogredienceVerdict::Tag::Witness);

  // random congruent pair
  std::mt19937 rng(11);
  CycMat g = rand_inv(2, rng);
  auto w = are_cogredient(b12, mat_transpose(g) * b12 * g);
  REQUIRE(w.tag == CogredienceVerdict::Tag::Witness);
}

TEST_CASE("canon3 canonical type recognition") {
  for (Canon3Tag tag : {Canon3Tag::B3, Canon3Tag::B4, Canon3Tag::B5, Canon3Tag::B6}) {
    CycMat b = canonical3_matrix(tag, Cyclo(0), Cyclo(0));
    Canon3 c = canon3(b);
    CHECK(c.tag == tag);
    if (c.witness)
      CHECK(mat_transpose(*c.witness) * b * *c.witness == c.canonical);
  }
  Canon3 b1 = canon3(canonical3_matrix(Canon3Tag::B1, Cyclo(2), Cyclo(5)));
  CHECK(b1.tag == Canon3Tag::B1);
  REQUIRE(b1.pq.has_value());
  Canon3 b2 = canon3(canonical3_matrix(Canon3Tag::B2, Cyclo(2), Cyclo(5)));
  CHECK(b2.tag == Canon3Tag::B2);

  // B1(0:0) = diag(1,1,0) lands in the B2(1:1) class (the flagged paper typo)
  CycMat d110 = parse_matrix("1,0,0;0,1,0;0,0,0");
  Canon3 c = canon3(d110);
  CHECK(c.tag == Canon3Tag::B2);
  REQUIRE(c.pq.has_value());
  CHECK(c.pq->first == Cyclo(1));
  CHECK(c.pq->second == Cyclo(1));
}

TEST_CASE("the B-to-C correspondence is verified by the oracle") {
  auto C1 = [](int p, int q) {
    CycMat m = parse_matrix("0,0,0;0,1,1;0,0,1");
    m(0, 2) = Cyclo(q);
    m(2, 0) = Cyclo(p);
    return m;
  };
  CycMat C2 = parse_matrix("0,0,5;0,0,0;2,0,1");
  CycMat C3 = parse_matrix("0,1,0;-1,0,0;0,0,1");
  CycMat C4 = parse_matrix("0,1,1;-1,0,0;0,0,0");
  CycMat C5 = parse_matrix("0,1,0;1,1,0;0,0,1");
  CycMat C6 = parse_matrix("0,1,0;-1,0,0;0,0,0");

  struct Pair {
    CycMat b, c;
    const char* name;
  };
  std::vector<Pair> pairs = {
      {canonical3_matrix(Canon3Tag::B1, Cyclo(2), Cyclo(5)), C1(2, 5), "B1~C1"},
      {canonical3_matrix(Canon3Tag::B2, Cyclo(2), Cyclo(5)), C2, "B2~C2"},
      {canonical3_matrix(Canon3Tag::B3, Cyclo(0), Cyclo(0)), C3, "B3~C3"},
      {canonical3_matrix(Canon3Tag::B4, Cyclo(0), Cyclo(0)), C6, "B4~C6"},
      {canonical3_matrix(Canon3Tag::B5, Cyclo(0), Cyclo(0)), C4, "B5~C4"},
      {canonical3_matrix(Canon3Tag::B6, Cyclo(0), Cyclo(0)), C1(1, 1), "B6~C1(1:1)"},
      {canonical3_matrix(Canon3Tag::B1, Cyclo(1), Cyclo(1)), C5, "B1(1:1)~C5"},
  };
  for (const auto& pr : pairs) {
    auto v = are_cogredient(pr.b, pr.c, 24, 7);
    INFO(pr.name);
    REQUIRE(v.tag == CogredienceVerdict::Tag::Witness);
    CHECK(mat_transpose(*v.p) * pr.b * *v.p == pr.c);
  }
  // the paper's "B5 ~ C5" claim is refuted (rank differs); C4 is the match
  auto bad = are_cogredient(canonical3_matrix(Canon3Tag::B5, Cyclo(0), Cyclo(0)),
                            C5);
  CHECK(bad.tag == CogredienceVerdict::Tag::Refuted);
  CHECK(bad.detail == "rank");
}

TEST_CASE("scaled congruence finds the sqrt6 witness") {
  // forms of d(7:-2) and the (1:2) member of the 5-term family
  CycMat bd = parse_matrix("0,1,0;0,1,-2;7,0,0");
  CycMat b8 = parse_matrix("0,0,2;0,1,1;1,0,1");
  auto r = scaled_congruence(bd, b8);
  REQUIRE(r.has_value());
  CycMat lhs = mat_transpose(r->first) * bd * r->first;
  CycMat rhs = b8;
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) rhs(i, j) = rhs(i, j) * r->second;
  CHECK(lhs == rhs);
}

TEST_CASE("numeric congruence search returns candidates for possible pairs") {
  CycMat b = canonical3_matrix(Canon3Tag::B4, Cyclo(0), Cyclo(0));
  CycMat c = parse_matrix("0,1,0;-1,0,0;0,0,0");
  auto got = congruence_numeric_search(b, c, 8, 3);
  CHECK(got.has_value());
  // impossible pair: rank differs
  CycMat c2 = parse_matrix("0,1,0;1,1,0;0,0,1");
  auto none = congruence_numeric_search(b, c2, 4, 3);
  CHECK_FALSE(none.has_value());
}
