#include <doctest.h>

#include <random>

#include "strata/algebra.hpp"

using namespace strata;

namespace {

const char* kD73 = "p(3,1;2)+p(1,3;2)+p(3,3;1)+p(3,4;2)+p(4,4;2)";
const char* kD74 = "p(3,3;2)+p(4,1;2)+p(4,3;1)+p(1,4;2)+p(3,4;1)+p(4,4;3)";
const char* kD87 = "-p(3,1;2)+p(1,3;2)";

CycMat random_invertible(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    CycMat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Cyclo(d(rng));
    if (!mat_det(m).is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("structure parsing") {
  Algebra d73 = parse_structure(kD73, 4);
  int nonzero = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        if (!d73.at(i, j, k).is_zero()) ++nonzero;
  CHECK(nonzero == 5);
  CHECK(d73.at(2, 0, 1) == Cyclo(1));

  Algebra zero = parse_structure("", 4);
  CHECK(is_associative(zero).associative);

  Algebra d86m = parse_structure("-1*p(2,4;1)+p(4,2;1)", 4);
  CHECK(d86m.at(1, 3, 0) == Cyclo(-1));
  CHECK(d86m.at(3, 1, 0) == Cyclo(1));

  CHECK_THROWS_AS(parse_structure("p(5,1;1)", 4), ParseError);
  CHECK_THROWS_AS(parse_structure("p(1,1)", 4), ParseError);
  CHECK_THROWS_AS(parse_structure("q*p(1,1;1)", 4), ParseError);

  // parameters substitute into coefficients
  Algebra with_params =
      parse_structure("p*p(4,2;1)+q*p(2,4;1)", 4, {{"p", Cyclo(2)}, {"q", Cyclo(3)}});
  CHECK(with_params.at(3, 1, 0) == Cyclo(2));
  CHECK(with_params.at(1, 3, 0) == Cyclo(3));
}

TEST_CASE("render round trip") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 10; ++t) {
    Algebra a(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) a.at(i, j, k) = Cyclo(d(rng));
    Algebra b = parse_structure(a.render(), 3);
    CHECK(a == b);
  }
}

TEST_CASE("associativity") {
  CHECK(is_associative(parse_structure(kD73, 4)).associative);
  CHECK(is_associative(parse_structure("", 4)).associative);
  // d(e1,e1)=e2, d(e2,e1)=e1 is not associative: witness (e1,e1,e1)
  auto rep = is_associative(parse_structure("p(1,1;2)+p(2,1;1)", 2));
  CHECK_FALSE(rep.associative);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0] == std::array<int, 3>{0, 0, 0});
}

TEST_CASE("commutativity") {
  CHECK(is_commutative(parse_structure(kD74, 4)));
  CHECK_FALSE(is_commutative(parse_structure(kD73, 4)));
  // d78 members are never commutative
  for (auto [p, q] : {std::pair{1, 1}, {2, 5}, {1, 0}}) {
    Algebra a = parse_structure(
        "p(3,3;2)+p*p(4,1;2)+q*p(1,4;2)+p(3,4;2)+p(4,4;2)", 4,
        {{"p", Cyclo(p)}, {"q", Cyclo(q)}});
    CHECK_FALSE(is_commutative(a));
  }
}

TEST_CASE("opposite") {
  Algebra d74 = parse_structure(kD74, 4);
  CHECK(opposite(d74) == d74);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-2, 2);
  Algebra a(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) a.at(i, j, k) = Cyclo(d(rng));
  CHECK(opposite(opposite(a)) == a);
}

TEST_CASE("change of basis") {
  Algebra d73 = parse_structure(kD73, 4);
  CHECK(change_of_basis(d73, cyc_identity(4)) == d73);
  std::mt19937 rng(23);
  CycMat g = random_invertible(4, rng);
  Algebra moved = change_of_basis(d73, g);
  CHECK(is_associative(moved).associative);
  Algebra back = change_of_basis(moved, *mat_inverse(g));
  CHECK(back == d73);
  CHECK_THROWS(change_of_basis(d73, CycMat::Constant(4, 4, Cyclo(0))));
}

TEST_CASE("power filtration") {
  auto f87 = power_subspace_dims(parse_structure(kD87, 4));
  CHECK(f87.dims == std::vector<int>{4, 1, 0});
  CHECK(f87.nilpotent);
  CHECK(f87.index == 3);

  auto fz = power_subspace_dims(parse_structure("", 4));
  CHECK(fz.dims == std::vector<int>{4, 0});
  CHECK(fz.index == 2);

  auto f74 = power_subspace_dims(parse_structure(kD74, 4));
  CHECK(f74.dims == std::vector<int>{4, 3, 2, 1, 0});

  // a unital-like non-nilpotent structure stabilizes
  auto fu = power_subspace_dims(parse_structure("p(1,1;1)", 1));
  CHECK_FALSE(fu.nilpotent);
}

TEST_CASE("kernel and center") {
  Algebra d73 = parse_structure(kD73, 4);
  Subspace k73 = annihilator_kernel(d73);
  CHECK(k73.dim() == 1);
  CHECK(k73.rows(0, 1) == Cyclo(1));  // <e2>

  Algebra d87 = parse_structure(kD87, 4);
  Subspace k87 = annihilator_kernel(d87);
  CHECK(k87.dim() == 2);
  Subspace c87 = center(d87);
  CHECK(c87.dim() == 2);
  CHECK(subspaces_equal(k87.rows, c87.rows));

  Algebra zero = parse_structure("", 4);
  CHECK(annihilator_kernel(zero).dim() == 4);
  CHECK(center(parse_structure(kD74, 4)).dim() == 4);

  // kernel basis vectors kill everything
  for (long r = 0; r < k73.rows.rows(); ++r) {
    CycVec v = mat_transpose(k73.rows.row(r));
    for (int i = 0; i < 4; ++i) {
      CycVec ei = CycVec::Constant(4, Cyclo(0));
      ei(i) = Cyclo(1);
      CycVec left = d73.multiply(v, ei), right = d73.multiply(ei, v);
      for (int k = 0; k < 4; ++k) {
        CHECK(left(k).is_zero());
        CHECK(right(k).is_zero());
      }
    }
  }
}

TEST_CASE("core") {
  Algebra d73 = parse_structure(kD73, 4);
  Algebra core73 = core_of(d73);
  CHECK(core73.dim() == 3);
  // core of d73 is the one-relation algebra x*x = y (d20(0:0) shape):
  // exactly one nonzero structure constant
  int nz = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!core73.at(i, j, k).is_zero()) ++nz;
  CHECK(nz == 1);

  CHECK(core_of(parse_structure("", 3)).dim() == 0);
  CHECK_THROWS(core_of(parse_structure("p(1,1;1)", 1)));

  // invariance: conjugated algebra has isomorphic core data (same dims)
  std::mt19937 rng(31);
  CycMat g = random_invertible(4, rng);
  Algebra moved = change_of_basis(d73, g);
  CHECK(annihilator_kernel(moved).dim() == 1);
  CHECK(core_of(moved).dim() == 3);
}
