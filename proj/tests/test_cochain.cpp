#include <doctest.h>

#include <random>

#include "strata/cochain.hpp"

using namespace strata;

namespace {

const char* kD73 = "p(3,1;2)+p(1,3;2)+p(3,3;1)+p(3,4;2)+p(4,4;2)";
const char* kD87 = "-p(3,1;2)+p(1,3;2)";

Cochain random_cochain(int arity, int dim, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  Cochain c(arity, dim);
  for (size_t f = 0; f < c.input_count(); ++f)
    for (int k = 0; k < dim; ++k) c.coeff(f, k) = Cyclo(d(rng));
  return c;
}

}  // namespace

TEST_CASE("bracket encodes associativity") {
  Algebra d73 = parse_structure(kD73, 4);
  Cochain d = Cochain::from_algebra(d73);
  CHECK(gbracket(d, d).is_zero());

  Algebra bad = parse_structure("p(1,1;2)+p(2,1;1)", 2);
  Cochain db = Cochain::from_algebra(bad);
  CHECK_FALSE(gbracket(db, db).is_zero());
}

TEST_CASE("bracket with a 0-cochain is the commutator with a vector") {
  Algebra d73 = parse_structure(kD73, 4);
  Cochain d = Cochain::from_algebra(d73);
  Cochain v(0, 4);
  v.coeff(0, 2) = Cyclo(1);  // v = e3
  Cochain dv = gbracket(d, v);
  REQUIRE(dv.arity() == 1);
  // [d, v](a) = d(v, a) - d(a, v)
  for (int a = 0; a < 4; ++a) {
    CycVec ea = CycVec::Constant(4, Cyclo(0));
    ea(a) = Cyclo(1);
    CycVec ve = CycVec::Constant(4, Cyclo(0));
    ve(2) = Cyclo(1);
    CycVec want = d73.multiply(ve, ea) - d73.multiply(ea, ve);
    for (int k = 0; k < 4; ++k) CHECK(dv.coeff(size_t(a), k) == want(k));
  }
}

TEST_CASE("graded antisymmetry and Jacobi on random cochains") {
  std::mt19937 rng(3);
  for (int t = 0; t < 4; ++t) {
    Cochain a = random_cochain(2, 2, rng);
    Cochain b = random_cochain(1, 2, rng);
    Cochain c = random_cochain(2, 2, rng);
    // [a,b] = -(-1)^{(m-1)(n-1)} [b,a]
    {
      Cochain ab = gbracket(a, b);
      Cochain ba = gbracket(b, a);
      // m=2, n=1: sign +1 -> ab = -ba... (-1)^{(m-1)(n-1)} = (-1)^0 = 1
      Cochain sum = ab + ba;
      CHECK(sum.is_zero());
    }
    {
      Cochain ac = gbracket(a, c);
      Cochain ca = gbracket(c, a);
      // m=n=2: sign (-1)^1 -> [a,c] = +[c,a]
      CHECK(ac == ca);
    }
    // graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{(|a|)(|b|)}[b,[a,c]]
    // with degrees |a| = m-1
    {
      Cochain lhs = gbracket(a, gbracket(b, c));
      Cochain rhs = gbracket(gbracket(a, b), c);
      int da = a.arity() - 1, db = b.arity() - 1;
      Cochain t2 = gbracket(b, gbracket(a, c));
      if ((da * db) % 2) {
        rhs -= t2;
      } else {
        rhs += t2;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("differential matrices") {
  Algebra zero = parse_structure("", 4);
  CycMat d0z = differential_matrix(zero, 0);
  CHECK(mat_rank(d0z) == 0);

  Algebra d87 = parse_structure(kD87, 4);
  CHECK(mat_rank(differential_matrix(d87, 0)) == 2);

  Algebra d73 = parse_structure(kD73, 4);
  CycMat D0 = differential_matrix(d73, 0);
  CycMat D1 = differential_matrix(d73, 1);
  CycMat prod = D1 * D0;
  bool all0 = true;
  for (long i = 0; i < prod.rows() && all0; ++i)
    for (long j = 0; j < prod.cols(); ++j)
      if (!prod(i, j).is_zero()) {
        all0 = false;
        break;
      }
  CHECK(all0);
}

TEST_CASE("cohomology of d73 and zero algebra") {
  Algebra d73 = parse_structure(kD73, 4);
  auto prof = cohomology_dims(d73, 3);
  CHECK(prof.dims == std::vector<int>{2, 2, 3, 4});

  Algebra zero = parse_structure("", 4);
  auto pz = cohomology_dims(zero, 3);
  CHECK(pz.dims == std::vector<int>{4, 16, 64, 256});
}

TEST_CASE("cocycle and coboundary tests") {
  Algebra d73 = parse_structure(kD73, 4);
  Cochain delta1 =
      Cochain::parse2("-p(1,1;2)-p(2,3;2)-p(3,2;2)+p(3,4;1)+p(4,4;1)", 4);
  CHECK(is_cocycle(d73, delta1));
  CHECK_FALSE(is_coboundary(d73, delta1));

  // D0 of a random vector is always a coboundary and a cocycle
  std::mt19937 rng(5);
  Cochain v = random_cochain(0, 4, rng);
  Cochain dv = gbracket(Cochain::from_algebra(d73), v);
  CHECK(is_cocycle(d73, dv));
  CHECK(is_coboundary(d73, dv));

  Cochain z(2, 4);
  CHECK(is_cocycle(d73, z));
  CHECK(is_coboundary(d73, z));
}

TEST_CASE("represents_basis") {
  Algebra d73 = parse_structure(kD73, 4);
  Cochain delta1 =
      Cochain::parse2("-p(1,1;2)-p(2,3;2)-p(3,2;2)+p(3,4;1)+p(4,4;1)", 4);
  Cochain delta2 = Cochain::parse2(
      "-p(1,1;2)+p(2,3;2)+p(3,2;2)+2*p(3,3;3)+p(3,4;4)+p(4,3;4)", 4);
  Cochain delta3 = Cochain::parse2(
      "-2*p(1,3;4)-2*p(3,1;4)+2*p(3,2;2)+p(1,4;1)+3*p(2,4;2)+p(3,4;3)"
      "-2*p(3,4;4)+p(4,1;1)+3*p(4,2;2)+p(4,3;3)",
      4);
  CHECK(represents_basis(d73, {delta1, delta2, delta3}));
  CHECK_FALSE(represents_basis(d73, {delta1, delta1, delta2}));
  CHECK_FALSE(represents_basis(d73, {delta1, delta2}));  // count != h2
  Cochain nonco = Cochain::parse2("p(1,1;1)", 4);
  CHECK_THROWS(represents_basis(d73, {nonco}));
}

TEST_CASE("cohomology invariant under change of basis") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-2, 2);
  Algebra d87 = parse_structure(kD87, 4);
  for (int t = 0; t < 2; ++t) {
    CycMat g(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = Cyclo(d(rng));
    } while (mat_det(g).is_zero());
    Algebra moved = change_of_basis(d87, g);
    auto p1 = cohomology_dims(d87, 2);
    auto p2 = cohomology_dims(moved, 2);
    CHECK(p1.dims == p2.dims);
  }
}
