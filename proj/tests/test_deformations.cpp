#include <doctest.h>

#include "strata/catalog.hpp"
#include "strata/deformations.hpp"

using namespace strata;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

std::vector<Cochain> d73_basis() {
  const CatalogEntry* e = cat().find("d73");
  std::vector<Cochain> out;
  std::stringstream ss(e->get("h2_basis"));
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(Cochain::parse2(tok, 4));
  return out;
}

}  // namespace

TEST_CASE("verify_h2_data for d73") {
  Algebra d73 = cat().resolve("d73");
  auto basis = d73_basis();
  REQUIRE(basis.size() == 3);
  auto rep = verify_h2_data(d73, basis);
  CHECK(rep.pass());

  // duplicated element fails independence
  auto rep2 = verify_h2_data(d73, {basis[0], basis[0], basis[1]});
  CHECK_FALSE(rep2.pass());

  // appending a coboundary image fails
  Cochain v(0, 4);
  v.coeff(0, 2) = Cyclo(1);
  Cochain db = gbracket(Cochain::from_algebra(d73), v);
  auto rep3 = verify_h2_data(d73, {basis[0], basis[1], db});
  CHECK_FALSE(rep3.pass());
}

TEST_CASE("the displayed one-parameter family is associative identically") {
  const CatalogEntry* e = cat().find("d73");
  DeformationFamily fam =
      parse_structure_family(e->get("deformation_family"), 4, {"t2"});
  CHECK(family_associative(fam, 2));
  // at t2 = 0 it is d73
  CHECK(fam.evaluate({{"t2", Cyclo(0)}}) == cat().resolve("d73"));
  // at a nonzero parameter it leaves the stratum
  Algebra moved = fam.evaluate({{"t2", Cyclo(1)}});
  CHECK(is_associative(moved).associative);
  CHECK_FALSE(power_subspace_dims(moved).nilpotent);

  // d + t*phi for a non-cocycle phi is not a family
  DeformationFamily bad = parse_structure_family(
      e->get("structure") + "+t1*p(1,1;1)", 4, {"t1"});
  CHECK_FALSE(family_associative(bad, 1));
}

TEST_CASE("obstruction relations of d73") {
  Algebra d73 = cat().resolve("d73");
  auto basis = d73_basis();
  auto rel2 = obstruction_relations(d73, basis, 2);
  REQUIRE(rel2.relations.size() == 4);  // dim H^3
  // quadratic span = <t3^2, t2*t3>
  std::vector<Poly> target2 = {parse_expr("t3^2", {"t1", "t2", "t3"}),
                               parse_expr("t2*t3", {"t1", "t2", "t3"})};
  CHECK(quadratic_spans_equal(rel2.relations, target2, {"t1", "t2", "t3"}));

  auto rel3 = obstruction_relations(d73, basis, 3);
  std::vector<Poly> paper = {parse_expr("t3^2", {"t1", "t2", "t3"}),
                             parse_expr("t2*t3", {"t1", "t2", "t3"}),
                             parse_expr("t2*t3", {"t1", "t2", "t3"}),
                             parse_expr("t2^2*(t1+t3)", {"t1", "t2", "t3"})};
  CHECK(truncated_ideals_equal(rel3.relations, paper, {"t1", "t2", "t3"}));
  // the relations vanish on the sampled solution locus {t3=0, t2=0} and
  // {t3=0, t1=0}
  for (const Poly& r : rel3.relations) {
    CHECK(r.evaluate({{"t1", Cyclo(5)}, {"t2", Cyclo(0)}, {"t3", Cyclo(0)}})
              .is_zero());
    CHECK(r.evaluate({{"t1", Cyclo(0)}, {"t2", Cyclo(3)}, {"t3", Cyclo(0)}})
              .is_zero());
  }
}

TEST_CASE("unobstructed algebra gives empty quadratic relations") {
  // d74 has all relations vanishing at this order (fourth order versal with
  // vanishing relations); its quadratic parts must be zero
  Algebra d74 = cat().resolve("d74");
  auto prof = cohomology_dims(d74, 3);
  REQUIRE(prof.dims[2] == 4);
  // build an H^2 basis generically: take cocycles completing the basis
  // (skip: use represents_basis machinery through a kernel computation)
  CycMat d2 = differential_matrix(d74, 2);
  CycMat d1 = differential_matrix(d74, 1);
  auto z = kernel_basis(d2);
  std::vector<Cochain> basis;
  CycMat accum = mat_transpose(d1);  // rows span B^2
  CycMat rows = row_space_basis(accum);
  // hmm: B^2 = column space of D1; use its transpose rows
  CycMat d1cols(long(z.empty() ? 0 : z[0].size()), 0);
  std::vector<CycVec> chosen;
  CycMat work(0, d2.cols());
  {
    // start from the coboundary space
    CycMat d1t = mat_transpose(d1);
    work = row_space_basis(d1t);
  }
  for (const auto& v : z) {
    if (int(chosen.size()) == prof.dims[2]) break;
    CycMat test(work.rows() + 1, d2.cols());
    test.block(0, 0, work.rows(), d2.cols()) = work;
    for (long c = 0; c < d2.cols(); ++c) test(work.rows(), c) = v(c);
    if (mat_rank(test) == test.rows()) {
      chosen.push_back(v);
      work = test;
    }
  }
  REQUIRE(int(chosen.size()) == 4);
  for (const auto& v : chosen) basis.push_back(Cochain::unflatten(v, 2, 4));
  auto rel = obstruction_relations(d74, basis, 2);
  for (const Poly& r : rel.relations) CHECK(r.is_zero());
}

TEST_CASE("quadratic obstructions are basis-covariant") {
  Algebra d73 = cat().resolve("d73");
  auto basis = d73_basis();
  // recombine: delta1' = delta1 + delta2, delta2' = delta2, delta3' = delta3
  std::vector<Cochain> basis2 = basis;
  basis2[0] += basis[1];
  auto relA = obstruction_relations(d73, basis, 2);
  auto relB = obstruction_relations(d73, basis2, 2);
  // substitution t1 -> t1, t2 -> t1 + t2, t3 -> t3 maps A-relations to B
  // (the coordinates transform contravariantly); compare spans instead
  std::vector<Poly> a2, b2;
  for (const auto& r : relA.relations) a2.push_back(r);
  for (const auto& r : relB.relations) b2.push_back(r);
  // spans of quadratic parts agree after the substitution of the B-basis:
  // with this triangular recombination the quadratic ideals coincide as
  // spans in t2,t3 only when substituted; check via evaluation
  std::map<std::string, Cyclo> pt{{"t1", Cyclo(2)}, {"t2", Cyclo(3)}, {"t3", Cyclo(0)}};
  // on the locus t3=0 all relations of both vanish (ideal <t3^2, t2 t3>)
  for (const auto& r : a2) CHECK(r.evaluate(pt).is_zero());
  for (const auto& r : b2) CHECK(r.evaluate(pt).is_zero());
}
