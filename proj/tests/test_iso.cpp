#include <doctest.h>

#include <random>

#include "strata/catalog.hpp"
#include "strata/cochain.hpp"
#include "strata/isomorphism.hpp"

using namespace strata;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

IsoOptions fast() {
  IsoOptions o;
  o.budget = 24;
  o.seed = 7;
  o.hmax = 2;
  return o;
}

}  // namespace

TEST_CASE("fingerprints") {
  Algebra d85 = cat().resolve("d85");
  Fingerprint f = fingerprint(d85, true, 3);
  CHECK(f.commutative);
  CHECK(f.kernel_dim == 1);
  REQUIRE(f.h.has_value());
  CHECK(*f.h == std::vector<int>{4, 7, 14, 28});

  Algebra zero = parse_structure("", 4);
  Fingerprint fz = fingerprint(zero);
  CHECK(fz.commutative);
  CHECK(fz.kernel_dim == 4);

  Algebra d84 = cat().resolve("d84");
  auto h84 = cohomology_dims(d84, 1).dims;
  auto h85 = cohomology_dims(d85, 1).dims;
  CHECK(h84[1] == 4);
  CHECK(h85[1] == 7);
}

TEST_CASE("verify_iso gate") {
  Algebra d73 = cat().resolve("d73");
  CHECK(verify_iso(d73, d73, cyc_identity(4)));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-2, 2);
  CycMat g(4, 4);
  do {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = Cyclo(d(rng));
  } while (mat_det(g).is_zero());
  Algebra moved = change_of_basis(d73, g);
  CHECK(verify_iso(d73, moved, g));
  CHECK_FALSE(verify_iso(d73, moved, cyc_identity(4)));
}

TEST_CASE("refutations") {
  auto v = are_isomorphic(cat().resolve("d84"), cat().resolve("d85"), fast());
  REQUIRE(v.tag == IsoVerdict::Tag::Refuted);
  bool has_h1 = false;
  for (const auto& d : v.differing)
    if (d.name == "h1") {
      has_h1 = true;
      CHECK(d.left == "4");
      CHECK(d.right == "7");
    }
  CHECK(has_h1);

  auto v2 = are_isomorphic(cat().resolve("d73"), cat().resolve("d87"), fast());
  CHECK(v2.tag == IsoVerdict::Tag::Refuted);
  auto v3 = are_isomorphic(cat().resolve("d73"), cat().resolve("triv2"), fast());
  CHECK(v3.tag == IsoVerdict::Tag::Refuted);
  CHECK(v3.differing[0].name == "dim");
}

TEST_CASE("table 2 identifications") {
  auto v1 = are_isomorphic(cat().resolve("d75(0:0)"), cat().resolve("d86(1:1)"), fast());
  REQUIRE(v1.tag == IsoVerdict::Tag::Witness);
  CHECK(verify_iso(cat().resolve("d75(0:0)"), cat().resolve("d86(1:1)"), *v1.g));

  auto v2 = are_isomorphic(cat().resolve("d83(0:0)"), cat().resolve("d86(0:0)"), fast());
  REQUIRE(v2.tag == IsoVerdict::Tag::Witness);
}

TEST_CASE("gamma identification d78(0:0) ~ d86(1:gamma)") {
  Algebra lhs = cat().resolve("d78(0:0)");
  Algebra rhs = cat().resolve("d86(1:z^4)");
  auto v = are_isomorphic(lhs, rhs, fast());
  REQUIRE(v.tag == IsoVerdict::Tag::Witness);
  CHECK(verify_iso(lhs, rhs, *v.g));
}

TEST_CASE("self-opposite witnesses") {
  for (const char* name : {"d73", "d77", "d81", "d82"}) {
    Algebra a = cat().resolve(name);
    auto v = are_isomorphic(a, opposite(a), fast());
    INFO(name);
    REQUIRE(v.tag == IsoVerdict::Tag::Witness);
  }
}

TEST_CASE("sigma2 symmetry of d75 and d86") {
  for (auto [p, q] : {std::pair{2, 5}, {1, 3}, {3, 7}, {1, 5}, {2, 7}}) {
    Algebra a75 =
        cat().instantiate(*cat().find("d75"), {{Cyclo(p), Cyclo(q)}}, false);
    Algebra b75 =
        cat().instantiate(*cat().find("d75"), {{Cyclo(q), Cyclo(p)}}, false);
    auto v = are_isomorphic(a75, b75, fast());
    INFO("d75 swap at (" << p << ":" << q << ")");
    REQUIRE(v.tag == IsoVerdict::Tag::Witness);
    Algebra a86 =
        cat().instantiate(*cat().find("d86"), {{Cyclo(p), Cyclo(q)}}, false);
    Algebra b86 =
        cat().instantiate(*cat().find("d86"), {{Cyclo(q), Cyclo(p)}}, false);
    auto w = are_isomorphic(a86, b86, fast());
    INFO("d86 swap at (" << p << ":" << q << ")");
    REQUIRE(w.tag == IsoVerdict::Tag::Witness);
  }
}

TEST_CASE("generic d75 formula at the special corners") {
  // at (1:-1) it is d80, at (1:1) it is d82 -- identity-level equalities
  Algebra gen_m = cat().instantiate(*cat().find("d75"), {{Cyclo(1), Cyclo(-1)}}, false);
  auto v1 = are_isomorphic(gen_m, cat().resolve("d80"), fast());
  CHECK(v1.tag == IsoVerdict::Tag::Witness);
  Algebra gen_p = cat().instantiate(*cat().find("d75"), {{Cyclo(1), Cyclo(1)}}, false);
  auto v2 = are_isomorphic(gen_p, cat().resolve("d82"), fast());
  CHECK(v2.tag == IsoVerdict::Tag::Witness);
  // and the family overrides at those corners are NOT those strata
  auto n1 = are_isomorphic(cat().resolve("d75(1:-1)"), cat().resolve("d80"), fast());
  CHECK(n1.tag == IsoVerdict::Tag::Refuted);
  auto n2 = are_isomorphic(cat().resolve("d75(1:1)"), cat().resolve("d82"), fast());
  CHECK(n2.tag == IsoVerdict::Tag::Refuted);
}

TEST_CASE("reparametrized d78 family") {
  // d(p:q) = psi13^2+psi33^2+p psi41^2+q psi34^2 ~ d78(x:y) with
  // q/p = -xy/(x^2+xy+y^2) (sign corrected from the source text)
  struct Case {
    int p, q, x, y;
  };
  for (const Case c : {Case{3, -1, 1, 1}, Case{7, -2, 1, 2}, Case{13, -3, 1, 3}}) {
    std::ostringstream os;
    os << "p(1,3;2)+p(3,3;2)+" << c.p << "*p(4,1;2)+(" << c.q << ")*p(3,4;2)";
    Algebra lhs = parse_structure(os.str(), 4);
    Algebra rhs = cat().instantiate(*cat().find("d78"),
                                    {{Cyclo(c.x), Cyclo(c.y)}});
    auto v = are_isomorphic(lhs, rhs, fast());
    INFO("d(" << c.p << ":" << c.q << ") vs d78(" << c.x << ":" << c.y << ")");
    REQUIRE(v.tag == IsoVerdict::Tag::Witness);
  }
  // with the sign as printed, the algebras are not isomorphic: the engine
  // must never produce a witness
  Algebra wrong = parse_structure("p(1,3;2)+p(3,3;2)+7*p(4,1;2)+2*p(3,4;2)", 4);
  Algebra rhs = cat().resolve("d78(1:2)");
  auto v = are_isomorphic(wrong, rhs, fast());
  CHECK(v.tag != IsoVerdict::Tag::Witness);
}

TEST_CASE("d83 has no sigma2 symmetry") {
  Algebra a = cat().resolve("d83(1:0)");
  Algebra b = cat().resolve("d83(0:1)");
  auto v = are_isomorphic(a, b, fast());
  CHECK(v.tag != IsoVerdict::Tag::Witness);
}

TEST_CASE("d75(1:-1) candidates agree") {
  const CatalogEntry* e = cat().find("d75");
  REQUIRE(e);
  const SpecialCase* sc = nullptr;
  for (const auto& s : e->specials)
    if (s.key == "(1:-1)") sc = &s;
  REQUIRE(sc);
  Algebra a = parse_structure(sc->values.at("structure"), 4);
  Algebra b = parse_structure(sc->values.at("alt_structure"), 4);
  auto v = are_isomorphic(a, b, fast());
  REQUIRE(v.tag == IsoVerdict::Tag::Witness);
}

TEST_CASE("basis-change invariance of fingerprints") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-2, 2);
  Algebra a = cat().resolve("d77");
  Fingerprint base = fingerprint(a);
  for (int t = 0; t < 25; ++t) {
    CycMat g(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = Cyclo(d(rng));
    } while (mat_det(g).is_zero());
    CHECK(fingerprint(change_of_basis(a, g)) == base);
  }
}

TEST_CASE("no false witness on adversarial near-isomorphic pairs") {
  // same fingerprints through h2, genuinely different strata
  Algebra d79 = cat().resolve("d79");
  Algebra d82 = cat().resolve("d82");
  auto v = are_isomorphic(d79, d82, fast());
  CHECK(v.tag != IsoVerdict::Tag::Witness);
}
