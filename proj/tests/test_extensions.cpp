#include <doctest.h>

#include "strata/catalog.hpp"
#include "strata/extensions.hpp"

using namespace strata;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

IsoOptions fast() {
  IsoOptions o;
  o.budget = 20;
  o.seed = 11;
  o.hmax = 2;
  return o;
}

}  // namespace

TEST_CASE("extension condition residuals") {
  // lambda = psi = tau = 0 on a direct sum is an extension
  ExtensionProblem prob{cat().resolve("d19"), parse_structure("", 1)};
  ExtensionDatum zero{Cochain(2, 4), Cochain(2, 4), Cochain(2, 4)};
  auto res = extension_conditions_residuals(prob, zero);
  CHECK(res.all_zero());
  Algebra direct = assemble_extension(prob, zero);
  CHECK(is_associative(direct).associative);

  // the d73-as-extension datum over mu = d19: lambda = psi34^2, tau = psi44^2
  ExtensionDatum d73datum{Cochain::parse2("p(3,4;2)", 4), Cochain(2, 4),
                          Cochain::parse2("p(4,4;2)", 4)};
  auto res2 = extension_conditions_residuals(prob, d73datum);
  CHECK(res2.all_zero());
  Algebra assembled = assemble_extension(prob, d73datum);
  CHECK(assembled == cat().resolve("d73"));

  // a random lambda violating compatibility
  ExtensionDatum bad{Cochain::parse2("p(3,4;3)", 4), Cochain(2, 4),
                     Cochain(2, 4)};
  auto res3 = extension_conditions_residuals(prob, bad);
  CHECK_FALSE(res3.compatibility.is_zero());
  // cross-check: residuals all zero iff assembled associative
  Algebra bad_alg = assemble_extension(prob, bad);
  CHECK(is_associative(bad_alg).associative == res3.all_zero());
}

TEST_CASE("bigraded pieces") {
  // lambda lives in C^{1,1}, psi in C^{0,2} (dim M = 3)
  Cochain lam = Cochain::parse2("p(3,4;2)+p(4,1;3)", 4);
  CHECK(is_bigraded(lam, 1, 1, 3));
  CHECK_FALSE(is_bigraded(lam, 0, 2, 3));
  Cochain psi = Cochain::parse2("p(4,4;2)", 4);
  CHECK(is_bigraded(psi, 0, 2, 3));
  // D_mu maps C^{k,l} to C^{k+1,l}
  ExtensionProblem prob{cat().resolve("d19"), parse_structure("", 1)};
  Cochain img = gbracket(prob.embedded_mu(), psi);
  CHECK(is_bigraded(img, 1, 2, 3));
  Cochain img2 = gbracket(prob.embedded_mu(), lam);
  CHECK(is_bigraded(img2, 2, 1, 3));
  // D_mu^2 = 0 on the pieces
  CHECK(gbracket(prob.embedded_mu(), img).is_zero());
}

TEST_CASE("central extensions of the two 2-dim nilpotent algebras") {
  // delta = psi(3,3)^2 on W = <e2,e3>: exactly two classes, d19 and d20(0:0)
  Algebra delta_nontriv = cat().resolve("d6");  // x^2 = y on 2-dim
  auto classes = central_ext_classes(delta_nontriv);
  REQUIRE(classes.size() == 2);
  int d19_hits = 0, d2000_hits = 0;
  for (const auto& c : classes) {
    CHECK(is_associative(c.algebra).associative);
    if (are_isomorphic(c.algebra, cat().resolve("d19"), fast()).tag ==
        IsoVerdict::Tag::Witness)
      ++d19_hits;
    if (are_isomorphic(c.algebra, cat().resolve("d20(0:0)"), fast()).tag ==
        IsoVerdict::Tag::Witness)
      ++d2000_hits;
  }
  CHECK(d19_hits == 1);
  CHECK(d2000_hits == 1);

  // delta = 0 on 2-dim W: the B(p:q) family plus the alternating class
  auto classes0 = central_ext_classes(cat().resolve("triv2"));
  bool has_c = false, has_zero = false;
  int family = 0;
  for (const auto& c : classes0) {
    if (c.zero_cocycle) has_zero = true;
    if (c.label == "C") {
      has_c = true;
      CHECK(are_isomorphic(c.algebra, cat().resolve("d21"), fast()).tag ==
            IsoVerdict::Tag::Witness);
    }
    if (c.label.rfind("B(", 0) == 0) ++family;
  }
  CHECK(has_c);
  CHECK(has_zero);
  CHECK(family >= 4);
  // family members land in d20(p:q)
  for (const auto& c : classes0) {
    if (c.label != "B(1:2)") continue;
    Algebra target = cat().instantiate(*cat().find("d20"), {{Cyclo(1), Cyclo(2)}});
    CHECK(are_isomorphic(c.algebra, target, fast()).tag == IsoVerdict::Tag::Witness);
  }

  // 1-dim W: two classes, zero and the nontrivial 2-dim algebra
  auto classes1 = central_ext_classes(cat().resolve("triv1"));
  REQUIRE(classes1.size() == 2);
}

TEST_CASE("codim-1 extensions of d19") {
  auto result = codim1_ext_enumerate(cat().resolve("d19"));
  CHECK(result.lambda_space_dim == 4);
  CHECK(result.lambda_coboundary_dim == 2);
  CHECK(result.lambda_reduced_dim == 2);
  CHECK(!result.algebras.empty());
  for (const char* t : {"d73", "d76", "d77", "d79"}) {
    INFO(t);
    CHECK(contains_isomorphic(result.algebras, cat().resolve(t), fast()));
  }
}

TEST_CASE("codim-1 extensions of d21") {
  auto result = codim1_ext_enumerate(cat().resolve("d21"));
  for (const char* t : {"d78(1:-1)", "d81", "d84", "d87"}) {
    INFO(t);
    CHECK(contains_isomorphic(result.algebras, cat().resolve(t), fast()));
  }
}

TEST_CASE("codim-1 extensions of the trivial 3-dim algebra") {
  auto result = codim1_ext_enumerate(cat().resolve("triv3"));
  for (const char* t : {"d77", "d79", "d80", "d84", "d87", "d83(2:5)", "d86(2:5)"}) {
    INFO(t);
    CHECK(contains_isomorphic(result.algebras, cat().resolve(t), fast()));
  }
}

TEST_CASE("codim-1 branch discovery for d20(0:0)") {
  // the text reports 4 distinct lambda formats at this point; the computed
  // branch structure is discovered, not assumed
  auto result = codim1_ext_enumerate(cat().resolve("d20(0:0)"));
  CHECK(result.lambda_reduced_dim >= 2);
  CHECK(result.lambda_branch_count >= 1);
  CHECK(!result.algebras.empty());
}
