#include <doctest.h>

#include <random>

#include "strata/cyclo.hpp"
#include "strata/expr.hpp"

using namespace strata;

namespace {

Cyclo random_cyclo(std::mt19937& rng, int spread = 6) {
  std::uniform_int_distribution<int> num(-spread, spread);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> c(CycloField::instance().degree());
  for (auto& v : c) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
  }
  return Cyclo(std::move(c));
}

}  // namespace

TEST_CASE("zeta powers and basic identities") {
  CHECK(cyclo_eval("z^24") == Cyclo(1));
  CHECK(cyclo_eval("z^12") == Cyclo(-1));
  CHECK(cyclo_eval("z^6 * z^6") == Cyclo(-1));
  // z^4 is a primitive 6th root of unity: x^2 - x + 1 = 0
  Cyclo g = cyclo_eval("z^4");
  CHECK(g * g - g + Cyclo(1) == Cyclo(0));
  CHECK(g != Cyclo(1));
  Cyclo g3 = g * g * g;
  CHECK(g3 == Cyclo(-1));
}

TEST_CASE("expression grammar") {
  CHECK(cyclo_eval("1/2 + 1/3") == Cyclo(Rational(5, 6)));
  CHECK(cyclo_eval("(2+3)*4") == Cyclo(20));
  CHECK(cyclo_eval("-z^12") == Cyclo(1));
  CHECK(cyclo_eval("2^10") == Cyclo(1024));
  CHECK(cyclo_eval("z^-1") == Cyclo::zeta_pow(23));
  CHECK(cyclo_eval("") == Cyclo(0));
  CHECK_THROWS_AS(cyclo_eval("1/0"), ParseError);
  CHECK_THROWS_AS(cyclo_eval("q + 1"), ParseError);
  CHECK_THROWS_AS(cyclo_eval("2 +"), ParseError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    Cyclo a = random_cyclo(rng), b = random_cyclo(rng), c = random_cyclo(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Cyclo(1));
    }
  }
}

TEST_CASE("canonical representation") {
  // (z^12 + 1) must collapse to the rational 0
  Cyclo v = Cyclo::zeta_pow(12) + Cyclo(1);
  CHECK(v.is_zero());
  CHECK(v.is_rational());
  // z^8 - z^4 + 1 = Phi_24(z) = 0
  Cyclo w = Cyclo::zeta_pow(8) - Cyclo::zeta_pow(4) + Cyclo(1);
  CHECK(w.is_zero());
}

TEST_CASE("string round trip") {
  std::mt19937 rng(13);
  for (int t = 0; t < 20; ++t) {
    Cyclo a = random_cyclo(rng);
    CHECK(cyclo_eval(a.str()) == a);
  }
}

TEST_CASE("sqrt in field") {
  auto r2 = sqrt_in_field(Cyclo(2));
  REQUIRE(r2.has_value());
  CHECK((*r2) * (*r2) == Cyclo(2));
  auto r3 = sqrt_in_field(Cyclo(3));
  REQUIRE(r3.has_value());
  CHECK((*r3) * (*r3) == Cyclo(3));
  auto r6 = sqrt_in_field(Cyclo(6));
  REQUIRE(r6.has_value());
  CHECK((*r6) * (*r6) == Cyclo(6));
  auto rm1 = sqrt_in_field(Cyclo(-1));
  REQUIRE(rm1.has_value());
  CHECK((*rm1) * (*rm1) == Cyclo(-1));
  auto rhalf = sqrt_in_field(Cyclo(Rational(1, 2)));
  REQUIRE(rhalf.has_value());
  CHECK((*rhalf) * (*rhalf) == Cyclo(Rational(1, 2)));
  CHECK_FALSE(sqrt_in_field(Cyclo(5)).has_value());
  CHECK_FALSE(sqrt_in_field(Cyclo(7)).has_value());
  // sqrt of a root of unity
  auto rg = sqrt_in_field(cyclo_eval("z^4"));
  REQUIRE(rg.has_value());
  CHECK((*rg) * (*rg) == cyclo_eval("z^4"));
}

TEST_CASE("snap recovers small elements") {
  std::mt19937 rng(99);
  Cyclo vals[] = {Cyclo(Rational(3, 4)), cyclo_eval("z^6 / 2"),
                  cyclo_eval("1 + z^4"), *sqrt_in_field(Cyclo(6)),
                  cyclo_eval("2 - z^6")};
  for (const Cyclo& v : vals) {
    auto s = snap_to_field(v.to_complex());
    REQUIRE(s.has_value());
    CHECK(*s == v);
  }
}

TEST_CASE("poly substitution and evaluation") {
  Poly p = parse_expr("p*q + 2*p - 1", {"p", "q"});
  CHECK(p.evaluate({{"p", Cyclo(2)}, {"q", Cyclo(3)}}) == Cyclo(9));
  Poly sub = p.substitute({{"q", Cyclo(3)}});
  CHECK(sub.evaluate({{"p", Cyclo(2)}}) == Cyclo(9));
  CHECK(p.total_degree() == 2);
}
