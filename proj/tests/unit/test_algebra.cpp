#include <doctest.h>

#include "proofcheck/algebra.hpp"
#include "proofcheck/cnl.hpp"

using namespace proofcheck;
using algebra::AlgebraError;
using algebra::Polynomial;

namespace {

Polynomial nf(const std::string& src) { return algebra::normalize(cnl::parse_term(src)); }

}  // namespace

TEST_CASE("normal forms of the corpus expansions") {
  CHECK(nf("(2n-1)^2-1") == nf("4n^2-4n"));
  CHECK(nf("(2*k)^2+2") == nf("2*(2*k^2+1)"));
  CHECK(nf("2-3·(2k)") == nf("2(1-3k)"));
  CHECK(nf("3(2k)^2") == nf("4(3k^2)"));
  CHECK_FALSE(nf("(2k)^2") == nf("2k^2"));
}

TEST_CASE("polynomial arithmetic") {
  auto x = Polynomial::variable("x");
  auto one = Polynomial::constant(1);
  CHECK((x + one).pow(2) == x * x + x.scaled(2) + one);
  CHECK((x - x).is_zero());
  CHECK(nf("6x^2+4x").content() == 2);
  CHECK(nf("6x^2+4x").divide_exact(2) == nf("3x^2+2x"));
  CHECK_FALSE(nf("6x^2+4x+1").divide_exact(2).has_value());
  CHECK(nf("x^3*y+2").degree() == 4);
  CHECK(nf("x^3*y+2").degree_in("x") == 3);
  CHECK(nf("x^2+1").evaluate({{"x", 3}}) == 10);
  CHECK(nf("x+y").substitute("y", nf("2x")) == nf("3x"));
}

TEST_CASE("normal form printing is canonical") {
  CHECK(nf("x+2").to_string() == nf("2+x").to_string());
  CHECK(nf("x*y").to_string() == nf("y*x").to_string());
  CHECK(nf("0").to_string() == "0");
}

TEST_CASE("exponents above the bound are rejected") {
  CHECK_NOTHROW(nf("x^16"));
  try {
    nf("x^17");
    FAIL("no error");
  } catch (const AlgebraError& e) {
    CHECK(e.kind() == AlgebraError::Kind::ExponentTooLarge);
  }
  CHECK_NOTHROW(algebra::normalize(cnl::parse_term("x^17"), 20));
}

TEST_CASE("set terms have no polynomial normal form") {
  logic::TypeContext ctx;
  ctx.declare("A", logic::Sort::Set);
  ctx.declare("B", logic::Sort::Set);
  try {
    algebra::normalize(cnl::parse_term("A ∩ B"));
    FAIL("no error");
  } catch (const AlgebraError& e) {
    CHECK(e.kind() == AlgebraError::Kind::NotIntegerTerm);
  }
}

TEST_CASE("orientation and substitution") {
  std::vector<logic::FormulaPtr> eqs = {cnl::parse_formula("x = 2k"), cnl::parse_formula("k = m+1")};
  auto subs = algebra::orient(eqs);
  REQUIRE(subs.size() == 2);
  CHECK(algebra::apply(nf("x"), subs) == nf("2m+2"));
  CHECK(algebra::equal_under(eqs, cnl::parse_term("x^2"), cnl::parse_term("4(m+1)^2")));
  CHECK_FALSE(algebra::equal_under(eqs, cnl::parse_term("x"), cnl::parse_term("2m")));
  auto q = algebra::divisibility_certificate(4, cnl::parse_term("3x^2"), eqs);
  REQUIRE(q);
  CHECK(*q == nf("3(m+1)^2"));
  CHECK_FALSE(algebra::divisibility_certificate(8, cnl::parse_term("3x^2"), eqs).has_value());
}

TEST_CASE("the first equation for a variable wins") {
  auto subs = algebra::orient({cnl::parse_formula("x = 1"), cnl::parse_formula("x = 2")});
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].value == nf("1"));
}

TEST_CASE("orientation needs a variable on the left") {
  try {
    algebra::orient({cnl::parse_formula("x + 1 = 2")});
    FAIL("no error");
  } catch (const AlgebraError& e) {
    CHECK(e.kind() == AlgebraError::Kind::NotOriented);
  }
}

TEST_CASE("cyclic substitutions are detected") {
  try {
    algebra::equal_under({cnl::parse_formula("x = y+1"), cnl::parse_formula("y = x+1")}, cnl::parse_term("x"),
                         cnl::parse_term("y"));
    FAIL("no error");
  } catch (const AlgebraError& e) {
    CHECK(e.kind() == AlgebraError::Kind::SubstitutionCycle);
  }
}
