#include <doctest.h>

#include "proofcheck/cnl.hpp"

using namespace proofcheck;
using logic::Sort;
using logic::TypeErrorKind;

namespace {

logic::TypeContext numbers() {
  logic::TypeContext ctx;
  ctx.declare("x", Sort::Integer);
  ctx.declare("k", Sort::Integer);
  ctx.declare("A", Sort::Set);
  ctx.declare("B", Sort::Set);
  ctx.declare("P", Sort::Proposition);
  return ctx;
}

TypeErrorKind error_of(const std::string& src) {
  try {
    logic::typecheck(cnl::parse_formula(src), numbers());
  } catch (const logic::TypeError& e) {
    return e.kind();
  }
  FAIL("no type error for " << src);
  return TypeErrorKind::TypeMismatch;
}

}  // namespace

TEST_CASE("well-sorted formulas typecheck") {
  auto ctx = numbers();
  for (const char* ok : {"x = 2k", "x ∈ A ∩ B", "(x,k) ∈ A × B", "P → x is even", "3 divides x^2", "k divides x",
                         "A ∩ B ⊂ A"})
    CHECK_NOTHROW(logic::typecheck(cnl::parse_formula(ok), ctx));
}

TEST_CASE("type errors are classified") {
  CHECK(error_of("y = 2") == TypeErrorKind::UndeclaredVariable);
  CHECK(error_of("x ∈ k") == TypeErrorKind::TypeMismatch);
  CHECK(error_of("A = 2") == TypeErrorKind::TypeMismatch);
  CHECK(error_of("P + 1 = 2") == TypeErrorKind::TypeMismatch);
  CHECK(error_of("x^k = 1") == TypeErrorKind::InvalidExponent);
  CHECK(error_of("x+1 divides k") == TypeErrorKind::InvalidDivisor);
  CHECK(error_of("0 divides k") == TypeErrorKind::InvalidDivisor);
  CHECK(error_of("x") == TypeErrorKind::AssumedNonProposition);
}

TEST_CASE("type errors carry the offending span") {
  const std::string src = "x + y = 2";
  try {
    logic::typecheck(cnl::parse_formula(src), numbers());
    FAIL("no error");
  } catch (const logic::TypeError& e) {
    CHECK(e.name() == "y");
    CHECK(e.span().slice(src) == "y");
  }
}

TEST_CASE("a name can be declared only once") {
  logic::TypeContext ctx;
  CHECK(ctx.declare("x", Sort::Integer));
  CHECK_FALSE(ctx.declare("x", Sort::Set));
  CHECK(ctx.lookup("x") == Sort::Integer);
}

TEST_CASE("typecheck annotates term sorts") {
  auto t = logic::typecheck(cnl::parse_formula("(x,k) ∈ A × B"), numbers());
  CHECK(t->terms[0]->sort == Sort::Pair);
  CHECK(t->terms[1]->sort == Sort::Set);
}

TEST_CASE("substitution respects the bound variable of an existential") {
  auto f = logic::make_exists("k", cnl::parse_formula("x = 2k"));
  auto g = logic::substitute(f, {{"k", logic::make_int(5)}, {"x", logic::make_var("y")}});
  CHECK(logic::render(*g->subs[0]) == "y = 2k");
}

TEST_CASE("negate removes a double negation") {
  auto p = cnl::parse_formula("P");
  CHECK(logic::same(*logic::negate(logic::negate(p)), *p));
  CHECK(logic::negate(p)->kind == logic::FormulaKind::Not);
}

TEST_CASE("conjuncts and free variables") {
  auto f = cnl::parse_formula("x = 1 ∧ (k = 2 ∧ P)");
  CHECK(logic::conjuncts(f).size() == 3);
  CHECK(logic::free_variables(*f) == std::set<std::string>{"P", "k", "x"});
  CHECK(logic::free_variables(*logic::make_exists("k", cnl::parse_formula("x = 2k"))) == std::set<std::string>{"x"});
}
