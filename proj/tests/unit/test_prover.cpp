#include <doctest.h>

#include <algorithm>

#include "proofcheck/cnl.hpp"
#include "proofcheck/prover.hpp"

using namespace proofcheck;
using prover::StepVerdict;

namespace {

logic::TypeContext context() {
  logic::TypeContext ctx;
  for (const char* v : {"x", "y", "n", "k", "m"}) ctx.declare(v, logic::Sort::Integer);
  for (const char* v : {"A", "B", "C", "D"}) ctx.declare(v, logic::Sort::Set);
  for (const char* v : {"P", "Q", "R", "S"}) ctx.declare(v, logic::Sort::Proposition);
  return ctx;
}

StepVerdict step(const std::string& claim, const std::vector<std::string>& facts, unsigned depth = prover::kDefaultDepth) {
  prover::KnowledgeBase kb{context(), {}};
  for (const auto& f : facts) kb.facts.push_back(logic::typecheck(cnl::parse_formula(f), kb.ctx));
  return prover::check_step(logic::typecheck(cnl::parse_formula(claim), kb.ctx), kb, depth);
}

bool uses(const StepVerdict& v, const std::string& rule) {
  return std::find(v.trace.begin(), v.trace.end(), rule) != v.trace.end();
}

std::vector<logic::FormulaPtr> parse_all(const std::vector<std::string>& srcs) {
  std::vector<logic::FormulaPtr> out;
  for (const auto& s : srcs) out.push_back(cnl::parse_formula(s));
  return out;
}

}  // namespace

TEST_CASE("propositional entailment") {
  CHECK(prover::entails_prop(parse_all({"P → Q", "P"}), cnl::parse_formula("Q")).verified());
  CHECK(prover::entails_prop({}, cnl::parse_formula("P ∨ ¬P")).verified());
  auto v = prover::entails_prop(parse_all({"P → Q", "¬P"}), cnl::parse_formula("¬Q"));
  REQUIRE(v.refuted());
  REQUIRE(v.countermodel);
  CHECK(v.countermodel->kind == prover::Countermodel::Kind::Propositional);
  CHECK(v.countermodel->assignment == std::vector<std::pair<std::string, bool>>{{"P", false}, {"Q", true}});
  CHECK(v.trace == std::vector<std::string>{"truth-table"});
}

TEST_CASE("the first falsifying assignment in lexicographic order is reported") {
  auto v = prover::entails_prop({}, cnl::parse_formula("P ∧ Q"));
  REQUIRE(v.countermodel);
  CHECK(v.countermodel->assignment == std::vector<std::pair<std::string, bool>>{{"P", false}, {"Q", false}});
}

TEST_CASE("too many atoms") {
  std::string big = "P0";
  std::vector<logic::FormulaPtr> premises;
  for (int i = 1; i <= prover::kMaxAtoms; ++i) big += " ∧ P" + std::to_string(i);
  try {
    prover::entails_prop({}, cnl::parse_formula(big));
    FAIL("no error");
  } catch (const prover::ProverError& e) {
    CHECK(e.kind() == prover::ProverError::Kind::TooManyAtoms);
  }
}

TEST_CASE("Boolean set reasoning") {
  CHECK(prover::entails_set(parse_all({"x ∈ A ∩ B"}), cnl::parse_formula("x ∈ B ∪ C")).verified());
  CHECK(prover::entails_set(parse_all({"A ⊂ B", "B ⊂ C", "x ∈ A"}), cnl::parse_formula("x ∈ C")).verified());
  CHECK(prover::entails_set(parse_all({"(x,y) ∈ A × B"}), cnl::parse_formula("y ∈ B")).verified());
  CHECK(prover::entails_set(parse_all({"A ∩ B = A", "x ∈ A"}), cnl::parse_formula("x ∈ B")).verified());
  auto v = prover::entails_set(parse_all({"x ∈ A ∪ B"}), cnl::parse_formula("x ∈ A"));
  REQUIRE(v.refuted());
  REQUIRE(v.countermodel);
  CHECK(v.countermodel->kind == prover::Countermodel::Kind::SetScenario);
  CHECK(v.trace == std::vector<std::string>{"membership-reduction", "truth-table"});
  CHECK_THROWS_AS(prover::entails_set({}, cnl::parse_formula("A ⊂ A")), prover::ProverError);
}

TEST_CASE("distinct elements are named in a set countermodel") {
  auto v = prover::entails_set(parse_all({"x ∈ A"}), cnl::parse_formula("y ∈ A"));
  REQUIRE(v.countermodel);
  CHECK(v.countermodel->distinct == std::vector<std::string>{"x", "y"});
}

TEST_CASE("decidable fragment") {
  CHECK(prover::in_decidable_fragment(*cnl::parse_formula("x ∈ A ∩ B → P"), false));
  CHECK(prover::in_decidable_fragment(*cnl::parse_formula("A ⊂ B"), true));
  CHECK_FALSE(prover::in_decidable_fragment(*cnl::parse_formula("A ⊂ B"), false));
  CHECK_FALSE(prover::in_decidable_fragment(*cnl::parse_formula("x is even"), true));
}

TEST_CASE("number theory rules appear in the trace") {
  CHECK(uses(step("2(1-3k) is even", {}), "even-from-2q"));
  CHECK(uses(step("2-3x is even", {"x = 2k"}), "even-from-2q"));
  CHECK(uses(step("2-3x is even", {"x = 2k"}), "substitution"));
  CHECK(uses(step("4 divides 12k^2", {}), "divides-by-coefficients"));
  CHECK(uses(step("2k+1 is odd", {}), "odd-from-2q+1"));
  CHECK(uses(step("2 divides n^2+n", {}), "parity-product"));
  CHECK(uses(step("8 divides 4n^2-4n", {}), "parity-product"));
  CHECK(uses(step("x is even", {"x is even"}), "kb-fact"));
  CHECK(uses(step("x is even", {"x is not odd"}), "even-odd-totality"));
  CHECK(uses(step("x is not odd", {"x is even"}), "even-odd-exclusion"));
  CHECK(uses(step("x+1 is odd", {"x is even"}), "parity-of-variable"));
  CHECK(uses(step("2 divides x", {"4 divides x"}), "kb-fact"));
}

TEST_CASE("existence claims") {
  auto exists = [](const std::string& body, const std::vector<std::string>& facts) {
    prover::KnowledgeBase kb{context(), {}};
    for (const auto& f : facts) kb.facts.push_back(logic::typecheck(cnl::parse_formula(f), kb.ctx));
    return prover::check_step(logic::typecheck(logic::make_exists("q", cnl::parse_formula(body)), kb.ctx), kb);
  };
  CHECK(uses(exists("x = 2q", {"x is even"}), "exists-from-divisibility"));
  CHECK(exists("x = 2q+1", {"x is odd"}).verified());
  CHECK_FALSE(exists("x = 2q", {}).verified());
}

TEST_CASE("equations") {
  CHECK(step("(2n-1)^2-1 = 4n^2-4n", {}).trace == std::vector<std::string>{"normal-form"});
  CHECK(step("x^2 = 4k^2", {"x = 2k"}).trace == std::vector<std::string>{"substitution", "normal-form"});
  CHECK(uses(step("2x = 2y", {"x - y = 0"}), "equation-multiple"));
  CHECK_FALSE(step("(2k)^2 = 2k^2", {}).verified());
}

TEST_CASE("contradictions") {
  CHECK(step("⊥", {"x is even", "x is odd"}).verified());
  CHECK(step("⊥", {"P", "¬P"}).verified());
  CHECK_FALSE(step("⊥", {"x is even"}).verified());
}

TEST_CASE("unknown is not refuted") {
  auto v = step("3 divides x", {"x is even"});
  CHECK(v.status == StepVerdict::Status::Unknown);
  CHECK_FALSE(v.countermodel);
}

TEST_CASE("depth is a budget on the search") {
  CHECK(step("x+1 is odd", {"x is even"}, 1).verified());
  auto shallow = step("x+1 is odd", {"x is even"}, 0);
  CHECK_FALSE(shallow.verified());
  CHECK(uses(shallow, "depth-exceeded"));
}

TEST_CASE("huge exponents are reported, not computed") {
  auto v = step("x^100 = x^100 + 0", {});
  CHECK_FALSE(v.verified());
  CHECK(uses(v, "exponent-too-large"));
}

TEST_CASE("mixed steps use the abstraction") {
  CHECK(step("x is even ∨ P", {"x = 2k"}).verified());
  CHECK(step("P → 2k is even", {}).verified());
  CHECK_FALSE(step("x = 2 ∧ 2 = 3", {"x is even"}).verified());
}

TEST_CASE("parity literals in the abstraction keep their polarity") {
  CHECK_FALSE(step("P", {"x is even", "x is not odd"}).verified());
}
