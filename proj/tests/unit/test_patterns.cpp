#include <doctest.h>

#include "oracles.hpp"
#include "proofcheck/cnl.hpp"
#include "proofcheck/diagnostics.hpp"

using namespace proofcheck;
using diagnostics::CatalogError;

namespace {

std::vector<std::string> ids(const std::vector<diagnostics::PatternMatch>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(m.id);
  return out;
}

std::vector<diagnostics::PatternMatch> detect(const std::string& claim, const std::vector<std::string>& facts,
                                              const std::vector<std::pair<std::string, logic::Sort>>& vars) {
  prover::KnowledgeBase kb;
  for (const auto& [name, sort] : vars) kb.ctx.declare(name, sort);
  for (const auto& f : facts) kb.facts.push_back(logic::typecheck(cnl::parse_formula(f), kb.ctx));
  return diagnostics::detect_patterns(logic::typecheck(cnl::parse_formula(claim), kb.ctx), kb,
                                      diagnostics::default_catalog());
}

const std::vector<std::pair<std::string, logic::Sort>> kProps = {
    {"P", logic::Sort::Proposition}, {"Q", logic::Sort::Proposition}, {"R", logic::Sort::Proposition}};

}  // namespace

TEST_CASE("the embedded catalog equals the data file") {
  CHECK(diagnostics::default_catalog_text() == oracle::read_file(PROOFCHECK_DATA_DIR "/patterns.txt"));
  CHECK(diagnostics::default_catalog().size() == 9);
}

TEST_CASE("catalog syntax") {
  auto rules = diagnostics::parse_catalog(
      "# comment\n\nconverse | ?P → ?Q | ?Q → ?P | {?Q} → {?P} does not follow | really\n");
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].id == "converse");
  CHECK(rules[0].premises.size() == 1);
  CHECK(rules[0].message == "{?Q} → {?P} does not follow | really");
  CHECK_THROWS_AS(diagnostics::parse_catalog("broken | ?P\n"), CatalogError);
  CHECK_THROWS_AS(diagnostics::parse_catalog("x | ?P | ?Q | uses {?R}\n"), CatalogError);
  CHECK_THROWS_AS(diagnostics::parse_catalog("x | ?P ∧ | ?Q | m\n"), CatalogError);
}

TEST_CASE("catalog errors report the line") {
  try {
    diagnostics::parse_catalog("# header\nbroken\n");
    FAIL("no error");
  } catch (const CatalogError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("a valid schema is not an error pattern") {
  CHECK_THROWS_AS(diagnostics::parse_catalog("mp | ?P → ?Q ; ?P | ?Q | fine\n"), CatalogError);
  CHECK_THROWS_AS(diagnostics::parse_catalog("sub | ?X ⊂ ?Y ; ?t ∈ ?X | ?t ∈ ?Y | fine\n"), CatalogError);
  CHECK_THROWS_AS(diagnostics::parse_catalog("sq | | (?a + ?b)^2 = ?a^2 + 2*?a*?b + ?b^2 | fine\n"), CatalogError);
  CHECK_NOTHROW(diagnostics::parse_catalog("sq | | (?a + ?b)^2 = ?a^2 + ?b^2 | wrong\n"));
}

TEST_CASE("propositional patterns") {
  auto m = detect("¬Q", {"P → Q", "¬P"}, kProps);
  REQUIRE(ids(m) == std::vector<std::string>{"denying-the-antecedent"});
  CHECK(m[0].message.find("¬Q from P → Q and ¬P") != std::string::npos);
  CHECK(ids(detect("P", {"P → Q", "Q"}, kProps)) == std::vector<std::string>{"affirming-the-consequent"});
  CHECK(ids(detect("Q → P", {"P → Q"}, kProps)) == std::vector<std::string>{"converse-implication"});
  CHECK(detect("R", {"P → Q", "¬P"}, kProps).empty());
}

TEST_CASE("patterns match inside larger facts and compound schema variables") {
  CHECK(ids(detect("¬(Q ∧ R)", {"P ∨ R → Q ∧ R", "¬(P ∨ R)"}, kProps)) ==
        std::vector<std::string>{"denying-the-antecedent"});
}

TEST_CASE("arithmetic patterns") {
  const std::vector<std::pair<std::string, logic::Sort>> ints = {{"k", logic::Sort::Integer}, {"n", logic::Sort::Integer}};
  CHECK(ids(detect("(2k)^2 = 2k^2", {}, ints)) == std::vector<std::string>{"power-distribution"});
  CHECK(ids(detect("(2k)^2+2 = 2k^2+2", {}, ints)) == std::vector<std::string>{"power-distribution"});
  CHECK(ids(detect("(n+1)^2 = n^2+1^2", {}, ints)) == std::vector<std::string>{"freshman-binomial"});
  CHECK(ids(detect("(2n-1)^2-1 = (2n)^2-1^2-1", {}, ints)) == std::vector<std::string>{"freshman-binomial"});
  CHECK(detect("(2k)^2 = 5k^2", {}, ints).empty());
}

TEST_CASE("set patterns") {
  const std::vector<std::pair<std::string, logic::Sort>> sets = {
      {"x", logic::Sort::Integer}, {"A", logic::Sort::Set}, {"B", logic::Sort::Set}};
  CHECK(ids(detect("x ∈ A", {"x ∈ A ∪ B"}, sets)) == std::vector<std::string>{"union-intersection-swap"});
  CHECK(ids(detect("x ∈ B", {"x ∈ A ∪ B"}, sets)) == std::vector<std::string>{"union-intersection-swap"});
  CHECK(ids(detect("x ∈ A", {"A ⊂ B", "x ∈ B"}, sets)) == std::vector<std::string>{"subset-direction-swap"});
}
