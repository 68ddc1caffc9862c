// Smaller, faster versions of the acceptance properties.
#include <doctest.h>

#include "oracles.hpp"
#include "proofcheck/algebra.hpp"
#include "proofcheck/cnl.hpp"
#include "proofcheck/prover.hpp"

using namespace proofcheck;

namespace {

prover::KnowledgeBase kb_for(const oracle::Query& q) {
  prover::KnowledgeBase kb;
  for (const auto& p : q.props) kb.ctx.declare(p, logic::Sort::Proposition);
  for (const auto& s : q.sets) kb.ctx.declare(s, logic::Sort::Set);
  kb.ctx.declare("x", logic::Sort::Integer);
  kb.ctx.declare("y", logic::Sort::Integer);
  for (const auto& p : q.premises) kb.facts.push_back(logic::typecheck(cnl::parse_formula(oracle::text(*p)), kb.ctx));
  return kb;
}

}  // namespace

TEST_CASE("random set and propositional steps agree with the truth table") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto q = oracle::random_query(rng);
    const auto kb = kb_for(q);
    const auto v = prover::check_step(logic::typecheck(cnl::parse_formula(oracle::text(*q.claim)), kb.ctx), kb, 3);
    const auto expected = oracle::entails(q);
    CAPTURE(oracle::text(*q.claim));
    REQUIRE(v.status != prover::StepVerdict::Status::Unknown);
    CHECK(v.verified() == expected.entailed);
    if (v.refuted()) {
      REQUIRE(v.countermodel);
      std::string why;
      CHECK_MESSAGE(oracle::countermodel_valid(q, *v.countermodel, &why), why);
    }
  }
}

TEST_CASE("normal forms agree with direct evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> point(-6, 6);
  for (int i = 0; i < 200; ++i) {
    const auto t = oracle::random_term(rng, 4);
    const auto p = algebra::normalize(cnl::parse_term(oracle::text(*t)));
    for (int j = 0; j < 5; ++j) {
      std::map<std::string, mpz_class> env = {{"x", point(rng)}, {"y", point(rng)}, {"z", point(rng)}};
      CAPTURE(oracle::text(*t));
      CHECK(p.evaluate(env) == oracle::eval(*t, env));
    }
  }
}
