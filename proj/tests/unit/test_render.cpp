#include <doctest.h>

#include "oracles.hpp"
#include "proofcheck/engine.hpp"

using namespace proofcheck;
using diagnostics::Verbosity;

TEST_CASE("category names") {
  CHECK(diagnostics::roman(diagnostics::Category::Textual) == "i");
  CHECK(diagnostics::roman(diagnostics::Category::GoalStatus) == "v");
  CHECK(diagnostics::name(diagnostics::Category::UnverifiedStep) == "unverified-step");
}

TEST_CASE("propositional countermodel prose") {
  prover::Countermodel cm;
  cm.assignment = {{"P", false}, {"Q", true}};
  CHECK(diagnostics::countermodel_prose(cm) ==
        "Consider: P false, Q true. Then all your assumptions hold but your claim fails.");
}

TEST_CASE("set countermodel prose") {
  prover::Countermodel cm;
  cm.kind = prover::Countermodel::Kind::SetScenario;
  cm.memberships = {{"x", "A", true}, {"y", "B", false}};
  cm.distinct = {"x", "y"};
  CHECK(diagnostics::countermodel_prose(cm) ==
        "Consider a situation in which x ∈ A, y ∉ B. Here x and y are different elements. "
        "Then all your assumptions hold but your claim fails.");
}

TEST_CASE("text rendering marks every sentence") {
  const std::string text = oracle::read_file(PROOFCHECK_CORPUS_DIR "/text1-truncated.txt");
  auto doc = diagnostics::render_feedback(engine::check_text(text), text, Verbosity::Terse);
  CHECK(doc.marks.size() == 7);
  CHECK(doc.marks.back() == "error");
  REQUIRE(doc.items.size() == 1);
  CHECK(doc.items[0].label == "(v) goal status");
  CHECK(doc.items[0].quote == "qed.");
  const auto out = doc.to_text();
  CHECK(out.rfind("Rejected (6 of 7 sentences ok, 1 item)\n", 0) == 0);
  CHECK(out.find("✗ 6  qed.") != std::string::npos);
  CHECK(doc.items[0].explanation.empty());
}

TEST_CASE("explained rendering adds countermodel, hint and trace") {
  const std::string text =
      "Let P, Q be propositions. Assume that P → Q. Assume that ¬P. Prove: ¬Q. Proof: Hence ¬Q. qed.";
  auto doc = diagnostics::render_feedback(engine::check_text(text), text, Verbosity::Explained);
  REQUIRE(doc.items.size() == 2);
  CHECK(doc.items[0].explanation ==
        std::vector<std::string>{"Consider: P false, Q true. Then all your assumptions hold but your claim fails.",
                                 "Rules tried: truth-table."});
  CHECK(doc.items[1].label == "(iv) error pattern");
}

TEST_CASE("warnings are labelled") {
  const std::string text = "Let x be an integer. Prove: x = x. Proof: Then x = x.";
  auto doc = diagnostics::render_feedback(engine::check_text(text), text, Verbosity::Terse);
  REQUIRE(doc.items.size() == 1);
  CHECK(doc.items[0].label == "(i) textual error (warning)");
}
