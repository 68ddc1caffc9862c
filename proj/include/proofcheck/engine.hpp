#pragma once

// Runs a parsed proof sentence by sentence: declarations, assumptions,
// witnesses, goal frames and their discharge.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "proofcheck/cnl.hpp"
#include "proofcheck/diagnostics.hpp"
#include "proofcheck/prover.hpp"

namespace proofcheck::engine {

struct GoalFrame {
  logic::FormulaPtr original;  // what the frame establishes once closed
  logic::FormulaPtr target;    // current obligation after method refinement
  cnl::ProofMethod method = cnl::ProofMethod::Direct;
  cnl::ProofMethod announced = cnl::ProofMethod::None;
  bool discharged = false;
  std::size_t opening_sentence = 0;
  std::size_t kb_mark = 0;   // facts below this index predate the frame
  std::size_t ctx_mark = 0;  // likewise for declarations
  bool is_case = false;      // opened by "Case: F."
  logic::FormulaPtr case_assumption;
  std::vector<logic::FormulaPtr> cases;  // closed cases of a case split
};

struct ProofState {
  prover::KnowledgeBase kb;  // kb.ctx is the type context
  std::vector<GoalFrame> goals;
  std::size_t cursor = 0;
  bool finished = false;
  std::vector<std::string> last_trace;  // rule trace of the most recent step

  const logic::TypeContext& ctx() const { return kb.ctx; }
};

struct Options {
  unsigned depth = prover::kDefaultDepth;
  const std::vector<diagnostics::PatternRule>* catalog = nullptr;  // default_catalog() if null
};

/// Declares the header variables, records the premises and opens the root
/// frame. Problems become items (category ii).
ProofState init_state(const cnl::ProblemDocument& doc, std::vector<diagnostics::FeedbackItem>& items);

std::pair<ProofState, std::vector<diagnostics::FeedbackItem>> apply_sentence(const ProofState& state,
                                                                              const cnl::SentenceAST& sentence,
                                                                              const Options& options = {});

/// Closes all open frames as at "qed"; used when the text ends without it.
std::pair<ProofState, std::vector<diagnostics::FeedbackItem>> finish(const ProofState& state,
                                                                     std::optional<std::size_t> sentence, Span span,
                                                                     const Options& options = {});

diagnostics::Report check_document(const cnl::ProblemDocument& doc, const Options& options = {});

/// parse_document followed by check_document.
diagnostics::Report check_text(std::string_view source, const Options& options = {});

}  // namespace proofcheck::engine
