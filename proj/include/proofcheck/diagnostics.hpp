#pragma once

// Feedback items in the five categories, the error-pattern catalog, and
// the text rendering of a report.
//
// Catalog format: docs/patterns-format.md.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofcheck/logic.hpp"
#include "proofcheck/prover.hpp"
#include "proofcheck/span.hpp"

namespace proofcheck::diagnostics {

enum class Category {
  Textual,         // (i)   unknown symbols, malformed formulas, nonprocessable sentences
  Type,            // (ii)  undeclared variables, sort errors
  UnverifiedStep,  // (iii) steps the prover could not verify
  ErrorPattern,    // (iv)  a typical mistake; always refines a (iii) item
  GoalStatus,      // (v)   goals and subgoals not reached
};

std::string_view roman(Category c);  // "i" .. "v"
std::string_view name(Category c);   // "textual", "type", ...

enum class Severity { Error, Warning };
std::string_view to_string(Severity s);

struct FeedbackItem {
  Category category = Category::Textual;
  Severity severity = Severity::Error;
  std::string code;  // stable machine-readable kind, e.g. "unverified-step"
  std::optional<std::size_t> sentence;
  Span span;
  std::string message;
  std::optional<std::string> pattern_id;
  std::optional<prover::Countermodel> countermodel;
  std::optional<std::string> hint;
  std::vector<std::string> trace;
  std::optional<std::size_t> refines;  // index of the (iii) item in Report::items
};

enum class DocumentStatus { Accepted, Rejected };
std::string_view to_string(DocumentStatus s);

struct SentenceVerdict {
  std::size_t index = 0;
  Span span;
  std::string kind;    // SentenceKind name, or "unparsed"
  std::string status;  // "ok", "warning" or "error"
  bool in_header = false;
  std::vector<std::string> trace;
};

struct Report {
  DocumentStatus status = DocumentStatus::Rejected;
  std::vector<SentenceVerdict> sentences;
  std::vector<FeedbackItem> items;
};

/// Accepted iff no error-severity item in categories (i), (ii), (iii), (v).
bool accepted(const std::vector<FeedbackItem>& items);

// --- error patterns ---------------------------------------------------------

struct PatternRule {
  std::string id;
  std::vector<logic::FormulaPtr> premises;
  logic::FormulaPtr claim;
  std::string message;  // may contain {?X} placeholders
};

class CatalogError : public std::runtime_error {
 public:
  CatalogError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and validates a catalog. Throws CatalogError, in particular when a
/// rule describes a valid inference.
std::vector<PatternRule> parse_catalog(std::string_view text);
std::vector<PatternRule> load_catalog(const std::string& path);

/// The catalog shipped with the checker (identical to data/patterns.txt).
const std::vector<PatternRule>& default_catalog();
std::string_view default_catalog_text();

struct PatternMatch {
  std::string id;
  std::string message;  // placeholders filled in
};

/// All rules whose schemas match (some facts, the claim), in catalog order.
/// Only meaningful for steps that were not verified.
std::vector<PatternMatch> detect_patterns(const logic::TypedFormula& claim, const prover::KnowledgeBase& kb,
                                          const std::vector<PatternRule>& catalog);

// --- rendering ----------------------------------------------------------------

enum class Verbosity { Terse, Explained };

/// "Consider: A false, B true. Then all your assumptions hold but your claim fails."
std::string countermodel_prose(const prover::Countermodel& cm);

struct RenderedItem {
  std::string label;  // "(iii) unverified step"
  std::optional<std::size_t> sentence;
  Span span;
  std::string quote;  // source text of the span
  std::string message;
  std::vector<std::string> explanation;  // explained mode only
};

struct FeedbackDocument {
  DocumentStatus status = DocumentStatus::Rejected;
  std::vector<std::string> marks;          // one per sentence: "ok", "warning", "error"
  std::vector<std::string> sentence_text;  // source text of each sentence
  std::vector<RenderedItem> items;

  std::string to_text() const;
};

FeedbackDocument render_feedback(const Report& report, std::string_view source, Verbosity verbosity);

}  // namespace proofcheck::diagnostics
