#pragma once

// Controlled-natural-language front end: tokenizer, formula parser and the
// sentence classifier that turns a proof text into a ProblemDocument.
//
// Grammar reference: docs/grammar.md.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofcheck/logic.hpp"
#include "proofcheck/span.hpp"

namespace proofcheck::cnl {

enum class TokenKind { Word, Symbol, Number, Identifier, Punctuation };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Word;
  std::string text;
  Span span;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class ErrorKind {
  UnknownSymbol,
  MalformedFormula,
  NonprocessableSentence,
  MissingProofBody,
  MissingGoal,
  MissingPeriod,  // warning only
  MissingQed,     // warning only
  TextAfterQed,
};

std::string_view to_string(ErrorKind kind);

struct Diagnostic {
  ErrorKind kind = ErrorKind::NonprocessableSentence;
  Span span;
  std::optional<std::size_t> sentence;
  std::string message;
  bool warning = false;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic diagnostic);
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

struct LexOptions {
  bool schema_variables = false;  // accept ?P / ?t (pattern catalogs only)
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> errors;  // UnknownSymbol, one per maximal run
};

/// Recovering tokenizer: unknown characters are reported and skipped.
LexResult lex(std::string_view source, LexOptions options = {});

/// Strict tokenizer: throws ParseError(UnknownSymbol) on the first unknown run.
std::vector<Token> tokenize(std::string_view source, LexOptions options = {});

/// Parses one formula region; all tokens must be consumed.
/// Throws ParseError(MalformedFormula).
logic::FormulaPtr parse_formula(std::span<const Token> tokens);
logic::FormulaPtr parse_formula(std::string_view text, LexOptions options = {});

/// Parses an integer- or set-valued term region.
logic::TermPtr parse_term(std::span<const Token> tokens);
logic::TermPtr parse_term(std::string_view text, LexOptions options = {});

enum class SentenceKind { Declare, Assume, ExistsClaim, Pick, GoalAnnounce, Infer, SubproofClose, Qed };

std::string_view to_string(SentenceKind kind);

enum class GoalForm { Prove, RemainsToShow, Method };

enum class ProofMethod { None, Direct, Contraposition, Contradiction, CaseSplit, SubsetElementArg };

std::string_view to_string(ProofMethod method);

struct Declaration {
  std::string name;
  Span span;
};

struct SentenceAST {
  std::size_t index = 0;
  Span span;
  SentenceKind kind = SentenceKind::Infer;
  std::vector<Declaration> variables;      // Declare, Pick
  logic::Sort sort = logic::Sort::Unknown;  // Declare, Pick
  logic::FormulaPtr formula;               // everything except Declare, SubproofClose, Qed
  std::string cue;                         // canonical discourse marker, lower case; may be empty
  GoalForm goal_form = GoalForm::Prove;    // GoalAnnounce
  ProofMethod method = ProofMethod::None;  // GoalAnnounce with GoalForm::Method
  bool in_header = false;
};

/// Equality ignoring index and spans.
bool same(const SentenceAST& a, const SentenceAST& b);

struct ProblemDocument {
  std::string source;
  std::vector<SentenceAST> premises;  // header Declare / Assume sentences
  std::optional<SentenceAST> goal;
  std::vector<SentenceAST> proof;     // body sentences that parsed
  std::vector<Span> sentence_spans;   // every sentence, header and body, by index
  std::size_t header_sentences = 0;   // indices below this are in the header
  bool has_proof_body = false;
  bool ends_with_qed = false;
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const;
};

/// Splits, classifies and parses every sentence. Never throws; structural
/// problems (missing goal, missing body) are reported as diagnostics.
ProblemDocument parse_document(std::string_view source);

/// Classifies a single sentence (without its final period).
/// Throws ParseError with the sentence-level diagnostic.
SentenceAST parse_sentence(std::string_view text, bool in_header);

/// Canonical surface form of a sentence, including its final period.
std::string render_sentence(const SentenceAST& sentence);

}  // namespace proofcheck::cnl
