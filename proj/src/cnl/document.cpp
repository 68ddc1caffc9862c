#include <algorithm>
#include <array>
#include <cctype>

#include "proofcheck/cnl.hpp"

namespace proofcheck::cnl {

using logic::FormulaPtr;
using logic::Sort;

std::string_view to_string(SentenceKind kind) {
  switch (kind) {
    case SentenceKind::Declare: return "Declare";
    case SentenceKind::Assume: return "Assume";
    case SentenceKind::ExistsClaim: return "ExistsClaim";
    case SentenceKind::Pick: return "Pick";
    case SentenceKind::GoalAnnounce: return "GoalAnnounce";
    case SentenceKind::Infer: return "Infer";
    case SentenceKind::SubproofClose: return "SubproofClose";
    case SentenceKind::Qed: return "Qed";
  }
  return "?";
}

std::string_view to_string(ProofMethod method) {
  switch (method) {
    case ProofMethod::None: return "none";
    case ProofMethod::Direct: return "direct";
    case ProofMethod::Contraposition: return "contraposition";
    case ProofMethod::Contradiction: return "contradiction";
    case ProofMethod::CaseSplit: return "case-split";
    case ProofMethod::SubsetElementArg: return "subset-element";
  }
  return "?";
}

bool same(const SentenceAST& a, const SentenceAST& b) {
  if (a.kind != b.kind || a.sort != b.sort || a.cue != b.cue || a.in_header != b.in_header) return false;
  if (a.kind == SentenceKind::GoalAnnounce && (a.goal_form != b.goal_form || a.method != b.method)) return false;
  if (a.variables.size() != b.variables.size()) return false;
  for (std::size_t i = 0; i < a.variables.size(); ++i)
    if (a.variables[i].name != b.variables[i].name) return false;
  if (static_cast<bool>(a.formula) != static_cast<bool>(b.formula)) return false;
  return !a.formula || logic::same(*a.formula, *b.formula);
}

bool ProblemDocument::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return !d.warning; });
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_qed_token(const Token& t) {
  if (t.kind == TokenKind::Symbol) return t.text == "□" || t.text == "∎";
  if (t.kind != TokenKind::Word) return false;
  auto w = lower(t.text);
  return w == "qed" || w == "q.e.d";
}

using Phrase = std::vector<std::string_view>;

// Discourse markers that may open an inference; all are synonyms.
const std::array<Phrase, 17> kCues = {{
    {"it", "follows", "that"},
    {"this", "implies", "that"},
    {"this", "means", "that"},
    {"we", "conclude", "that"},
    {"it", "holds", "that"},
    {"consequently"},
    {"therefore"},
    {"hence"},
    {"thus"},
    {"then"},
    {"so"},
    {"also"},
    {"accordingly"},
    {"we", "have"},
    {"we", "get"},
    {"we", "obtain"},
    {"one", "has"},
}};

const std::array<Phrase, 7> kFillers = {{
    {"we", "have"},
    {"we", "get"},
    {"we", "obtain"},
    {"it", "holds", "that"},
    {"it", "follows", "that"},
    {"we", "conclude", "that"},
    {"one", "has"},
}};

struct MethodPhrase {
  Phrase words;
  ProofMethod method;
};

const std::array<MethodPhrase, 12> kMethodPhrases = {{
    {{"we", "prove", "the", "contraposition"}, ProofMethod::Contraposition},
    {{"we", "prove", "by", "contraposition"}, ProofMethod::Contraposition},
    {{"we", "show", "the", "contraposition"}, ProofMethod::Contraposition},
    {{"proof", "by", "contraposition"}, ProofMethod::Contraposition},
    {{"we", "prove", "by", "contradiction"}, ProofMethod::Contradiction},
    {{"we", "argue", "by", "contradiction"}, ProofMethod::Contradiction},
    {{"proof", "by", "contradiction"}, ProofMethod::Contradiction},
    {{"we", "distinguish", "cases"}, ProofMethod::CaseSplit},
    {{"we", "distinguish", "two", "cases"}, ProofMethod::CaseSplit},
    {{"proof", "by", "cases"}, ProofMethod::CaseSplit},
    {{"we", "prove", "directly"}, ProofMethod::Direct},
    {{"direct", "proof"}, ProofMethod::Direct},
}};

class SentenceParser {
 public:
  SentenceParser(std::span<const Token> tokens, Span span, bool in_header)
      : toks_(tokens), span_(span), in_header_(in_header) {}

  SentenceAST parse() {
    SentenceAST s;
    s.span = span_;
    s.in_header = in_header_;
    if (toks_.empty()) nonprocessable("empty sentence");

    if (toks_.size() == 1 && is_qed_token(toks_[0])) {
      s.kind = SentenceKind::Qed;
      return s;
    }
    if (is(0, "let")) return parse_let(s);
    if (is_any(0, {"pick", "choose", "take", "fix"})) return parse_pick(s, 1, lower(toks_[0].text));
    if (is_any(0, {"assume", "suppose"})) {
      std::size_t i = 1;
      if (is(i, "that")) ++i;
      s.kind = SentenceKind::Assume;
      s.cue = "assume";
      s.formula = formula_from(i);
      return s;
    }
    if (is(0, "case")) {
      std::size_t i = 1;
      if (i < toks_.size() && toks_[i].kind == TokenKind::Number) ++i;
      if (!punct(i, ":")) nonprocessable("expected ':' after 'Case'");
      s.kind = SentenceKind::Assume;
      s.cue = "case";
      s.formula = formula_from(i + 1);
      return s;
    }
    for (const auto& mp : kMethodPhrases) {
      if (matches_exactly(mp.words)) {
        s.kind = SentenceKind::GoalAnnounce;
        s.goal_form = GoalForm::Method;
        s.method = mp.method;
        return s;
      }
    }
    if (auto after = goal_prefix()) {
      s.kind = SentenceKind::GoalAnnounce;
      s.goal_form = in_header_ && !remains_ ? GoalForm::Prove : GoalForm::RemainsToShow;
      s.formula = formula_from(*after);
      return s;
    }
    if (is(0, "this") && toks_.size() >= 4 && is_any(1, {"completes", "proves", "shows", "finishes", "concludes"}) &&
        is(2, "the")) {
      const auto rest = words_from(3);
      if (rest == "subproof" || rest == "claim" || rest == "case" || rest == "case distinction" ||
          rest == "cases" || rest == "proof of the claim") {
        s.kind = SentenceKind::SubproofClose;
        return s;
      }
    }
    return parse_inference(s);
  }

  /// True if the sentence is shaped like a goal announcement, regardless of its formula.
  bool looks_like_goal() { return goal_prefix().has_value(); }

 private:
  SentenceAST parse_let(SentenceAST& s) {
    // Let x, y be integers.  /  Let k be an integer with x = 2k.
    std::size_t i = 1;
    std::vector<Declaration> vars;
    while (i < toks_.size() && toks_[i].kind == TokenKind::Identifier) {
      vars.push_back({toks_[i].text, toks_[i].span});
      ++i;
      if (punct(i, ",") || is(i, "and")) {
        ++i;
        continue;
      }
      break;
    }
    if (!vars.empty() && is(i, "be")) {
      std::size_t j = i + 1;
      if (auto sort = sort_phrase(j)) {
        s.variables = std::move(vars);
        s.sort = *sort;
        s.cue = "let";
        if (j == toks_.size()) {
          s.kind = SentenceKind::Declare;
          return s;
        }
        if (auto body = such_that(j)) {
          if (s.variables.size() != 1 || s.sort != Sort::Integer)
            nonprocessable("a witness must be a single integer");
          s.kind = SentenceKind::Pick;
          s.formula = formula_from(*body);
          return s;
        }
        nonprocessable("unexpected words after the declaration");
      }
    }

    // Let t be [not] even / odd.
    for (std::size_t j = 2; j + 1 < toks_.size(); ++j) {
      if (!is(j, "be")) continue;
      std::size_t k = j + 1;
      bool negated = false;
      if (is(k, "not")) {
        negated = true;
        ++k;
      }
      if (k + 1 == toks_.size() && (is(k, "even") || is(k, "odd"))) {
        logic::TermPtr term;
        try {
          term = parse_term(toks_.subspan(1, j - 1));
        } catch (const ParseError&) {
          break;
        }
        auto kind = is(k, "even") ? logic::FormulaKind::Even : logic::FormulaKind::Odd;
        Span fs = join(toks_[1].span, toks_[k].span);
        FormulaPtr f = logic::make_relation(kind, {term}, fs);
        if (negated) f = logic::make_not(f, fs);
        s.kind = SentenceKind::Assume;
        s.cue = "let";
        s.formula = f;
        return s;
      }
    }

    s.kind = SentenceKind::Assume;
    s.cue = "let";
    s.formula = formula_from(1);
    return s;
  }

  SentenceAST parse_pick(SentenceAST& s, std::size_t i, std::string cue) {
    if (is_any(i, {"an", "a"})) ++i;
    if (!is(i, "integer")) nonprocessable("expected 'integer' after '" + toks_[0].text + "'");
    ++i;
    if (i >= toks_.size() || toks_[i].kind != TokenKind::Identifier)
      nonprocessable("expected a variable name");
    s.variables = {{toks_[i].text, toks_[i].span}};
    s.sort = Sort::Integer;
    ++i;
    auto body = such_that(i);
    if (!body) nonprocessable("expected 'such that' or 'with'");
    s.kind = SentenceKind::Pick;
    s.cue = std::move(cue);
    s.formula = formula_from(*body);
    return s;
  }

  SentenceAST parse_inference(SentenceAST& s) {
    std::size_t i = 0;
    if (auto cue = match_phrase(i, kCues)) {
      s.cue = *cue;
      i += std::count(cue->begin(), cue->end(), ' ') + 1;
      if (punct(i, ",")) ++i;
      if (auto filler = match_phrase(i, kFillers)) i += std::count(filler->begin(), filler->end(), ' ') + 1;
      if (is(i, "that")) ++i;
    }
    // "This is a contradiction." states ⊥.
    if (i < toks_.size()) {
      const auto rest = words_from(i);
      if (rest == "this is a contradiction" || rest == "a contradiction" || rest == "contradiction") {
        s.kind = SentenceKind::Infer;
        s.formula = logic::make_false(join(toks_[i].span, toks_.back().span));
        return s;
      }
    }
    // there is / there exists an integer k such that F
    if (is(i, "there") && is_any(i + 1, {"is", "exists"})) {
      std::size_t j = i + 2;
      if (is_any(j, {"an", "a", "some"})) ++j;
      if (!is(j, "integer")) nonprocessable("expected 'integer' in an existence claim");
      ++j;
      if (j >= toks_.size() || toks_[j].kind != TokenKind::Identifier)
        nonprocessable("expected a variable name");
      const Token& var = toks_[j];
      auto body = such_that(j + 1);
      if (!body) nonprocessable("expected 'such that' or 'with'");
      auto inner = formula_from(*body);
      s.kind = SentenceKind::ExistsClaim;
      s.formula = logic::make_exists(var.text, inner, join(toks_[i].span, toks_.back().span));
      return s;
    }
    s.kind = SentenceKind::Infer;
    s.formula = formula_from(i);
    return s;
  }

  std::optional<std::size_t> goal_prefix() {
    remains_ = false;
    std::size_t i = 0;
    if (is(0, "it") && is(1, "remains") && is(2, "to") && is(3, "show")) {
      remains_ = true;
      i = 4;
    } else {
      if (is(0, "we")) i = 1;
      if (is(i, "to") && is(i + 1, "show")) ++i;
      if (!is_any(i, {"show", "prove"})) return std::nullopt;
      ++i;
    }
    if (punct(i, ":") || is(i, "that")) ++i;
    return i;
  }

  std::optional<Sort> sort_phrase(std::size_t& j) {
    if (is_any(j, {"an", "a"})) ++j;
    if (j >= toks_.size()) return std::nullopt;
    auto w = lower(toks_[j].text);
    std::optional<Sort> sort;
    if (w == "integer" || w == "integers") sort = Sort::Integer;
    if (w == "set" || w == "sets") sort = Sort::Set;
    if (w == "proposition" || w == "propositions" || w == "statement" || w == "statements")
      sort = Sort::Proposition;
    if (sort) ++j;
    return sort;
  }

  std::optional<std::size_t> such_that(std::size_t i) {
    if (is(i, "with")) return i + 1;
    if (is(i, "such") && is(i + 1, "that")) return i + 2;
    return std::nullopt;
  }

  template <std::size_t N>
  std::optional<std::string> match_phrase(std::size_t i, const std::array<Phrase, N>& phrases) {
    for (const auto& phrase : phrases) {
      bool ok = true;
      for (std::size_t k = 0; k < phrase.size() && ok; ++k) ok = is(i + k, phrase[k]);
      if (!ok) continue;
      std::string out;
      for (auto w : phrase) out += (out.empty() ? "" : " ") + std::string(w);
      return out;
    }
    return std::nullopt;
  }

  bool matches_exactly(const Phrase& phrase) {
    if (phrase.size() != toks_.size()) return false;
    for (std::size_t k = 0; k < phrase.size(); ++k)
      if (!is(k, phrase[k])) return false;
    return true;
  }

  std::string words_from(std::size_t i) {
    std::string out;
    for (; i < toks_.size(); ++i) out += (out.empty() ? "" : " ") + lower(toks_[i].text);
    return out;
  }

  FormulaPtr formula_from(std::size_t i) {
    if (i >= toks_.size()) nonprocessable("expected a statement");
    try {
      return parse_formula(toks_.subspan(i));
    } catch (const ParseError& e) {
      if (e.diagnostic().span.begin == toks_[i].span.begin && toks_[i].kind == TokenKind::Word)
        nonprocessable("sentence not understood");
      Diagnostic d = e.diagnostic();
      throw ParseError(std::move(d));
    }
  }

  bool is(std::size_t i, std::string_view w) const {
    if (i >= toks_.size()) return false;
    const Token& t = toks_[i];
    if (t.kind != TokenKind::Word && t.kind != TokenKind::Identifier) return false;
    return lower(t.text) == w;
  }

  bool is_any(std::size_t i, std::initializer_list<std::string_view> ws) const {
    return std::any_of(ws.begin(), ws.end(), [&](std::string_view w) { return is(i, w); });
  }

  bool punct(std::size_t i, std::string_view p) const {
    return i < toks_.size() && toks_[i].kind == TokenKind::Punctuation && toks_[i].text == p;
  }

  [[noreturn]] void nonprocessable(const std::string& why) {
    Diagnostic d;
    d.kind = ErrorKind::NonprocessableSentence;
    d.span = span_;
    d.message = "nonprocessable sentence: " + why;
    throw ParseError(std::move(d));
  }

  std::span<const Token> toks_;
  Span span_;
  bool in_header_;
  bool remains_ = false;
};

struct RawSentence {
  std::vector<Token> tokens;
  std::vector<Diagnostic> lex_errors;
  Span span;
  bool header = true;
  bool missing_period = false;
  bool qed = false;
  bool started = false;

  void add(const Span& s) {
    span = started ? join(span, s) : s;
    started = true;
  }
};

}  // namespace

SentenceAST parse_sentence(std::string_view text, bool in_header) {
  auto tokens = tokenize(text);
  Span span{0, text.size()};
  SentenceParser parser(tokens, span, in_header);
  return parser.parse();
}

ProblemDocument parse_document(std::string_view source) {
  ProblemDocument doc;
  doc.source = std::string(source);
  auto lexed = lex(source);

  // Interleave tokens and lexical errors by position.
  struct Item {
    const Token* token;
    const Diagnostic* error;
    Span span;
  };
  std::vector<Item> items;
  for (const auto& t : lexed.tokens) items.push_back({&t, nullptr, t.span});
  for (const auto& e : lexed.errors) items.push_back({nullptr, &e, e.span});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.span.begin < b.span.begin; });

  std::vector<RawSentence> raw;
  RawSentence cur;
  bool in_body = false;
  auto flush = [&](bool missing_period) {
    if (!cur.started) return;
    cur.missing_period = missing_period;
    raw.push_back(std::move(cur));
    cur = RawSentence{};
    cur.header = !in_body;
  };
  auto is_punct = [](const Item& it, std::string_view p) {
    return it.token && it.token->kind == TokenKind::Punctuation && it.token->text == p;
  };

  for (std::size_t k = 0; k < items.size(); ++k) {
    const Item& it = items[k];
    if (it.error) {
      cur.lex_errors.push_back(*it.error);
      cur.add(it.span);
      continue;
    }
    const Token& tok = *it.token;
    if (!in_body && tok.kind == TokenKind::Word && lower(tok.text) == "proof" && k + 1 < items.size() &&
        (is_punct(items[k + 1], ":") || is_punct(items[k + 1], "."))) {
      flush(true);
      in_body = true;
      doc.has_proof_body = true;
      cur.header = false;
      ++k;
      continue;
    }
    if (is_qed_token(tok)) {
      flush(true);
      cur.add(tok.span);
      cur.tokens.push_back(tok);
      cur.qed = true;
      if (k + 1 < items.size() && is_punct(items[k + 1], ".")) {
        cur.add(items[k + 1].span);
        ++k;
      }
      flush(false);
      continue;
    }
    if (is_punct(it, ".")) {
      cur.add(tok.span);
      flush(false);
      continue;
    }
    cur.add(tok.span);
    cur.tokens.push_back(tok);
  }
  flush(true);

  bool goal_attempted = false;
  bool after_qed = false;
  for (std::size_t index = 0; index < raw.size(); ++index) {
    RawSentence& r = raw[index];
    doc.sentence_spans.push_back(r.span);
    if (r.header) doc.header_sentences = index + 1;

    auto report = [&](ErrorKind kind, Span span, std::string message, bool warning = false) {
      Diagnostic d;
      d.kind = kind;
      d.span = span;
      d.sentence = index;
      d.message = std::move(message);
      d.warning = warning;
      doc.diagnostics.push_back(std::move(d));
    };

    if (after_qed) {
      report(ErrorKind::TextAfterQed, r.span, "text after 'qed' is not part of the proof");
      continue;
    }
    if (!r.lex_errors.empty()) {
      for (auto& e : r.lex_errors) {
        e.sentence = index;
        doc.diagnostics.push_back(e);
      }
      continue;
    }
    if (r.missing_period && !r.qed && !r.tokens.empty()) {
      Span end{r.span.end, r.span.end};
      report(ErrorKind::MissingPeriod, end, "missing period at the end of the sentence", true);
    }

    SentenceParser parser(r.tokens, r.span, r.header);
    SentenceAST s;
    try {
      s = parser.parse();
    } catch (const ParseError& e) {
      Diagnostic d = e.diagnostic();
      d.sentence = index;
      doc.diagnostics.push_back(std::move(d));
      if (r.header && parser.looks_like_goal()) goal_attempted = true;
      continue;
    }
    s.index = index;
    s.span = r.span;
    s.in_header = r.header;

    if (r.header) {
      if (s.kind == SentenceKind::Declare || s.kind == SentenceKind::Assume) {
        doc.premises.push_back(std::move(s));
      } else if (s.kind == SentenceKind::GoalAnnounce && s.goal_form == GoalForm::Prove && !doc.goal) {
        goal_attempted = true;
        doc.goal = std::move(s);
      } else {
        report(ErrorKind::NonprocessableSentence, r.span,
               "nonprocessable sentence: only declarations, assumptions and one goal may appear before 'Proof:'");
      }
    } else {
      if (s.kind == SentenceKind::Qed) {
        doc.ends_with_qed = true;
        after_qed = true;
      }
      doc.proof.push_back(std::move(s));
    }
  }

  if (!doc.goal && !goal_attempted) {
    Diagnostic d;
    d.kind = ErrorKind::MissingGoal;
    d.message = "the exercise statement announces no goal (expected 'Prove: ...')";
    doc.diagnostics.push_back(std::move(d));
  } else if (!doc.has_proof_body) {
    Diagnostic d;
    d.kind = ErrorKind::MissingProofBody;
    d.span = {source.size(), source.size()};
    d.message = "no proof found (expected 'Proof: ... qed.')";
    doc.diagnostics.push_back(std::move(d));
  } else if (!doc.ends_with_qed) {
    Diagnostic d;
    d.kind = ErrorKind::MissingQed;
    d.span = {source.size(), source.size()};
    d.message = "the proof does not end with 'qed.'";
    d.warning = true;
    doc.diagnostics.push_back(std::move(d));
  }
  return doc;
}

}  // namespace proofcheck::cnl
