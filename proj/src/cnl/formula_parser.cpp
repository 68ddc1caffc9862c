// Recursive-descent parser for formula regions. English connectives and
// symbolic notation share one grammar:
//
//   statement   := "if" statement [","] "then" statement | equivalence
//   equivalence := implication [("↔" | "iff" | "if and only if") implication]
//   implication := disjunction [("→" | "implies") implication]
//   disjunction := conjunction {("∨" | "or" | "v") conjunction}
//   conjunction := negation {("∧" | "and" | "&") negation}
//   negation    := ("¬" | "not" | "it is not the case that") negation | atom
//   atom        := "⊥" | "even(" term ")" | "(" statement ")" | relation
//   relation    := term ( "=" term {"=" term} | "∈" term | "⊂" term | "|" term
//                       | "is" ["not"] ("even" | "odd") | "divides" term | ... )
//                | term
//
//   term        := inter {"∪" inter}      inter := product {"∩" product}
//   product     := sum {"×" sum}          sum   := factor {("+" | "-") factor}
//   factor      := signed {["*"] signed}  signed := "-" signed | power
//   power       := primary ["^" primary | "²" | "³"]
//   primary     := number | identifier | "(" term ["," term] ")"

#include <algorithm>
#include <cctype>
#include <initializer_list>

#include "proofcheck/cnl.hpp"

namespace proofcheck::cnl {

using logic::FormulaKind;
using logic::FormulaPtr;
using logic::TermKind;
using logic::TermPtr;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

  bool at_end() const { return pos_ >= toks_.size(); }
  std::size_t pos() const { return pos_; }

  FormulaPtr statement() {
    const std::size_t start = pos_;
    if (word("if")) {
      ++pos_;
      auto premise = statement();
      if (premise) {
        if (punct(",")) ++pos_;
        if (word("then")) {
          ++pos_;
          if (auto conclusion = statement())
            return logic::make_connective(FormulaKind::Implies, premise, conclusion, span_from(start));
        } else {
          fail("'then'");
        }
      }
      pos_ = start;
      return nullptr;
    }
    return equivalence();
  }

  TermPtr term() { return set_union(); }

  Diagnostic error() const {
    Diagnostic d;
    d.kind = ErrorKind::MalformedFormula;
    if (furthest_ < toks_.size()) {
      d.span = toks_[furthest_].span;
      d.message = "malformed formula: expected " + expected_ + " at '" + toks_[furthest_].text + "'";
    } else {
      std::size_t end = toks_.empty() ? 0 : toks_.back().span.end;
      d.span = {end, end};
      d.message = "malformed formula: expected " + expected_ + " at end of formula";
    }
    return d;
  }

  Diagnostic trailing_error() const {
    Diagnostic d;
    d.kind = ErrorKind::MalformedFormula;
    if (furthest_ > pos_) return error();
    d.span = toks_[pos_].span;
    d.message = "malformed formula: unexpected '" + toks_[pos_].text + "'";
    return d;
  }

  std::size_t furthest() const { return furthest_; }

 private:
  // --- token predicates ---------------------------------------------------

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }

  bool sym(std::initializer_list<std::string_view> options, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    if (!t || t->kind != TokenKind::Symbol) return false;
    return std::find(options.begin(), options.end(), t->text) != options.end();
  }

  bool word(std::string_view w, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->kind == TokenKind::Word && lower(t->text) == w;
  }

  bool punct(std::string_view p) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::Punctuation && t->text == p;
  }

  bool identifier(std::string_view name, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->kind == TokenKind::Identifier && t->text == name;
  }

  void fail(std::string expected) {
    if (pos_ > furthest_ || expected_.empty()) {
      furthest_ = pos_;
      expected_ = std::move(expected);
    } else if (pos_ == furthest_ && expected_.find(expected) == std::string::npos) {
      expected_ += " or " + expected;
    }
  }

  Span span_from(std::size_t start) const {
    if (start >= toks_.size() || pos_ == 0) return {};
    return join(toks_[start].span, toks_[pos_ - 1].span);
  }

  // Tokens that can extend a term or turn it into a relation.
  bool continues_term() const {
    const Token* t = peek();
    if (!t) return false;
    if (t->kind == TokenKind::Symbol) {
      static const std::initializer_list<std::string_view> ops = {
          "+", "-", "−", "*", "·", "⋅", "^", "²", "³", "∩", "∪", "×", "><", "=",
          "≠", "!=", "∈", "∉", "ε", "⊂", "⊆", "|", "∣", "("};
      return std::find(ops.begin(), ops.end(), t->text) != ops.end();
    }
    if (t->kind == TokenKind::Identifier) return t->text != "v";
    if (t->kind == TokenKind::Word) {
      auto w = lower(t->text);
      return w == "cap" || w == "cup" || w == "in" || w == "sub" || w == "is" || w == "divides" ||
             w == "does";
    }
    return false;
  }

  // --- formulas -----------------------------------------------------------

  FormulaPtr equivalence() {
    const std::size_t start = pos_;
    auto lhs = implication();
    if (!lhs) return nullptr;
    std::size_t consumed = 0;
    if (sym({"↔", "<->", "<=>", "⇔"}) || word("iff")) {
      consumed = 1;
    } else if (word("if") && word("and", 1) && word("only", 2) && word("if", 3)) {
      consumed = 4;
    }
    if (consumed == 0) return lhs;
    pos_ += consumed;
    auto rhs = implication();
    if (!rhs) return nullptr;
    return logic::make_connective(FormulaKind::Iff, lhs, rhs, span_from(start));
  }

  FormulaPtr implication() {
    const std::size_t start = pos_;
    auto lhs = disjunction();
    if (!lhs) return nullptr;
    if (sym({"→", "->", "=>", "⇒"}) || word("implies")) {
      ++pos_;
      auto rhs = implication();
      if (!rhs) return nullptr;
      return logic::make_connective(FormulaKind::Implies, lhs, rhs, span_from(start));
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    const std::size_t start = pos_;
    auto lhs = conjunction();
    if (!lhs) return nullptr;
    while (sym({"∨", "\\/"}) || word("or") || identifier("v")) {
      ++pos_;
      auto rhs = conjunction();
      if (!rhs) return nullptr;
      lhs = logic::make_connective(FormulaKind::Or, lhs, rhs, span_from(start));
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    const std::size_t start = pos_;
    auto lhs = negation();
    if (!lhs) return nullptr;
    while (sym({"∧", "/\\", "&"}) || word("and")) {
      ++pos_;
      auto rhs = negation();
      if (!rhs) return nullptr;
      lhs = logic::make_connective(FormulaKind::And, lhs, rhs, span_from(start));
    }
    return lhs;
  }

  FormulaPtr negation() {
    const std::size_t start = pos_;
    std::size_t consumed = 0;
    if (sym({"¬", "!", "~"}) || word("not")) {
      consumed = 1;
    } else if (word("it") && word("is", 1) && word("not", 2) && word("the", 3) && word("case", 4) &&
               word("that", 5)) {
      consumed = 6;
    }
    if (consumed == 0) return atom();
    pos_ += consumed;
    auto sub = negation();
    if (!sub) return nullptr;
    return logic::make_not(sub, span_from(start));
  }

  FormulaPtr atom() {
    const std::size_t start = pos_;
    if (!peek()) {
      fail("a statement");
      return nullptr;
    }
    if (sym({"⊥"}) || word("false") || word("contradiction")) {
      ++pos_;
      return logic::make_false(span_from(start));
    }
    if ((word("even") || word("odd")) && sym({"("}, 1)) {
      const bool even = word("even");
      pos_ += 2;
      auto t = term();
      if (!t) return nullptr;
      if (!sym({")"})) {
        fail("')'");
        return nullptr;
      }
      ++pos_;
      return logic::make_relation(even ? FormulaKind::Even : FormulaKind::Odd, {t}, span_from(start));
    }
    if (sym({"("})) {
      ++pos_;
      auto inner = statement();
      if (inner && sym({")"})) {
        ++pos_;
        if (!continues_term()) return inner;
      }
      pos_ = start;
    }
    return relation();
  }

  FormulaPtr relation() {
    const std::size_t start = pos_;
    auto lhs = term();
    if (!lhs) return nullptr;

    auto binary = [&](FormulaKind kind, bool negated) -> FormulaPtr {
      auto rhs = term();
      if (!rhs) return nullptr;
      auto f = logic::make_relation(kind, {lhs, rhs}, span_from(start));
      return negated ? logic::make_not(f, span_from(start)) : f;
    };

    if (sym({"="})) {
      FormulaPtr chain;
      TermPtr left = lhs;
      std::size_t link_start = start;
      while (sym({"="})) {
        ++pos_;
        const std::size_t right_start = pos_;
        auto right = term();
        if (!right) return nullptr;
        auto link = logic::make_relation(FormulaKind::Eq, {left, right}, span_from(link_start));
        chain = chain ? logic::make_connective(FormulaKind::And, chain, link, span_from(start)) : link;
        left = right;
        link_start = right_start;
      }
      return chain;
    }
    if (sym({"≠", "!="})) {
      ++pos_;
      return binary(FormulaKind::Eq, true);
    }
    if (sym({"∈", "ε"}) || word("in")) {
      ++pos_;
      return binary(FormulaKind::In, false);
    }
    if (sym({"∉"})) {
      ++pos_;
      return binary(FormulaKind::In, true);
    }
    if (sym({"⊂", "⊆"}) || word("sub")) {
      ++pos_;
      return binary(FormulaKind::Subset, false);
    }
    if (sym({"|", "∣"}) || word("divides")) {
      ++pos_;
      return binary(FormulaKind::Divides, false);
    }
    if (word("does") && word("not", 1) && word("divide", 2)) {
      pos_ += 3;
      return binary(FormulaKind::Divides, true);
    }
    if (word("is")) {
      ++pos_;
      bool negated = false;
      if (word("not")) {
        negated = true;
        ++pos_;
      }
      if (word("even") || word("odd")) {
        auto kind = word("even") ? FormulaKind::Even : FormulaKind::Odd;
        ++pos_;
        auto f = logic::make_relation(kind, {lhs}, span_from(start));
        return negated ? logic::make_not(f, span_from(start)) : f;
      }
      // "is an element of" / "is a subset of"
      if ((identifier("a") || word("an")) && (word("element", 1) || word("subset", 1)) && word("of", 2)) {
        auto kind = word("element", 1) ? FormulaKind::In : FormulaKind::Subset;
        pos_ += 3;
        return binary(kind, negated);
      }
      fail("'even', 'odd', 'an element of' or 'a subset of'");
      return nullptr;
    }

    if (lhs->kind == TermKind::Var) return logic::make_prop(lhs->name, lhs->span);
    if (lhs->kind == TermKind::Meta) return logic::make_meta_formula(lhs->name, lhs->span);
    return logic::make_term_statement(lhs, span_from(start));
  }

  // --- terms --------------------------------------------------------------

  template <typename Next>
  TermPtr left_assoc(Next next, std::initializer_list<std::pair<std::string_view, TermKind>> ops,
                     std::initializer_list<std::pair<std::string_view, TermKind>> word_ops) {
    const std::size_t start = pos_;
    auto lhs = (this->*next)();
    if (!lhs) return nullptr;
    for (;;) {
      std::optional<TermKind> kind;
      const Token* t = peek();
      if (!t) break;
      if (t->kind == TokenKind::Symbol) {
        for (auto& [text, k] : ops)
          if (t->text == text) kind = k;
      } else if (t->kind == TokenKind::Word) {
        for (auto& [text, k] : word_ops)
          if (lower(t->text) == text) kind = k;
      }
      if (!kind) break;
      ++pos_;
      auto rhs = (this->*next)();
      if (!rhs) return nullptr;
      lhs = logic::make_binary(*kind, lhs, rhs, span_from(start));
    }
    return lhs;
  }

  TermPtr set_union() { return left_assoc(&Parser::set_inter, {{"∪", TermKind::Union}}, {{"cup", TermKind::Union}}); }
  TermPtr set_inter() { return left_assoc(&Parser::set_prod, {{"∩", TermKind::Inter}}, {{"cap", TermKind::Inter}}); }
  TermPtr set_prod() { return left_assoc(&Parser::sum, {{"×", TermKind::Prod}, {"><", TermKind::Prod}}, {}); }
  TermPtr sum() {
    return left_assoc(&Parser::factor, {{"+", TermKind::Add}, {"-", TermKind::Sub}, {"−", TermKind::Sub}}, {});
  }

  bool implicit_factor_start() const {
    const Token* t = peek();
    if (!t) return false;
    if (t->kind == TokenKind::Identifier) return t->text != "v";
    return t->kind == TokenKind::Symbol && t->text == "(";
  }

  TermPtr factor() {
    const std::size_t start = pos_;
    auto lhs = signed_power();
    if (!lhs) return nullptr;
    for (;;) {
      if (sym({"*", "·", "⋅"})) {
        ++pos_;
      } else if (!implicit_factor_start()) {
        break;
      }
      auto rhs = signed_power();
      if (!rhs) return nullptr;
      lhs = logic::make_binary(TermKind::Mul, lhs, rhs, span_from(start));
    }
    return lhs;
  }

  TermPtr signed_power() {
    const std::size_t start = pos_;
    if (sym({"-", "−"})) {
      ++pos_;
      auto arg = signed_power();
      if (!arg) return nullptr;
      if (arg->kind == TermKind::IntConst) return logic::make_int(-arg->value, span_from(start));
      return logic::make_unary(TermKind::Neg, arg, span_from(start));
    }
    return power();
  }

  TermPtr power() {
    const std::size_t start = pos_;
    auto base = primary();
    if (!base) return nullptr;
    if (sym({"^"})) {
      ++pos_;
      auto exponent = primary();
      if (!exponent) return nullptr;
      return logic::make_binary(TermKind::Pow, base, exponent, span_from(start));
    }
    if (sym({"²", "³"})) {
      const Token& tok = *peek();
      unsigned e = tok.text == "²" ? 2 : 3;
      ++pos_;
      return logic::make_binary(TermKind::Pow, base, logic::make_int(e, tok.span), span_from(start));
    }
    return base;
  }

  TermPtr primary() {
    const std::size_t start = pos_;
    const Token* t = peek();
    if (!t) {
      fail("a term");
      return nullptr;
    }
    if (t->kind == TokenKind::Number) {
      ++pos_;
      return logic::make_int(logic::BigInt(t->text), t->span);
    }
    if (t->kind == TokenKind::Identifier) {
      ++pos_;
      if (t->text.front() == '?') return logic::make_meta_term(t->text.substr(1), t->span);
      return logic::make_var(t->text, t->span);
    }
    if (sym({"("})) {
      ++pos_;
      auto first = term();
      if (!first) return nullptr;
      if (punct(",")) {
        ++pos_;
        auto second = term();
        if (!second) return nullptr;
        if (!sym({")"})) {
          fail("')'");
          return nullptr;
        }
        ++pos_;
        return logic::make_binary(TermKind::Pair, first, second, span_from(start));
      }
      if (!sym({")"})) {
        fail("')'");
        return nullptr;
      }
      ++pos_;
      // Parentheses are not represented; widen the span to include them.
      auto widened = std::make_shared<logic::Term>(*first);
      widened->span = span_from(start);
      return widened;
    }
    fail("a term");
    return nullptr;
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  std::size_t furthest_ = 0;
  std::string expected_;
};

}  // namespace

FormulaPtr parse_formula(std::span<const Token> tokens) {
  Parser parser(tokens);
  auto f = parser.statement();
  if (!f) throw ParseError(parser.error());
  if (!parser.at_end()) throw ParseError(parser.trailing_error());
  return f;
}

FormulaPtr parse_formula(std::string_view text, LexOptions options) {
  auto tokens = tokenize(text, options);
  return parse_formula(std::span<const Token>(tokens));
}

TermPtr parse_term(std::span<const Token> tokens) {
  Parser parser(tokens);
  auto t = parser.term();
  if (!t) throw ParseError(parser.error());
  if (!parser.at_end()) throw ParseError(parser.trailing_error());
  return t;
}

TermPtr parse_term(std::string_view text, LexOptions options) {
  auto tokens = tokenize(text, options);
  return parse_term(std::span<const Token>(tokens));
}

}  // namespace proofcheck::cnl
