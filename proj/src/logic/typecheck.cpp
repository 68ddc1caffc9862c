#include "proofcheck/logic.hpp"

namespace proofcheck::logic {

bool TypeContext::declare(const std::string& name, Sort sort) {
  if (contains(name)) return false;
  entries_.emplace_back(name, sort);
  return true;
}

std::optional<Sort> TypeContext::lookup(std::string_view name) const {
  for (const auto& [n, s] : entries_)
    if (n == name) return s;
  return std::nullopt;
}

TypeError::TypeError(TypeErrorKind kind, std::string name, Sort declared, Sort required, Span span,
                     std::string message)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      name_(std::move(name)),
      declared_(declared),
      required_(required),
      span_(span) {}

namespace {

[[noreturn]] void mismatch(const Term& t, Sort actual, Sort required) {
  const std::string name = t.kind == TermKind::Var ? t.name : render(t);
  throw TypeError(TypeErrorKind::TypeMismatch, name, actual, required, t.span,
                  "'" + name + "' is " + (t.kind == TermKind::Var ? "declared as " : "") + "a " +
                      std::string(to_string(actual)) + " but a " + std::string(to_string(required)) +
                      " is required here");
}

class Checker {
 public:
  explicit Checker(const TypeContext& ctx) : ctx_(ctx) {}

  // Infers the sort of a term; `required` (if known) is checked against it.
  TermPtr term(const TermPtr& t, Sort required) {
    auto out = std::make_shared<Term>(*t);
    switch (t->kind) {
      case TermKind::IntConst:
        out->sort = Sort::Integer;
        break;
      case TermKind::Meta:
        out->sort = required;
        break;
      case TermKind::Var: {
        auto declared = lookup(t->name);
        if (!declared)
          throw TypeError(TypeErrorKind::UndeclaredVariable, t->name, Sort::Unknown, required, t->span,
                          "variable '" + t->name + "' has not been declared");
        out->sort = *declared;
        break;
      }
      case TermKind::Neg:
      case TermKind::Add:
      case TermKind::Sub:
      case TermKind::Mul:
        for (auto& a : out->args) a = term(a, Sort::Integer);
        for (const auto& a : out->args) expect(*a, Sort::Integer);
        out->sort = Sort::Integer;
        break;
      case TermKind::Pow: {
        out->args[0] = term(t->args[0], Sort::Integer);
        expect(*out->args[0], Sort::Integer);
        const Term& e = *t->args[1];
        if (e.kind == TermKind::Meta) {
          out->args[1] = term(t->args[1], Sort::Integer);
        } else if (e.kind != TermKind::IntConst || e.value < 0) {
          throw TypeError(TypeErrorKind::InvalidExponent, render(e), Sort::Unknown, Sort::Integer, e.span,
                          "exponent '" + render(e) + "' must be a non-negative integer constant");
        } else {
          out->args[1] = term(t->args[1], Sort::Integer);
        }
        out->sort = Sort::Integer;
        break;
      }
      case TermKind::Pair:
        for (auto& a : out->args) a = term(a, Sort::Integer);
        for (const auto& a : out->args) expect(*a, Sort::Integer);
        out->sort = Sort::Pair;
        break;
      case TermKind::Inter:
      case TermKind::Union:
      case TermKind::Prod:
        for (auto& a : out->args) a = term(a, Sort::Set);
        for (const auto& a : out->args) expect(*a, Sort::Set);
        out->sort = Sort::Set;
        break;
    }
    return out;
  }

  FormulaPtr formula(const FormulaPtr& f) {
    auto out = std::make_shared<Formula>(*f);
    switch (f->kind) {
      case FormulaKind::PropVar: {
        auto declared = lookup(f->name);
        if (!declared)
          throw TypeError(TypeErrorKind::UndeclaredVariable, f->name, Sort::Unknown, Sort::Proposition, f->span,
                          "variable '" + f->name + "' has not been declared");
        if (*declared != Sort::Proposition)
          throw TypeError(TypeErrorKind::AssumedNonProposition, f->name, *declared, Sort::Proposition, f->span,
                          "'" + f->name + "' is a " + std::string(to_string(*declared)) +
                              ", not a statement; it cannot be assumed or concluded");
        break;
      }
      case FormulaKind::TermStatement:
        throw TypeError(TypeErrorKind::AssumedNonProposition, render(*f->terms[0]), Sort::Integer,
                        Sort::Proposition, f->span,
                        "'" + render(*f->terms[0]) + "' is a term, not a statement");
      case FormulaKind::Meta:
      case FormulaKind::False:
        break;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
        for (auto& s : out->subs) s = formula(s);
        break;
      case FormulaKind::Exists: {
        if (lookup(f->name))
          throw TypeError(TypeErrorKind::AlreadyDeclared, f->name, *lookup(f->name), Sort::Integer, f->span,
                          "variable '" + f->name + "' is already declared");
        bound_.emplace_back(f->name, Sort::Integer);
        out->subs[0] = formula(f->subs[0]);
        bound_.pop_back();
        break;
      }
      case FormulaKind::Eq: {
        out->terms[0] = term(f->terms[0], Sort::Unknown);
        const Sort lhs = out->terms[0]->sort;
        if (lhs == Sort::Proposition) expect(*out->terms[0], Sort::Integer);
        out->terms[1] = term(f->terms[1], lhs);
        expect(*out->terms[1], lhs);
        break;
      }
      case FormulaKind::In: {
        out->terms[0] = term(f->terms[0], Sort::Integer);
        out->terms[1] = term(f->terms[1], Sort::Set);
        const Term& element = *out->terms[0];
        expect(*out->terms[1], Sort::Set);
        if (element.sort != Sort::Integer && element.sort != Sort::Pair && element.kind != TermKind::Meta)
          mismatch(element, element.sort, Sort::Integer);
        if (f->terms[1]->kind == TermKind::Prod && element.sort == Sort::Integer)
          mismatch(element, Sort::Integer, Sort::Pair);
        break;
      }
      case FormulaKind::Subset:
        for (auto& t : out->terms) t = term(t, Sort::Set);
        for (const auto& t : out->terms) expect(*t, Sort::Set);
        break;
      case FormulaKind::Even:
      case FormulaKind::Odd:
        out->terms[0] = term(f->terms[0], Sort::Integer);
        expect(*out->terms[0], Sort::Integer);
        break;
      case FormulaKind::Divides: {
        const Term& d = *f->terms[0];
        bool ok = (d.kind == TermKind::IntConst && d.value != 0) || d.kind == TermKind::Var ||
                  d.kind == TermKind::Meta;
        if (!ok)
          throw TypeError(TypeErrorKind::InvalidDivisor, render(d), Sort::Integer, Sort::Integer, d.span,
                          "divisor '" + render(d) + "' must be a nonzero constant or an integer variable");
        out->terms[0] = term(f->terms[0], Sort::Integer);
        expect(*out->terms[0], Sort::Integer);
        out->terms[1] = term(f->terms[1], Sort::Integer);
        expect(*out->terms[1], Sort::Integer);
        break;
      }
    }
    return out;
  }

 private:
  std::optional<Sort> lookup(std::string_view name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == name) return it->second;
    return ctx_.lookup(name);
  }

  static void expect(const Term& t, Sort required) {
    if (t.kind == TermKind::Meta || required == Sort::Unknown) return;
    if (t.sort != required) mismatch(t, t.sort, required);
  }

  const TypeContext& ctx_;
  std::vector<std::pair<std::string, Sort>> bound_;
};

}  // namespace

TypedFormula typecheck(const FormulaPtr& formula, const TypeContext& ctx) {
  Checker checker(ctx);
  return TypedFormula(checker.formula(formula));
}

Sort sort_of(const TermPtr& term, const TypeContext& ctx) {
  Checker checker(ctx);
  return checker.term(term, Sort::Unknown)->sort;
}

TypedFormula assume_typed(FormulaPtr formula) { return TypedFormula(std::move(formula)); }

}  // namespace proofcheck::logic
