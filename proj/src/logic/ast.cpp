#include "proofcheck/logic.hpp"

namespace proofcheck::logic {

std::string_view to_string(Sort sort) {
  switch (sort) {
    case Sort::Unknown: return "unknown";
    case Sort::Integer: return "integer";
    case Sort::Set: return "set";
    case Sort::Proposition: return "proposition";
    case Sort::Pair: return "pair";
  }
  return "unknown";
}

TermPtr make_int(BigInt value, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::IntConst;
  t->value = std::move(value);
  t->span = span;
  return t;
}

TermPtr make_var(std::string name, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(name);
  t->span = span;
  return t;
}

TermPtr make_meta_term(std::string name, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Meta;
  t->name = std::move(name);
  t->span = span;
  return t;
}

TermPtr make_unary(TermKind kind, TermPtr arg, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->args = {std::move(arg)};
  t->span = span;
  return t;
}

TermPtr make_binary(TermKind kind, TermPtr lhs, TermPtr rhs, Span span) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->args = {std::move(lhs), std::move(rhs)};
  t->span = span;
  return t;
}

TermPtr make_pow(TermPtr base, unsigned exponent, Span span) {
  return make_binary(TermKind::Pow, std::move(base), make_int(exponent), span);
}

FormulaPtr make_prop(std::string name, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::PropVar;
  f->name = std::move(name);
  f->span = span;
  return f;
}

FormulaPtr make_meta_formula(std::string name, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Meta;
  f->name = std::move(name);
  f->span = span;
  return f;
}

FormulaPtr make_false(Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::False;
  f->span = span;
  return f;
}

FormulaPtr make_not(FormulaPtr sub, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->subs = {std::move(sub)};
  f->span = span;
  return f;
}

FormulaPtr make_connective(FormulaKind kind, FormulaPtr lhs, FormulaPtr rhs, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->subs = {std::move(lhs), std::move(rhs)};
  f->span = span;
  return f;
}

FormulaPtr make_relation(FormulaKind kind, std::vector<TermPtr> terms, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->terms = std::move(terms);
  f->span = span;
  return f;
}

FormulaPtr make_exists(std::string var, FormulaPtr body, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Exists;
  f->name = std::move(var);
  f->subs = {std::move(body)};
  f->span = span;
  return f;
}

FormulaPtr make_term_statement(TermPtr term, Span span) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::TermStatement;
  f->terms = {std::move(term)};
  f->span = span;
  return f;
}

bool same(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case TermKind::IntConst:
      if (a.value != b.value) return false;
      break;
    case TermKind::Var:
    case TermKind::Meta:
      if (a.name != b.name) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same(*a.args[i], *b.args[i])) return false;
  return true;
}

bool same(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.name != b.name || a.subs.size() != b.subs.size() ||
      a.terms.size() != b.terms.size())
    return false;
  for (std::size_t i = 0; i < a.subs.size(); ++i)
    if (!same(*a.subs[i], *b.subs[i])) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!same(*a.terms[i], *b.terms[i])) return false;
  return true;
}

bool is_connective(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return true;
    default:
      return false;
  }
}

bool is_set_operator(TermKind kind) {
  return kind == TermKind::Inter || kind == TermKind::Union || kind == TermKind::Prod;
}

bool is_arithmetic(TermKind kind) {
  switch (kind) {
    case TermKind::Neg:
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Mul:
    case TermKind::Pow:
      return true;
    default:
      return false;
  }
}

void collect_variables(const Term& term, std::set<std::string>& out) {
  if (term.kind == TermKind::Var) out.insert(term.name);
  for (const auto& arg : term.args) collect_variables(*arg, out);
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& out) {
  if (f.kind == FormulaKind::PropVar) out.insert(f.name);
  for (const auto& t : f.terms) collect_variables(*t, out);
  if (f.kind == FormulaKind::Exists) {
    std::set<std::string> inner;
    collect_free(*f.subs[0], inner);
    inner.erase(f.name);
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (const auto& s : f.subs) collect_free(*s, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& formula) {
  std::set<std::string> out;
  collect_free(formula, out);
  return out;
}

TermPtr substitute(const TermPtr& term, const std::map<std::string, TermPtr>& bindings) {
  if (term->kind == TermKind::Var || term->kind == TermKind::Meta) {
    auto it = bindings.find(term->name);
    return it == bindings.end() ? term : it->second;
  }
  if (term->args.empty()) return term;
  auto copy = std::make_shared<Term>(*term);
  bool changed = false;
  for (auto& arg : copy->args) {
    auto next = substitute(arg, bindings);
    changed |= next != arg;
    arg = std::move(next);
  }
  return changed ? copy : term;
}

FormulaPtr substitute(const FormulaPtr& formula, const std::map<std::string, TermPtr>& bindings) {
  if (bindings.empty()) return formula;
  if (formula->kind == FormulaKind::Exists && bindings.count(formula->name)) {
    auto inner = bindings;
    inner.erase(formula->name);
    return make_exists(formula->name, substitute(formula->subs[0], inner), formula->span);
  }
  auto copy = std::make_shared<Formula>(*formula);
  bool changed = false;
  for (auto& t : copy->terms) {
    auto next = substitute(t, bindings);
    changed |= next != t;
    t = std::move(next);
  }
  for (auto& s : copy->subs) {
    auto next = substitute(s, bindings);
    changed |= next != s;
    s = std::move(next);
  }
  return changed ? copy : formula;
}

std::vector<FormulaPtr> conjuncts(const FormulaPtr& formula) {
  if (formula->kind != FormulaKind::And) return {formula};
  auto out = conjuncts(formula->subs[0]);
  auto rhs = conjuncts(formula->subs[1]);
  out.insert(out.end(), rhs.begin(), rhs.end());
  return out;
}

FormulaPtr negate(const FormulaPtr& formula) {
  if (formula->kind == FormulaKind::Not) return formula->subs[0];
  return make_not(formula);
}

namespace {

TermPtr strip_term(const TermPtr& t) {
  auto copy = std::make_shared<Term>(*t);
  copy->span = {};
  copy->sort = Sort::Unknown;
  for (auto& a : copy->args) a = strip_term(a);
  return copy;
}

}  // namespace

FormulaPtr strip(const FormulaPtr& formula) {
  auto copy = std::make_shared<Formula>(*formula);
  copy->span = {};
  for (auto& t : copy->terms) t = strip_term(t);
  for (auto& s : copy->subs) s = strip(s);
  return copy;
}

}  // namespace proofcheck::logic
