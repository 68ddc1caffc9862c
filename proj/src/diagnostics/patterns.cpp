#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "proofcheck/algebra.hpp"
#include "proofcheck/cnl.hpp"
#include "proofcheck/diagnostics.hpp"

namespace proofcheck::diagnostics {

using logic::Formula;
using logic::FormulaKind;
using logic::FormulaPtr;
using logic::Term;
using logic::TermKind;
using logic::TermPtr;

namespace {

struct Bindings {
  std::map<std::string, FormulaPtr> formulas;
  std::map<std::string, TermPtr> terms;
};

bool match(const Term& schema, const TermPtr& t, Bindings& b) {
  if (schema.kind == TermKind::Meta) {
    auto it = b.terms.find(schema.name);
    if (it != b.terms.end()) return logic::same(*it->second, *t);
    b.terms.emplace(schema.name, t);
    return true;
  }
  if (schema.kind != t->kind || schema.args.size() != t->args.size()) return false;
  if (schema.kind == TermKind::IntConst) return schema.value == t->value;
  if (schema.kind == TermKind::Var) return schema.name == t->name;
  for (std::size_t i = 0; i < schema.args.size(); ++i)
    if (!match(*schema.args[i], t->args[i], b)) return false;
  return true;
}

bool match(const Formula& schema, const FormulaPtr& f, Bindings& b) {
  if (schema.kind == FormulaKind::Meta) {
    auto it = b.formulas.find(schema.name);
    if (it != b.formulas.end()) return logic::same(*it->second, *f);
    b.formulas.emplace(schema.name, f);
    return true;
  }
  if (schema.kind != f->kind || schema.subs.size() != f->subs.size() || schema.terms.size() != f->terms.size())
    return false;
  if ((schema.kind == FormulaKind::PropVar || schema.kind == FormulaKind::Exists) && schema.name != f->name)
    return false;
  for (std::size_t i = 0; i < schema.subs.size(); ++i)
    if (!match(*schema.subs[i], f->subs[i], b)) return false;
  for (std::size_t i = 0; i < schema.terms.size(); ++i)
    if (!match(*schema.terms[i], f->terms[i], b)) return false;
  return true;
}

bool match_premises(const std::vector<FormulaPtr>& schemas, std::size_t i, const std::vector<FormulaPtr>& facts,
                    Bindings& b) {
  if (i == schemas.size()) return true;
  for (const auto& fact : facts) {
    Bindings attempt = b;
    if (match(*schemas[i], fact, attempt) && match_premises(schemas, i + 1, facts, attempt)) {
      b = std::move(attempt);
      return true;
    }
  }
  return false;
}

std::string fill(const std::string& message, const Bindings& b) {
  std::string out;
  for (std::size_t i = 0; i < message.size(); ++i) {
    if (message[i] == '{' && i + 1 < message.size() && message[i + 1] == '?') {
      auto close = message.find('}', i);
      if (close != std::string::npos) {
        const std::string name = message.substr(i + 2, close - i - 2);
        if (auto f = b.formulas.find(name); f != b.formulas.end()) {
          out += logic::render(*f->second);
          i = close;
          continue;
        }
        if (auto t = b.terms.find(name); t != b.terms.end()) {
          out += logic::render(*t->second);
          i = close;
          continue;
        }
      }
    }
    out += message[i];
  }
  return out;
}

void differing(const TermPtr& a, const TermPtr& b, std::vector<std::pair<TermPtr, TermPtr>>& out) {
  if (logic::same(*a, *b)) return;
  out.emplace_back(a, b);
  if (a->kind != b->kind || a->args.size() != b->args.size()) return;
  for (std::size_t i = 0; i < a->args.size(); ++i) differing(a->args[i], b->args[i], out);
}

// The claim and the sub-claims a pattern may be about.
std::vector<FormulaPtr> views(const FormulaPtr& claim, const prover::KnowledgeBase& kb) {
  std::vector<FormulaPtr> out{claim};
  std::map<std::string, TermPtr> bindings;
  for (const auto& eq : kb.equalities()) bindings.emplace(eq->terms[0]->name, eq->terms[1]);
  auto add = [&](const FormulaPtr& f) {
    if (std::none_of(out.begin(), out.end(), [&](const FormulaPtr& g) { return logic::same(*f, *g); }))
      out.push_back(f);
  };
  const auto parts = logic::conjuncts(claim);
  for (const auto& c : parts) add(c);
  for (const auto& c : parts) {
    if (c->kind != FormulaKind::Eq) continue;
    std::vector<FormulaPtr> eqs{c};
    if (!bindings.empty()) eqs.push_back(logic::substitute(c, bindings));
    for (const auto& eq : eqs) {
      add(eq);
      std::vector<std::pair<TermPtr, TermPtr>> pairs;
      differing(eq->terms[0], eq->terms[1], pairs);
      for (const auto& [l, r] : pairs) {
        add(logic::make_eq(l, r));
        add(logic::make_eq(r, l));
      }
    }
  }
  return out;
}

// --- load-time validation ------------------------------------------------------

enum class Role { Statement, Element, Set, Number, Exponent };

void roles(const Term& t, Role role, std::map<std::string, Role>& out) {
  if (t.kind == TermKind::Meta) {
    out.emplace(t.name, role);
    return;
  }
  switch (t.kind) {
    case TermKind::Pow:
      roles(*t.args[0], Role::Number, out);
      roles(*t.args[1], Role::Exponent, out);
      return;
    case TermKind::Pair:
      for (const auto& a : t.args) roles(*a, Role::Element, out);
      return;
    case TermKind::Inter:
    case TermKind::Union:
    case TermKind::Prod:
      for (const auto& a : t.args) roles(*a, Role::Set, out);
      return;
    default:
      for (const auto& a : t.args) roles(*a, role == Role::Set ? Role::Set : Role::Number, out);
  }
}

void roles(const Formula& f, std::map<std::string, Role>& out, bool& arithmetic) {
  switch (f.kind) {
    case FormulaKind::Meta: out.emplace(f.name, Role::Statement); return;
    case FormulaKind::In:
      roles(*f.terms[0], Role::Element, out);
      roles(*f.terms[1], Role::Set, out);
      return;
    case FormulaKind::Subset:
      for (const auto& t : f.terms) roles(*t, Role::Set, out);
      return;
    case FormulaKind::Eq:
    case FormulaKind::Even:
    case FormulaKind::Odd:
    case FormulaKind::Divides:
      arithmetic = true;
      for (const auto& t : f.terms) roles(*t, Role::Number, out);
      return;
    default:
      for (const auto& s : f.subs) roles(*s, out, arithmetic);
  }
}

TermPtr with_sort(TermPtr t, logic::Sort sort) {
  auto copy = std::make_shared<Term>(*t);
  copy->sort = sort;
  return copy;
}

TermPtr instantiate(const TermPtr& t, const std::map<std::string, TermPtr>& terms) {
  if (t->kind == TermKind::Meta) return terms.at(t->name);
  auto copy = std::make_shared<Term>(*t);
  for (auto& a : copy->args) a = instantiate(a, terms);
  return copy;
}

FormulaPtr instantiate(const FormulaPtr& f, const std::map<std::string, FormulaPtr>& formulas,
                       const std::map<std::string, TermPtr>& terms) {
  if (f->kind == FormulaKind::Meta) return formulas.at(f->name);
  auto copy = std::make_shared<Formula>(*f);
  for (auto& s : copy->subs) s = instantiate(s, formulas, terms);
  for (auto& t : copy->terms) t = instantiate(t, terms);
  return copy;
}

std::optional<bool> evaluate_closed(const Formula& f) {
  auto value = [](const TermPtr& t) -> std::optional<logic::BigInt> {
    auto p = algebra::normalize(t);
    if (!p.is_constant()) return std::nullopt;
    return p.constant_term();
  };
  switch (f.kind) {
    case FormulaKind::False: return false;
    case FormulaKind::Not: {
      auto a = evaluate_closed(*f.subs[0]);
      if (!a) return std::nullopt;
      return !*a;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      auto a = evaluate_closed(*f.subs[0]);
      auto b = evaluate_closed(*f.subs[1]);
      if (!a || !b) return std::nullopt;
      if (f.kind == FormulaKind::And) return *a && *b;
      if (f.kind == FormulaKind::Or) return *a || *b;
      if (f.kind == FormulaKind::Implies) return !*a || *b;
      return *a == *b;
    }
    case FormulaKind::Eq: {
      auto a = value(f.terms[0]);
      auto b = value(f.terms[1]);
      if (!a || !b) return std::nullopt;
      return *a == *b;
    }
    case FormulaKind::Even:
    case FormulaKind::Odd: {
      auto a = value(f.terms[0]);
      if (!a) return std::nullopt;
      const bool even = mpz_even_p(a->get_mpz_t()) != 0;
      return f.kind == FormulaKind::Even ? even : !even;
    }
    case FormulaKind::Divides: {
      auto d = value(f.terms[0]);
      auto a = value(f.terms[1]);
      if (!d || !a || *d == 0) return std::nullopt;
      return mpz_divisible_p(a->get_mpz_t(), d->get_mpz_t()) != 0;
    }
    default: return std::nullopt;
  }
}

// Throws CatalogError if the rule is a valid inference (or cannot be checked).
void validate(const PatternRule& rule, std::size_t line) {
  std::map<std::string, Role> metas;
  bool arithmetic = false;
  for (const auto& p : rule.premises) roles(*p, metas, arithmetic);
  roles(*rule.claim, metas, arithmetic);

  if (!arithmetic) {
    std::map<std::string, FormulaPtr> formulas;
    std::map<std::string, TermPtr> terms;
    for (const auto& [name, role] : metas) {
      if (role == Role::Statement) formulas[name] = logic::make_prop(name);
      else if (role == Role::Set) terms[name] = with_sort(logic::make_var(name), logic::Sort::Set);
      else terms[name] = with_sort(logic::make_var(name), logic::Sort::Integer);
    }
    std::vector<FormulaPtr> premises;
    for (const auto& p : rule.premises) premises.push_back(instantiate(p, formulas, terms));
    FormulaPtr claim = instantiate(rule.claim, formulas, terms);
    if (claim->kind == FormulaKind::Subset) {
      // S ⊂ T holds iff an arbitrary fresh element of S lies in T
      auto z = with_sort(logic::make_var("z0"), logic::Sort::Integer);
      claim = logic::make_implies(logic::make_in(z, claim->terms[0]), logic::make_in(z, claim->terms[1]));
    }
    prover::StepVerdict v;
    try {
      v = prover::entails_set(premises, claim);
    } catch (const prover::ProverError& e) {
      throw CatalogError(line, "rule '" + rule.id + "' cannot be validated: " + e.what());
    }
    if (v.verified()) throw CatalogError(line, "rule '" + rule.id + "' describes a valid inference");
    return;
  }

  std::vector<std::string> names;
  for (const auto& [name, role] : metas) {
    if (role == Role::Statement || role == Role::Set || role == Role::Element)
      throw CatalogError(line, "rule '" + rule.id + "' mixes arithmetic with statement or set variables");
    names.push_back(name);
  }
  static const int kSamples[] = {-2, -1, 0, 1, 2, 3};
  static const int kExponents[] = {2, 3};
  std::vector<std::size_t> index(names.size(), 0);
  for (;;) {
    std::map<std::string, TermPtr> terms;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const int v = metas[names[i]] == Role::Exponent ? kExponents[index[i]] : kSamples[index[i]];
      terms[names[i]] = logic::make_int(v);
    }
    bool premises_hold = true;
    for (const auto& p : rule.premises) {
      auto r = evaluate_closed(*instantiate(p, {}, terms));
      if (!r) throw CatalogError(line, "rule '" + rule.id + "' cannot be evaluated");
      premises_hold = premises_hold && *r;
    }
    auto c = evaluate_closed(*instantiate(rule.claim, {}, terms));
    if (!c) throw CatalogError(line, "rule '" + rule.id + "' cannot be evaluated");
    if (premises_hold && !*c) return;  // a counterexample: the rule is invalid, as it should be
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      const std::size_t limit = metas[names[i]] == Role::Exponent ? 2 : 6;
      if (++index[i] < limit) break;
      index[i] = 0;
    }
    if (i == names.size()) break;
  }
  throw CatalogError(line, "rule '" + rule.id + "' describes a valid inference (no sample refutes it)");
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

FormulaPtr parse_schema(const std::string& text, std::size_t line, const std::string& id) {
  try {
    return cnl::parse_formula(text, cnl::LexOptions{true});
  } catch (const cnl::ParseError& e) {
    throw CatalogError(line, "rule '" + id + "': cannot parse schema '" + text + "': " + e.what());
  }
}

}  // namespace

std::vector<PatternRule> parse_catalog(std::string_view text) {
  std::vector<PatternRule> rules;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      auto bar = stripped.find('|', start);
      if (bar == std::string::npos) throw CatalogError(line, "expected 4 fields separated by '|'");
      fields.push_back(trim(stripped.substr(start, bar - start)));
      start = bar + 1;
    }
    fields.push_back(trim(stripped.substr(start)));

    PatternRule rule;
    rule.id = fields[0];
    if (rule.id.empty()) throw CatalogError(line, "missing rule id");
    std::stringstream premises(fields[1]);
    std::string p;
    while (std::getline(premises, p, ';')) {
      p = trim(p);
      if (!p.empty()) rule.premises.push_back(parse_schema(p, line, rule.id));
    }
    if (fields[2].empty()) throw CatalogError(line, "rule '" + rule.id + "' has no claim schema");
    rule.claim = parse_schema(fields[2], line, rule.id);
    rule.message = fields[3];
    if (rule.message.empty()) throw CatalogError(line, "rule '" + rule.id + "' has no message");

    std::map<std::string, Role> metas;
    bool arithmetic = false;
    for (const auto& pr : rule.premises) roles(*pr, metas, arithmetic);
    roles(*rule.claim, metas, arithmetic);
    for (std::size_t pos = rule.message.find("{?"); pos != std::string::npos; pos = rule.message.find("{?", pos + 1)) {
      auto close = rule.message.find('}', pos);
      if (close == std::string::npos) throw CatalogError(line, "unterminated placeholder in message");
      const std::string name = rule.message.substr(pos + 2, close - pos - 2);
      if (!metas.count(name))
        throw CatalogError(line, "placeholder {?" + name + "} does not occur in the schemas of '" + rule.id + "'");
    }
    validate(rule, line);
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<PatternRule> load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError(0, "cannot open pattern catalog '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str());
}

const std::vector<PatternRule>& default_catalog() {
  static const std::vector<PatternRule> catalog = parse_catalog(default_catalog_text());
  return catalog;
}

std::vector<PatternMatch> detect_patterns(const logic::TypedFormula& claim, const prover::KnowledgeBase& kb,
                                          const std::vector<PatternRule>& catalog) {
  std::vector<FormulaPtr> facts;
  for (const auto& f : kb.facts)
    for (const auto& c : logic::conjuncts(f.formula())) facts.push_back(c);
  const auto candidates = views(claim.formula(), kb);

  std::vector<PatternMatch> out;
  for (const auto& rule : catalog) {
    if (std::any_of(out.begin(), out.end(), [&](const PatternMatch& m) { return m.id == rule.id; })) continue;
    for (const auto& view : candidates) {
      Bindings b;
      if (!match(*rule.claim, view, b)) continue;
      if (!match_premises(rule.premises, 0, facts, b)) continue;
      out.push_back({rule.id, fill(rule.message, b)});
      break;
    }
  }
  return out;
}

}  // namespace proofcheck::diagnostics
