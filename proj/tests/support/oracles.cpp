#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "proofcheck/cnl.hpp"

namespace oracle {

using Json = nlohmann::ordered_json;

// --- formulas ---------------------------------------------------------------------

std::string text(const SetExpr& s) {
  switch (s.op) {
    case SetExpr::Var: return s.name;
    case SetExpr::Inter: return "(" + text(*s.l) + " ∩ " + text(*s.r) + ")";
    case SetExpr::Union: return "(" + text(*s.l) + " ∪ " + text(*s.r) + ")";
  }
  return "?";
}

std::string text(const Prop& p) {
  switch (p.op) {
    case Prop::Atom: return p.name;
    case Prop::Member: return p.element + " ∈ " + text(*p.set);
    case Prop::PairMember: return "(x,y) ∈ (" + text(*p.set) + " × " + text(*p.set2) + ")";
    case Prop::Subset: return text(*p.set) + " ⊂ " + text(*p.set2);
    case Prop::SetEq: return text(*p.set) + " = " + text(*p.set2);
    case Prop::Not: return "¬(" + text(*p.l) + ")";
    case Prop::And: return "(" + text(*p.l) + ") ∧ (" + text(*p.r) + ")";
    case Prop::Or: return "(" + text(*p.l) + ") ∨ (" + text(*p.r) + ")";
    case Prop::Implies: return "(" + text(*p.l) + ") → (" + text(*p.r) + ")";
    case Prop::Iff: return "(" + text(*p.l) + ") ↔ (" + text(*p.r) + ")";
  }
  return "?";
}

namespace {

bool in(const std::string& e, const SetExpr& s, const Model& m) {
  switch (s.op) {
    case SetExpr::Var: {
      auto it = m.member.find({e, s.name});
      return it != m.member.end() && it->second;
    }
    case SetExpr::Inter: return in(e, *s.l, m) && in(e, *s.r, m);
    case SetExpr::Union: return in(e, *s.l, m) || in(e, *s.r, m);
  }
  return false;
}

const std::vector<std::string> kElements = {"x", "y"};

}  // namespace

bool holds(const Prop& p, const Model& m) {
  switch (p.op) {
    case Prop::Atom: {
      auto it = m.atoms.find(p.name);
      return it != m.atoms.end() && it->second;
    }
    case Prop::Member: return in(p.element, *p.set, m);
    case Prop::PairMember: return in("x", *p.set, m) && in("y", *p.set2, m);
    case Prop::Subset:
      return std::all_of(kElements.begin(), kElements.end(),
                         [&](const std::string& e) { return !in(e, *p.set, m) || in(e, *p.set2, m); });
    case Prop::SetEq:
      return std::all_of(kElements.begin(), kElements.end(),
                         [&](const std::string& e) { return in(e, *p.set, m) == in(e, *p.set2, m); });
    case Prop::Not: return !holds(*p.l, m);
    case Prop::And: return holds(*p.l, m) && holds(*p.r, m);
    case Prop::Or: return holds(*p.l, m) || holds(*p.r, m);
    case Prop::Implies: return !holds(*p.l, m) || holds(*p.r, m);
    case Prop::Iff: return holds(*p.l, m) == holds(*p.r, m);
  }
  return false;
}

namespace {

class Gen {
 public:
  Gen(std::mt19937_64& rng, std::vector<std::string> props, std::vector<std::string> sets)
      : rng_(rng), props_(std::move(props)), sets_(std::move(sets)) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  SetPtr set(int depth) {
    auto s = std::make_shared<SetExpr>();
    if (depth <= 0 || pick(3) == 0) {
      s->op = SetExpr::Var;
      s->name = sets_[static_cast<std::size_t>(pick(static_cast<int>(sets_.size())))];
      return s;
    }
    s->op = pick(2) ? SetExpr::Inter : SetExpr::Union;
    s->l = set(depth - 1);
    s->r = set(depth - 1);
    return s;
  }

  PropPtr atom() {
    auto p = std::make_shared<Prop>();
    const bool use_set = !sets_.empty() && (props_.empty() || pick(3) != 0);
    if (!use_set) {
      p->op = Prop::Atom;
      p->name = props_[static_cast<std::size_t>(pick(static_cast<int>(props_.size())))];
      return p;
    }
    if (pick(8) == 0) {
      p->op = Prop::PairMember;
      p->set = set(1);
      p->set2 = set(1);
      return p;
    }
    p->op = Prop::Member;
    p->element = kElements[static_cast<std::size_t>(pick(2))];
    p->set = set(2);
    return p;
  }

  PropPtr formula(int depth) {
    if (depth <= 0 || pick(3) == 0) return atom();
    auto p = std::make_shared<Prop>();
    switch (pick(5)) {
      case 0:
        p->op = Prop::Not;
        p->l = formula(depth - 1);
        return p;
      case 1: p->op = Prop::And; break;
      case 2: p->op = Prop::Or; break;
      case 3: p->op = Prop::Implies; break;
      default: p->op = Prop::Iff; break;
    }
    p->l = formula(depth - 1);
    p->r = formula(depth - 1);
    return p;
  }

  PropPtr premise() {
    if (!sets_.empty() && pick(4) == 0) {
      auto p = std::make_shared<Prop>();
      p->op = pick(3) ? Prop::Subset : Prop::SetEq;
      p->set = set(1);
      p->set2 = set(1);
      return p;
    }
    return formula(2);
  }

 private:
  std::mt19937_64& rng_;
  std::vector<std::string> props_;
  std::vector<std::string> sets_;
};

}  // namespace

Query random_query(std::mt19937_64& rng) {
  const std::vector<std::string> all_props = {"P", "Q", "R", "S"};
  const std::vector<std::string> all_sets = {"A", "B", "C", "D"};
  Query q;
  const int kind = std::uniform_int_distribution<int>(0, 2)(rng);  // 0 prop, 1 sets, 2 mixed
  const int nvars = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < nvars; ++i) {
    const bool set = kind == 1 || (kind == 2 && i % 2 == 1);
    if (set) q.sets.push_back(all_sets[q.sets.size()]);
    else q.props.push_back(all_props[q.props.size()]);
  }
  q.uses_sets = !q.sets.empty();
  Gen g(rng, q.props, q.sets);
  const int n = g.pick(4);
  for (int i = 0; i < n; ++i) q.premises.push_back(g.premise());
  // Half of the claims are built from the premises so that entailed queries are common.
  if (!q.premises.empty() && g.pick(2) == 0) {
    auto c = std::make_shared<Prop>();
    const auto& base = q.premises[static_cast<std::size_t>(g.pick(static_cast<int>(q.premises.size())))];
    if (base->op == Prop::Subset || base->op == Prop::SetEq) {
      q.claim = g.formula(2);
      return q;
    }
    c->op = g.pick(2) ? Prop::Or : Prop::Implies;
    c->l = c->op == Prop::Or ? base : g.formula(1);
    c->r = c->op == Prop::Or ? g.formula(1) : base;
    q.claim = c;
  } else {
    q.claim = g.formula(3);
  }
  return q;
}

Verdict entails(const Query& q) {
  std::vector<std::pair<std::string, std::string>> cells;
  for (const auto& e : kElements)
    for (const auto& s : q.sets) cells.emplace_back(e, s);
  const std::size_t bits = cells.size() + q.props.size();
  for (unsigned long mask = 0; mask < (1ul << bits); ++mask) {
    Model m;
    std::size_t b = 0;
    for (const auto& c : cells) m.member[c] = (mask >> b++) & 1u;
    for (const auto& p : q.props) m.atoms[p] = (mask >> b++) & 1u;
    bool premises = std::all_of(q.premises.begin(), q.premises.end(), [&](const PropPtr& p) { return holds(*p, m); });
    if (premises && !holds(*q.claim, m)) return {false, m};
  }
  return {true, std::nullopt};
}

std::optional<Model> model_of(const proofcheck::prover::Countermodel& cm, std::string* why) {
  Model m;
  using Kind = proofcheck::prover::Countermodel::Kind;
  if (cm.kind == Kind::Propositional) {
    for (const auto& [atom, value] : cm.assignment) m.atoms[atom] = value;
    return m;
  }
  for (const auto& mem : cm.memberships) {
    if (mem.element.find('(') != std::string::npos) continue;  // pairs are decomposed by the oracle
    m.member[{mem.element, mem.set}] = mem.member;
  }
  for (const auto& [atom, value] : cm.propositions) {
    if (atom.find_first_of("[(") != std::string::npos) {
      if (why) *why = "countermodel contains an opaque atom " + atom;
      return std::nullopt;
    }
    m.atoms[atom] = value;
  }
  return m;
}

bool countermodel_valid(const Query& q, const proofcheck::prover::Countermodel& cm, std::string* why) {
  auto m = model_of(cm, why);
  if (!m) return false;
  for (const auto& p : q.premises) {
    if (!holds(*p, *m)) {
      if (why) *why = "premise fails in the countermodel: " + text(*p);
      return false;
    }
  }
  if (holds(*q.claim, *m)) {
    if (why) *why = "claim holds in the countermodel: " + text(*q.claim);
    return false;
  }
  return true;
}

// --- terms ---------------------------------------------------------------------------

std::string text(const Term& t) {
  switch (t.op) {
    case Term::Const: return t.value < 0 ? "(" + std::to_string(t.value) + ")" : std::to_string(t.value);
    case Term::Var: return t.name;
    case Term::Neg: return "(-" + text(*t.l) + ")";
    case Term::Add: return "(" + text(*t.l) + "+" + text(*t.r) + ")";
    case Term::Sub: return "(" + text(*t.l) + "-" + text(*t.r) + ")";
    case Term::Mul: return "(" + text(*t.l) + "*" + text(*t.r) + ")";
    case Term::Pow: return "(" + text(*t.l) + ")^" + std::to_string(t.exponent);
  }
  return "?";
}

mpz_class eval(const Term& t, const std::map<std::string, mpz_class>& env) {
  switch (t.op) {
    case Term::Const: return mpz_class(t.value);
    case Term::Var: return env.at(t.name);
    case Term::Neg: return -eval(*t.l, env);
    case Term::Add: return eval(*t.l, env) + eval(*t.r, env);
    case Term::Sub: return eval(*t.l, env) - eval(*t.r, env);
    case Term::Mul: return eval(*t.l, env) * eval(*t.r, env);
    case Term::Pow: {
      mpz_class out;
      const mpz_class base = eval(*t.l, env);
      mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), t.exponent);
      return out;
    }
  }
  return 0;
}

TermPtr random_term(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto t = std::make_shared<Term>();
  if (depth <= 0 || pick(4) == 0) {
    if (pick(2)) {
      t->op = Term::Const;
      t->value = std::uniform_int_distribution<long>(-9, 9)(rng);
    } else {
      t->op = Term::Var;
      t->name = std::string(1, "xyz"[pick(3)]);
    }
    return t;
  }
  switch (pick(5)) {
    case 0:
      t->op = Term::Neg;
      t->l = random_term(rng, depth - 1);
      return t;
    case 1: t->op = Term::Add; break;
    case 2: t->op = Term::Sub; break;
    case 3: t->op = Term::Mul; break;
    default:
      t->op = Term::Pow;
      t->exponent = static_cast<unsigned>(pick(4));
      t->l = random_term(rng, depth - 2);
      return t;
  }
  t->l = random_term(rng, depth - 1);
  t->r = random_term(rng, depth - 1);
  return t;
}

// --- corpus ----------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void replace_once(std::string& text, const std::string& find, const std::string& with, const std::string& id) {
  const auto pos = text.find(find);
  if (pos == std::string::npos || text.find(find, pos + 1) != std::string::npos)
    throw std::runtime_error(id + ": anchor must occur exactly once: " + find);
  text.replace(pos, find.size(), with);
}

}  // namespace

std::vector<MutationCase> load_mutations(const std::string& corpus_dir) {
  const Json suite = Json::parse(read_file(corpus_dir + "/mutations.json"));
  std::vector<MutationCase> out;
  for (const auto& c : suite.at("cases")) {
    MutationCase m;
    m.id = c.at("id").get<std::string>();
    m.base = c.at("base").get<std::string>();
    m.text = read_file(corpus_dir + "/" + m.base);
    for (const auto& e : c.at("edits")) {
      const auto op = e.at("op").get<std::string>();
      if (op == "append") {
        while (!m.text.empty() && m.text.back() == '\n') m.text.pop_back();
        m.text += e.at("text").get<std::string>() + "\n";
      } else if (op == "replace") {
        replace_once(m.text, e.at("find"), e.at("with"), m.id);
      } else if (op == "delete") {
        replace_once(m.text, e.at("find"), "", m.id);
      } else if (op == "insert-after") {
        const std::string find = e.at("find");
        replace_once(m.text, find, find + e.at("text").get<std::string>(), m.id);
      } else {
        throw std::runtime_error(m.id + ": unknown edit " + op);
      }
    }
    const auto& expect = c.at("expect");
    m.status = expect.at("status");
    m.items = expect.at("items").get<std::vector<std::string>>();
    std::sort(m.items.begin(), m.items.end());
    m.countermodel = expect.value("countermodel", false);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::string> signatures(const Json& response) {
  std::vector<std::string> out;
  for (const auto& item : response.at("items")) {
    std::string s = item.at("category");
    if (!item.at("pattern").is_null()) s += ":" + item.at("pattern").get<std::string>();
    if (item.at("severity") == "warning") s += "/warning";
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- document countermodels -------------------------------------------------------------

namespace {

using proofcheck::logic::Formula;
using proofcheck::logic::FormulaKind;
using proofcheck::logic::TermKind;

struct DocModel {
  std::map<std::string, bool> atoms;
  std::map<std::pair<std::string, std::string>, bool> member;
  std::set<std::string> elements;
};

bool term_in(const proofcheck::logic::Term& e, const proofcheck::logic::Term& s, const DocModel& m) {
  switch (s.kind) {
    case TermKind::Var: {
      if (e.kind != TermKind::Var) throw std::runtime_error("unsupported element");
      auto it = m.member.find({e.name, s.name});
      if (it == m.member.end()) throw std::runtime_error("countermodel omits " + e.name + " ∈ " + s.name);
      return it->second;
    }
    case TermKind::Inter: return term_in(e, *s.args[0], m) && term_in(e, *s.args[1], m);
    case TermKind::Union: return term_in(e, *s.args[0], m) || term_in(e, *s.args[1], m);
    case TermKind::Prod:
      if (e.kind != TermKind::Pair) return false;
      return term_in(*e.args[0], *s.args[0], m) && term_in(*e.args[1], *s.args[1], m);
    default: throw std::runtime_error("unsupported set term");
  }
}

bool doc_holds(const Formula& f, const DocModel& m) {
  switch (f.kind) {
    case FormulaKind::PropVar: {
      auto it = m.atoms.find(f.name);
      if (it == m.atoms.end()) throw std::runtime_error("countermodel omits " + f.name);
      return it->second;
    }
    case FormulaKind::False: return false;
    case FormulaKind::Not: return !doc_holds(*f.subs[0], m);
    case FormulaKind::And: return doc_holds(*f.subs[0], m) && doc_holds(*f.subs[1], m);
    case FormulaKind::Or: return doc_holds(*f.subs[0], m) || doc_holds(*f.subs[1], m);
    case FormulaKind::Implies: return !doc_holds(*f.subs[0], m) || doc_holds(*f.subs[1], m);
    case FormulaKind::Iff: return doc_holds(*f.subs[0], m) == doc_holds(*f.subs[1], m);
    case FormulaKind::In: return term_in(*f.terms[0], *f.terms[1], m);
    case FormulaKind::Subset:
      for (const auto& e : m.elements) {
        proofcheck::logic::Term t;
        t.kind = TermKind::Var;
        t.name = e;
        if (term_in(t, *f.terms[0], m) && !term_in(t, *f.terms[1], m)) return false;
      }
      return true;
    default: throw std::runtime_error("formula outside the propositional and set fragment");
  }
}

}  // namespace

bool document_countermodel_valid(const std::string& text, const Json& item, std::string* why) {
  try {
    const auto& cm = item.at("countermodel");
    if (cm.is_null()) throw std::runtime_error("no countermodel");
    DocModel m;
    if (cm.at("kind") == "propositional") {
      for (const auto& [k, v] : cm.at("assignment").items()) m.atoms[k] = v.get<bool>();
    } else {
      for (const auto& mem : cm.at("memberships")) {
        const std::string e = mem.at("element");
        if (e.find('(') != std::string::npos) continue;
        m.member[{e, mem.at("set").get<std::string>()}] = mem.at("member").get<bool>();
        m.elements.insert(e);
      }
      for (const auto& [k, v] : cm.at("propositions").items()) m.atoms[k] = v.get<bool>();
    }
    const auto doc = proofcheck::cnl::parse_document(text);
    const std::size_t at = item.at("sentence").get<std::size_t>();
    std::vector<const proofcheck::cnl::SentenceAST*> before;
    const proofcheck::cnl::SentenceAST* step = nullptr;
    for (const auto& s : doc.premises) before.push_back(&s);
    for (const auto& s : doc.proof) {
      if (s.index == at) step = &s;
      else if (s.index < at) before.push_back(&s);
    }
    if (!step || !step->formula) throw std::runtime_error("item does not point at a statement");
    for (const auto* s : before) {
      if (!s->formula) continue;
      if (!doc_holds(*s->formula, m))
        throw std::runtime_error("an earlier statement fails in the countermodel: " +
                                 proofcheck::logic::render(*s->formula));
    }
    if (doc_holds(*step->formula, m)) throw std::runtime_error("the refuted step holds in the countermodel");
    return true;
  } catch (const std::exception& e) {
    if (why) *why = e.what();
    return false;
  }
}

}  // namespace oracle
