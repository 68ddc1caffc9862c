#include <algorithm>
#include <numeric>

#include "encoding.hpp"

namespace proofcheck::prover {

using logic::FormulaKind;
using logic::FormulaPtr;
using logic::TermKind;
using logic::TermPtr;

std::string_view to_string(StepVerdict::Status status) {
  switch (status) {
    case StepVerdict::Status::Verified: return "verified";
    case StepVerdict::Status::Refuted: return "refuted";
    case StepVerdict::Status::Unknown: return "unknown";
  }
  return "?";
}

namespace detail {

bool is_set_term(const logic::Term& t) {
  switch (t.kind) {
    case TermKind::Var: return t.sort == logic::Sort::Set;
    case TermKind::Inter:
    case TermKind::Union:
    case TermKind::Prod: return true;
    default: return false;
  }
}

bool is_element_term(const logic::Term& t) {
  auto atomic = [](const logic::Term& s) {
    return (s.kind == TermKind::Var && s.sort != logic::Sort::Set) || s.kind == TermKind::IntConst;
  };
  if (t.kind == TermKind::Pair) return atomic(*t.args[0]) && atomic(*t.args[1]);
  return atomic(t);
}

namespace {

bool mentions_prod(const logic::Term& t) {
  if (t.kind == TermKind::Prod) return true;
  return std::any_of(t.args.begin(), t.args.end(), [](const TermPtr& a) { return mentions_prod(*a); });
}

[[noreturn]] void non_reducible(const logic::Formula& f) {
  throw ProverError(ProverError::Kind::NonReducible,
                    "'" + logic::render(f) + "' lies outside propositional logic and Boolean set theory");
}

}  // namespace

int Encoder::node(Node::Op op, int a, int b) {
  nodes_.push_back({op, a, b});
  return static_cast<int>(nodes_.size()) - 1;
}

int Encoder::atom(const std::string& key, const FormulaPtr& f, bool pure) {
  auto it = atom_index_.find(key);
  int index;
  if (it == atom_index_.end()) {
    index = static_cast<int>(atoms_.size());
    atoms_.push_back({key, f, pure});
    atom_index_.emplace(key, index);
  } else {
    index = it->second;
  }
  return node(Node::Atom, index);
}

void Encoder::note_element(const TermPtr& e) {
  const std::string key = logic::render(*e);
  if (element_seen_.emplace(key, true).second) elements_.push_back(e);
}

int Encoder::member(const TermPtr& e, const TermPtr& set) {
  switch (set->kind) {
    case TermKind::Var: {
      auto f = logic::make_in(e, set);
      if (!is_element_term(*e)) {
        if (!opaque_key_) non_reducible(*f);
        return atom(opaque_key_(*f), f, false);
      }
      note_element(e);
      if (e->kind == TermKind::Pair) {
        note_element(e->args[0]);
        note_element(e->args[1]);
      }
      return atom(logic::render(*f), f, true);
    }
    case TermKind::Inter: return node(Node::And, member(e, set->args[0]), member(e, set->args[1]));
    case TermKind::Union: return node(Node::Or, member(e, set->args[0]), member(e, set->args[1]));
    case TermKind::Prod:
      if (e->kind != TermKind::Pair) return node(Node::False);
      return node(Node::And, member(e->args[0], set->args[0]), member(e->args[1], set->args[1]));
    default: {
      auto f = logic::make_in(e, set);
      if (!opaque_key_) non_reducible(*f);
      return atom(opaque_key_(*f), f, false);
    }
  }
}

int Encoder::encode(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::PropVar: return atom(f->name, f, true);
    case FormulaKind::False: return node(Node::False);
    case FormulaKind::Not: return node(Node::Not, encode(f->subs[0]));
    case FormulaKind::And: return node(Node::And, encode(f->subs[0]), encode(f->subs[1]));
    case FormulaKind::Or: return node(Node::Or, encode(f->subs[0]), encode(f->subs[1]));
    case FormulaKind::Implies: return node(Node::Implies, encode(f->subs[0]), encode(f->subs[1]));
    case FormulaKind::Iff: return node(Node::Iff, encode(f->subs[0]), encode(f->subs[1]));
    case FormulaKind::In: return member(f->terms[0], f->terms[1]);
    default:
      if (!opaque_key_) non_reducible(*f);
      return atom(opaque_key_(*f), f, false);
  }
}

void Encoder::premise(const FormulaPtr& f) {
  for (const auto& c : logic::conjuncts(f)) {
    const bool set_eq = c->kind == FormulaKind::Eq && (is_set_term(*c->terms[0]) || is_set_term(*c->terms[1]));
    if (c->kind == FormulaKind::Subset || set_eq) {
      universal_.push_back(c);
      continue;
    }
    premises_.push_back(encode(c));
  }
}

void Encoder::claim(const FormulaPtr& f) { claim_ = encode(f); }

void Encoder::finish() {
  if (finished_) return;
  finished_ = true;
  if (universal_.empty()) return;
  bool products = false;
  for (const auto& u : universal_) products = products || mentions_prod(*u->terms[0]) || mentions_prod(*u->terms[1]);
  if (products) {
    std::vector<TermPtr> singles;
    for (const auto& e : elements_)
      if (e->kind != TermKind::Pair) singles.push_back(e);
    for (const auto& a : singles)
      for (const auto& b : singles) note_element(logic::make_binary(TermKind::Pair, a, b));
  }
  const std::vector<TermPtr> universe = elements_;
  for (const auto& e : universe) {
    for (const auto& u : universal_) {
      const int l = member(e, u->terms[0]);
      const int r = member(e, u->terms[1]);
      premises_.push_back(node(u->kind == FormulaKind::Subset ? Node::Implies : Node::Iff, l, r));
    }
  }
}

bool Encoder::has_impure() const {
  return std::any_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return !a.pure; });
}

bool Encoder::eval(int n, const std::vector<bool>& v) const {
  const Node& x = nodes_[static_cast<std::size_t>(n)];
  switch (x.op) {
    case Node::Atom: return v[static_cast<std::size_t>(x.a)];
    case Node::False: return false;
    case Node::True: return true;
    case Node::Not: return !eval(x.a, v);
    case Node::And: return eval(x.a, v) && eval(x.b, v);
    case Node::Or: return eval(x.a, v) || eval(x.b, v);
    case Node::Implies: return !eval(x.a, v) || eval(x.b, v);
    case Node::Iff: return eval(x.a, v) == eval(x.b, v);
  }
  return false;
}

Encoder::Result Encoder::decide() const {
  const std::size_t n = atoms_.size();
  if (n > kMaxAtoms)
    throw ProverError(ProverError::Kind::TooManyAtoms,
                      "the step involves " + std::to_string(n) + " atomic statements (at most " +
                          std::to_string(kMaxAtoms) + " are supported)");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms_[a].key < atoms_[b].key; });

  std::vector<bool> values(n);
  const unsigned long long total = 1ull << n;
  for (unsigned long long mask = 0; mask < total; ++mask) {
    // The first atom in sorted order is the most significant bit, so masks
    // are visited in lexicographic order with false < true.
    for (std::size_t i = 0; i < n; ++i) values[order[i]] = ((mask >> (n - 1 - i)) & 1ull) != 0;
    bool premises_hold = true;
    for (int p : premises_) {
      if (!eval(p, values)) {
        premises_hold = false;
        break;
      }
    }
    if (!premises_hold) continue;
    if (claim_ < 0 || !eval(claim_, values)) return {false, values};
  }
  return {true, {}};
}

Countermodel Encoder::countermodel(const std::vector<bool>& values) const {
  std::vector<std::size_t> order(atoms_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms_[a].key < atoms_[b].key; });

  Countermodel cm;
  const bool sets = std::any_of(atoms_.begin(), atoms_.end(),
                                [](const Atom& a) { return a.formula->kind == FormulaKind::In && a.pure; });
  cm.kind = sets ? Countermodel::Kind::SetScenario : Countermodel::Kind::Propositional;
  std::vector<std::string> distinct;
  for (std::size_t i : order) {
    const Atom& a = atoms_[i];
    if (!sets) {
      cm.assignment.emplace_back(a.key, values[i]);
    } else if (a.formula->kind == FormulaKind::In && a.pure) {
      const std::string element = logic::render(*a.formula->terms[0]);
      cm.memberships.push_back({element, a.formula->terms[1]->name, values[i]});
      if (std::find(distinct.begin(), distinct.end(), element) == distinct.end()) distinct.push_back(element);
    } else {
      cm.propositions.emplace_back(a.key, values[i]);
    }
  }
  std::sort(distinct.begin(), distinct.end());
  if (distinct.size() > 1) cm.distinct = std::move(distinct);
  return cm;
}

}  // namespace detail

namespace {

bool purely_propositional(const logic::Formula& f) {
  switch (f.kind) {
    case FormulaKind::PropVar:
    case FormulaKind::False: return true;
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return std::all_of(f.subs.begin(), f.subs.end(), [](const FormulaPtr& s) { return purely_propositional(*s); });
    default: return false;
  }
}

StepVerdict run(detail::Encoder& enc, std::vector<std::string> trace) {
  enc.finish();
  auto result = enc.decide();
  StepVerdict v;
  v.trace = std::move(trace);
  if (result.entailed) {
    v.status = StepVerdict::Status::Verified;
  } else {
    v.status = StepVerdict::Status::Refuted;
    v.countermodel = enc.countermodel(result.falsifying);
  }
  return v;
}

}  // namespace

StepVerdict entails_prop(const std::vector<FormulaPtr>& premises, const FormulaPtr& claim) {
  for (const auto& p : premises)
    if (!purely_propositional(*p))
      throw ProverError(ProverError::Kind::NonReducible, "'" + logic::render(*p) + "' is not purely propositional");
  if (!purely_propositional(*claim))
    throw ProverError(ProverError::Kind::NonReducible, "'" + logic::render(*claim) + "' is not purely propositional");
  detail::Encoder enc;
  for (const auto& p : premises) enc.premise(p);
  enc.claim(claim);
  return run(enc, {"truth-table"});
}

StepVerdict entails_set(const std::vector<FormulaPtr>& premises, const FormulaPtr& claim) {
  if (claim->kind == FormulaKind::Subset)
    throw ProverError(ProverError::Kind::NonReducible,
                      "inclusions are proved with an arbitrary element, not in a single step");
  detail::Encoder enc;
  for (const auto& p : premises) enc.premise(p);
  enc.claim(claim);
  bool sets = !purely_propositional(*claim);
  for (const auto& p : premises) sets = sets || !purely_propositional(*p);
  if (!sets) return run(enc, {"truth-table"});
  return run(enc, {"membership-reduction", "truth-table"});
}

bool in_decidable_fragment(const logic::Formula& f, bool as_premise) {
  if (!as_premise && f.kind == FormulaKind::Subset) return false;
  try {
    detail::Encoder enc;
    auto ptr = std::make_shared<logic::Formula>(f);
    if (as_premise)
      enc.premise(ptr);
    else
      enc.claim(ptr);
    return true;
  } catch (const ProverError&) {
    return false;
  }
}

}  // namespace proofcheck::prover
