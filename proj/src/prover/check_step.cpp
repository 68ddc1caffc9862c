#include <algorithm>
#include <set>

#include "encoding.hpp"
#include "number_theory.hpp"

namespace proofcheck::prover {

using algebra::Polynomial;
using logic::FormulaKind;
using logic::FormulaPtr;
using logic::TermKind;
using Status = StepVerdict::Status;

namespace {

std::vector<FormulaPtr> fact_conjuncts(const KnowledgeBase& kb) {
  std::vector<FormulaPtr> out;
  for (const auto& f : kb.facts)
    for (const auto& c : logic::conjuncts(f.formula())) out.push_back(c);
  return out;
}

bool integer_eq(const logic::Formula& f) {
  return f.kind == FormulaKind::Eq && f.terms[0]->sort != logic::Sort::Set && f.terms[1]->sort != logic::Sort::Set &&
         !detail::is_set_term(*f.terms[0]) && !detail::is_set_term(*f.terms[1]);
}

StepVerdict verified(std::vector<std::string> trace) {
  StepVerdict v;
  v.status = Status::Verified;
  v.trace = std::move(trace);
  return v;
}

StepVerdict unknown(std::vector<std::string> trace = {}) {
  StepVerdict v;
  v.trace = std::move(trace);
  return v;
}

// Sign-normalized polynomial so that p = 0 and -p = 0 share a key.
Polynomial oriented(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.terms().rbegin()->second < 0 ? -p : p;
}

class Checker {
 public:
  Checker(const KnowledgeBase& kb, unsigned depth) : kb_(kb), depth_(depth), subs_(kb.substitutions()) {}

  StepVerdict check(const FormulaPtr& f) {
    try {
      return dispatch(f);
    } catch (const algebra::AlgebraError& e) {
      if (e.kind() == algebra::AlgebraError::Kind::ExponentTooLarge) return unknown({"exponent-too-large"});
      return unknown();
    }
  }

 private:
  StepVerdict dispatch(const FormulaPtr& f) {
    if (f->kind == FormulaKind::Exists) return exists(f);
    if (f->kind == FormulaKind::False) return contradiction();
    if (integer_eq(*f)) return equation(*f);
    if (detail::as_literal(*f, {})) return literal(*f);
    if (in_decidable_fragment(*f, false)) return decidable(f);
    if (f->kind == FormulaKind::And) {
      std::vector<std::string> trace;
      for (const auto& c : logic::conjuncts(f)) {
        auto v = dispatch(c);
        if (!v.verified()) {
          if (v.refuted()) return v;
          auto fallback = abstraction(f);
          return fallback.verified() ? fallback : v;
        }
        trace.insert(trace.end(), v.trace.begin(), v.trace.end());
      }
      return verified(std::move(trace));
    }
    return abstraction(f);
  }

  StepVerdict equation(const logic::Formula& f) {
    const Polynomial l = algebra::normalize(f.terms[0]);
    const Polynomial r = algebra::normalize(f.terms[1]);
    if (l == r) return verified({"normal-form"});
    const Polynomial diff = algebra::apply(l - r, subs_);
    if (diff.is_zero()) return verified({"substitution", "normal-form"});
    for (const auto& c : fact_conjuncts(kb_)) {
      if (!integer_eq(*c)) continue;
      Polynomial d;
      try {
        d = algebra::apply(algebra::normalize(c->terms[0]) - algebra::normalize(c->terms[1]), subs_);
      } catch (const algebra::AlgebraError&) {
        continue;
      }
      if (d.is_zero()) continue;
      // diff = q * d for a constant q
      const auto& [m, k] = *d.terms().begin();
      const logic::BigInt dk = diff.coefficient(m);
      if (dk == 0 || !mpz_divisible_p(dk.get_mpz_t(), k.get_mpz_t())) continue;
      if (d.scaled(dk / k) == diff) return verified({"equation-multiple"});
    }
    return unknown();
  }

  StepVerdict literal(const logic::Formula& f) {
    bool depth_hit = false;
    // Longest prefix first; shorter prefixes keep the search monotone when a
    // later substitution destroys a factorization.
    for (std::size_t len = subs_.size() + 1; len-- > 0;) {
      std::vector<algebra::Substitution> prefix(subs_.begin(), subs_.begin() + static_cast<long>(len));
      auto goal = detail::as_literal(f, prefix);
      detail::NumberTheory nt(kb_, prefix);
      if (auto trace = nt.prove(*goal, depth_)) {
        if (len > 0) trace->insert(trace->begin(), "substitution");
        return verified(std::move(*trace));
      }
      depth_hit = depth_hit || nt.depth_exceeded();
    }
    auto fallback = abstraction(std::make_shared<logic::Formula>(f));
    if (fallback.verified()) return fallback;
    return unknown(depth_hit ? std::vector<std::string>{"depth-exceeded"} : std::vector<std::string>{});
  }

  StepVerdict exists(const FormulaPtr& f) {
    for (const auto& c : fact_conjuncts(kb_))
      if (c->kind == FormulaKind::Exists && alpha_equal(*c, *f)) return verified({"kb-fact"});
    const auto& body = f->subs[0];
    if (body->kind != FormulaKind::Eq || !integer_eq(*body)) return abstraction(f);
    const std::string& k = f->name;
    const Polynomial p = algebra::apply(algebra::normalize(body->terms[0]) - algebra::normalize(body->terms[1]), subs_);
    const algebra::Monomial linear{{k, 1}};
    const logic::BigInt c = p.coefficient(linear);
    const Polynomial rest = p - Polynomial::variable(k).scaled(c);
    if (c == 0 || rest.variables().count(k)) return unknown();
    // ∃k. c·k + rest = 0  iff  |c| divides rest
    detail::Literal goal;
    goal.d = abs(c);
    goal.p = rest;
    goal.surface_parity = goal.d == 2;
    if (goal.d == 1) return verified({"exists-from-divisibility"});
    for (std::size_t len = subs_.size() + 1; len-- > 0;) {
      std::vector<algebra::Substitution> prefix(subs_.begin(), subs_.begin() + static_cast<long>(len));
      detail::Literal g = goal;
      g.p = algebra::apply(algebra::normalize(body->terms[0]) - algebra::normalize(body->terms[1]), prefix) -
            Polynomial::variable(k).scaled(c);
      if (g.p.variables().count(k)) continue;
      detail::NumberTheory nt(kb_, prefix);
      if (auto trace = nt.prove(g, depth_)) {
        trace->insert(trace->begin(), "exists-from-divisibility");
        return verified(std::move(*trace));
      }
    }
    return unknown();
  }

  static bool alpha_equal(const logic::Formula& a, const logic::Formula& b) {
    if (a.kind != FormulaKind::Exists || b.kind != FormulaKind::Exists) return logic::same(a, b);
    if (a.name == b.name) return logic::same(*a.subs[0], *b.subs[0]);
    auto renamed = logic::substitute(b.subs[0], {{b.name, logic::make_var(a.name)}});
    return logic::same(*a.subs[0], *renamed);
  }

  StepVerdict contradiction() {
    detail::NumberTheory nt(kb_, subs_);
    if (auto trace = nt.contradiction(depth_)) return verified(std::move(*trace));
    std::vector<FormulaPtr> pure;
    for (const auto& c : fact_conjuncts(kb_))
      if (in_decidable_fragment(*c, true)) pure.push_back(c);
    try {
      auto v = entails_set(pure, logic::make_false());
      if (v.verified()) return verified({"contradiction", "truth-table"});
    } catch (const ProverError&) {
    }
    auto fallback = abstraction(logic::make_false());
    if (fallback.verified()) return fallback;
    return unknown(nt.depth_exceeded() ? std::vector<std::string>{"depth-exceeded"} : std::vector<std::string>{});
  }

  StepVerdict decidable(const FormulaPtr& f) {
    std::vector<FormulaPtr> pure;
    std::vector<FormulaPtr> impure;
    for (const auto& c : fact_conjuncts(kb_)) (in_decidable_fragment(*c, true) ? pure : impure).push_back(c);

    StepVerdict v;
    bool filtered = false;
    try {
      v = entails_set(pure, f);
    } catch (const ProverError& e) {
      if (e.kind() != ProverError::Kind::TooManyAtoms) return abstraction(f);
      pure = connected(pure, f);
      filtered = true;
      try {
        v = entails_set(pure, f);
      } catch (const ProverError&) {
        return unknown({"too-many-atoms"});
      }
    }
    if (v.verified()) return v;
    std::set<std::string> vars = logic::free_variables(*f);
    for (const auto& p : pure)
      for (const auto& name : logic::free_variables(*p)) vars.insert(name);
    bool shared = filtered;
    for (const auto& c : impure)
      for (const auto& name : logic::free_variables(*c)) shared = shared || vars.count(name) > 0;
    if (!shared) return v;
    auto fallback = abstraction(f);
    return fallback.verified() ? fallback : unknown();
  }

  // Facts linked to the claim through shared variables.
  static std::vector<FormulaPtr> connected(const std::vector<FormulaPtr>& facts, const FormulaPtr& claim) {
    std::set<std::string> vars = logic::free_variables(*claim);
    std::vector<bool> taken(facts.size(), false);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < facts.size(); ++i) {
        if (taken[i]) continue;
        const auto fv = logic::free_variables(*facts[i]);
        if (std::none_of(fv.begin(), fv.end(), [&](const std::string& n) { return vars.count(n) > 0; })) continue;
        taken[i] = true;
        grew = true;
        vars.insert(fv.begin(), fv.end());
      }
    }
    std::vector<FormulaPtr> out;
    for (std::size_t i = 0; i < facts.size(); ++i)
      if (taken[i]) out.push_back(facts[i]);
    return out;
  }

  std::string opaque_key(const logic::Formula& f) const {
    try {
      if (auto lit = detail::as_literal(f, subs_)) {
        std::string head = lit->dvar.empty() ? lit->d.get_str() : lit->dvar;
        return "[" + head + " | " + lit->p.to_string() + "]";
      }
      if (integer_eq(f)) {
        auto d = algebra::apply(algebra::normalize(f.terms[0]) - algebra::normalize(f.terms[1]), subs_);
        return "[0 = " + oriented(d).to_string() + "]";
      }
    } catch (const algebra::AlgebraError&) {
    }
    return "[" + logic::render(f) + "]";
  }

  // Sound-only fallback: number-theoretic atoms become opaque propositions.
  StepVerdict abstraction(const FormulaPtr& f) {
    auto key = [this](const logic::Formula& g) { return opaque_key(g); };
    const auto facts = connected(fact_conjuncts(kb_), f);
    detail::Encoder enc(key);
    for (const auto& p : facts) enc.premise(parity_normal(p));

    // Literals of the claim that the number-theory rules settle become facts.
    std::vector<FormulaPtr> claim_atoms;
    collect_atoms(f, claim_atoms);
    detail::NumberTheory nt(kb_, subs_);
    for (const auto& a : claim_atoms) {
      try {
        auto lit = detail::as_literal(*a, subs_);
        if (lit) {
          if (nt.prove(*lit, depth_)) {
            enc.premise(parity_normal(a));
          } else {
            detail::Literal opposite = *lit;
            opposite.divides = !lit->divides;
            if (nt.prove(opposite, depth_)) enc.premise(parity_normal(logic::make_not(a)));
          }
        } else if (integer_eq(*a) && equation(*a).verified()) {
          enc.premise(a);
        }
      } catch (const algebra::AlgebraError&) {
      }
    }
    enc.claim(parity_normal(f));
    enc.finish();
    try {
      if (enc.decide().entailed) return verified({"abstraction", "truth-table"});
    } catch (const ProverError&) {
      return unknown({"too-many-atoms"});
    }
    return unknown();
  }

  static void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (logic::is_connective(f->kind)) {
      for (const auto& s : f->subs) collect_atoms(s, out);
      return;
    }
    out.push_back(f);
  }

  // odd(t) and even(t) share one opaque atom, so odd(t) is encoded as ¬even(t)
  static FormulaPtr parity_normal(const FormulaPtr& f) {
    if (f->kind == FormulaKind::Odd) return logic::make_not(logic::make_even(f->terms[0]));
    if (!logic::is_connective(f->kind)) return f;
    auto out = std::make_shared<logic::Formula>(*f);
    for (auto& s : out->subs) s = parity_normal(s);
    return out;
  }

  const KnowledgeBase& kb_;
  unsigned depth_;
  std::vector<algebra::Substitution> subs_;
};

}  // namespace

std::vector<FormulaPtr> KnowledgeBase::equalities() const {
  std::vector<FormulaPtr> out;
  for (const auto& f : facts)
    for (const auto& c : logic::conjuncts(f.formula()))
      if (integer_eq(*c) && c->terms[0]->kind == TermKind::Var) out.push_back(c);
  return out;
}

std::vector<algebra::Substitution> KnowledgeBase::substitutions() const {
  std::vector<algebra::Substitution> out;
  auto depends = [&](const std::string& from, const std::string& target) {
    // does `from` (transitively through out) mention `target`?
    std::vector<std::string> stack{from};
    std::set<std::string> seen;
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      if (!seen.insert(v).second) continue;
      for (const auto& s : out)
        if (s.var == v)
          for (const auto& w : s.value.variables()) stack.push_back(w);
    }
    return false;
  };
  for (const auto& eq : equalities()) {
    const std::string& var = eq->terms[0]->name;
    if (std::any_of(out.begin(), out.end(), [&](const algebra::Substitution& s) { return s.var == var; })) continue;
    Polynomial value;
    try {
      value = algebra::normalize(eq->terms[1]);
    } catch (const algebra::AlgebraError&) {
      continue;
    }
    bool cyclic = false;
    for (const auto& w : value.variables()) cyclic = cyclic || depends(w, var);
    if (!cyclic) out.push_back({var, value});
  }
  return out;
}

KnowledgeBase KnowledgeBase::with(logic::TypedFormula fact) const {
  KnowledgeBase next = *this;
  next.facts.push_back(std::move(fact));
  return next;
}

bool KnowledgeBase::contains(const logic::Formula& f) const {
  return std::any_of(facts.begin(), facts.end(), [&](const logic::TypedFormula& t) { return logic::same(*t, f); });
}

StepVerdict check_step(const logic::TypedFormula& claim, const KnowledgeBase& kb, unsigned depth) {
  Checker checker(kb, depth);
  return checker.check(claim.formula());
}

}  // namespace proofcheck::prover
