#include "number_theory.hpp"

#include <algorithm>

namespace proofcheck::prover::detail {

using algebra::Polynomial;
using logic::BigInt;
using logic::FormulaKind;

std::optional<Literal> as_literal(const logic::Formula& f, const std::vector<algebra::Substitution>& subs) {
  if (f.kind == FormulaKind::Not) {
    auto inner = as_literal(*f.subs[0], subs);
    if (!inner) return std::nullopt;
    inner->divides = !inner->divides;
    inner->surface_negated = !inner->surface_negated;
    return inner;
  }
  Literal lit;
  switch (f.kind) {
    case FormulaKind::Even:
    case FormulaKind::Odd:
      lit.divides = f.kind == FormulaKind::Even;
      lit.surface_parity = true;
      lit.p = algebra::apply(algebra::normalize(f.terms[0]), subs);
      return lit;
    case FormulaKind::Divides: {
      const logic::Term& d = *f.terms[0];
      if (d.kind == logic::TermKind::IntConst) {
        if (d.value == 0) return std::nullopt;
        lit.d = abs(d.value);
      } else if (d.kind == logic::TermKind::Var) {
        lit.dvar = d.name;
      } else {
        return std::nullopt;
      }
      lit.p = algebra::apply(algebra::normalize(f.terms[1]), subs);
      return lit;
    }
    default: return std::nullopt;
  }
}

NumberTheory::NumberTheory(const KnowledgeBase& kb, std::vector<algebra::Substitution> subs) : subs_(std::move(subs)) {
  for (const auto& [name, sort] : kb.ctx.entries()) taken_.push_back(name);
  for (const auto& fact : kb.facts) {
    for (const auto& c : logic::conjuncts(fact.formula())) {
      try {
        if (auto lit = as_literal(*c, subs_)) {
          facts_.push_back(*lit);
        } else if (c->kind == FormulaKind::Eq && c->terms[0]->sort != logic::Sort::Set &&
                   c->terms[1]->sort != logic::Sort::Set) {
          equations_.emplace_back(algebra::apply(algebra::normalize(c->terms[0]), subs_),
                                  algebra::apply(algebra::normalize(c->terms[1]), subs_));
        }
      } catch (const algebra::AlgebraError&) {
        // facts outside the polynomial fragment are simply not used
      }
    }
  }
}

namespace {

bool same_divisor(const Literal& a, const Literal& b) { return a.dvar == b.dvar && (!a.dvar.empty() || a.d == b.d); }

bool divisible(const BigInt& a, const BigInt& d) { return d != 0 && mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()); }

// Exact division by the monic linear factor (v - root).
std::optional<Polynomial> divide_linear(const Polynomial& p, const std::string& v, const BigInt& root) {
  const unsigned n = p.degree_in(v);
  if (n == 0) return std::nullopt;
  std::vector<Polynomial> c(n + 1);
  for (const auto& [m, k] : p.terms()) {
    algebra::Monomial rest = m;
    unsigned e = 0;
    if (auto it = rest.find(v); it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    Polynomial term = Polynomial::constant(k);
    for (const auto& [name, pow] : rest) term = term * Polynomial::variable(name).pow(pow);
    c[e] = c[e] + term;
  }
  std::vector<Polynomial> b(n);
  b[n - 1] = c[n];
  for (unsigned i = n - 1; i >= 1; --i) b[i - 1] = c[i] + b[i].scaled(root);
  if (!(c[0] + b[0].scaled(root)).is_zero()) return std::nullopt;
  Polynomial q;
  for (unsigned i = 0; i < n; ++i) q = q + b[i] * Polynomial::variable(v).pow(i);
  return q;
}

}  // namespace

std::optional<BigInt> consecutive_product_content(const Polynomial& p) {
  if (p.is_zero()) return std::nullopt;
  static constexpr int kShifts[] = {0, -1, 1, -2, 2, -3};
  for (const auto& v : p.variables()) {
    for (int a : kShifts) {
      auto q = divide_linear(p, v, BigInt(-a));
      if (!q) continue;
      auto r = divide_linear(*q, v, BigInt(-a - 1));
      if (!r || r->is_zero()) continue;
      return r->content();
    }
  }
  return std::nullopt;
}

std::optional<std::string> NumberTheory::direct(const Literal& goal) const {
  for (const auto& f : facts_) {
    if (f.divides != goal.divides || !(f.p == goal.p)) continue;
    bool ok = same_divisor(f, goal);
    if (!ok && f.dvar.empty() && goal.dvar.empty())
      ok = goal.divides ? divisible(f.d, goal.d) : divisible(goal.d, f.d);
    if (ok) return f.surface_negated && f.surface_parity ? "even-odd-totality" : "kb-fact";
  }
  const bool parity = goal.surface_parity || (goal.dvar.empty() && goal.d == 2);
  if (goal.divides) {
    if (!goal.dvar.empty()) {
      if (goal.p.is_zero()) return "divides-by-coefficients";
      bool factor = true;
      for (const auto& [m, k] : goal.p.terms()) factor = factor && m.count(goal.dvar) > 0;
      if (factor) return "divides-by-factor";
      return std::nullopt;
    }
    if (goal.p.divide_exact(goal.d)) return parity ? "even-from-2q" : "divides-by-coefficients";
    if (auto c = consecutive_product_content(goal.p); c && divisible(2 * *c, goal.d)) return "parity-product";
    return std::nullopt;
  }
  if (!goal.dvar.empty() || goal.d < 2) return std::nullopt;
  const BigInt c0 = goal.p.constant_term();
  if (!divisible(c0, goal.d) && (goal.p - Polynomial::constant(c0)).divide_exact(goal.d))
    return parity ? "odd-from-2q+1" : "non-divisibility-by-remainder";
  return std::nullopt;
}

std::string NumberTheory::fresh(const std::string& base, const Polynomial& p) const {
  const auto vars = p.variables();
  std::string name = base;
  auto used = [&](const std::string& n) {
    return vars.count(n) || std::find(taken_.begin(), taken_.end(), n) != taken_.end();
  };
  do name += "'";
  while (used(name));
  return name;
}

std::optional<std::vector<std::string>> NumberTheory::search(const Literal& goal, unsigned depth) {
  if (auto rule = direct(goal)) return std::vector<std::string>{*rule};

  const auto vars = goal.p.variables();
  bool candidates = false;
  for (const auto& f : facts_) {
    if (!f.dvar.empty() || f.p.terms().size() != 1) continue;
    const auto& [m, k] = *f.p.terms().begin();
    if (k != 1 || m.size() != 1 || m.begin()->second != 1) continue;
    const std::string& v = m.begin()->first;
    if (!vars.count(v)) continue;
    if (!f.divides && f.d != 2) continue;
    candidates = true;
    if (depth == 0) continue;
    const std::string w = fresh(v, goal.p);
    const Polynomial pw = Polynomial::variable(w);
    const Polynomial value = f.divides ? pw.scaled(f.d) : pw.scaled(2) + Polynomial::constant(1);
    Literal next = goal;
    next.p = goal.p.substitute(v, value);
    taken_.push_back(w);
    auto r = search(next, depth - 1);
    taken_.pop_back();
    if (r) {
      r->insert(r->begin(), "parity-of-variable");
      return r;
    }
  }
  for (const auto& [l, r] : equations_) {
    if (l == r) continue;
    const Polynomial* other = nullptr;
    if (l == goal.p) other = &r;
    if (r == goal.p) other = &l;
    if (!other) continue;
    candidates = true;
    if (depth == 0) continue;
    Literal next = goal;
    next.p = *other;
    if (auto t = search(next, depth - 1)) {
      t->insert(t->begin(), "equation-transfer");
      return t;
    }
  }
  if (depth == 0 && candidates) depth_exceeded_ = true;
  return std::nullopt;
}

std::optional<std::vector<std::string>> NumberTheory::prove(const Literal& goal, unsigned depth) {
  auto r = search(goal, depth);
  if (r && goal.surface_negated && goal.surface_parity) r->insert(r->begin(), "even-odd-exclusion");
  return r;
}

std::optional<std::vector<std::string>> NumberTheory::contradiction(unsigned depth) {
  const std::vector<Literal> facts = facts_;
  for (const auto& f : facts) {
    Literal opposite = f;
    opposite.divides = !f.divides;
    opposite.surface_negated = false;
    if (auto r = search(opposite, depth)) {
      r->insert(r->begin(), "contradiction");
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace proofcheck::prover::detail
