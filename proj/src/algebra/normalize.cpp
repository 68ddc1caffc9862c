#include "proofcheck/algebra.hpp"

namespace proofcheck::algebra {

using logic::TermKind;

Polynomial normalize(const logic::Term& t, unsigned bound) {
  switch (t.kind) {
    case TermKind::IntConst: return Polynomial::constant(t.value);
    case TermKind::Var: return Polynomial::variable(t.name);
    case TermKind::Neg: return -normalize(*t.args[0], bound);
    case TermKind::Add: return normalize(*t.args[0], bound) + normalize(*t.args[1], bound);
    case TermKind::Sub: return normalize(*t.args[0], bound) - normalize(*t.args[1], bound);
    case TermKind::Mul: return normalize(*t.args[0], bound) * normalize(*t.args[1], bound);
    case TermKind::Pow: {
      const logic::Term& e = *t.args[1];
      if (e.kind != TermKind::IntConst || e.value < 0)
        throw AlgebraError(AlgebraError::Kind::NotIntegerTerm, "exponent is not a non-negative constant");
      if (e.value > bound)
        throw AlgebraError(AlgebraError::Kind::ExponentTooLarge,
                           "exponent " + e.value.get_str() + " exceeds the bound " + std::to_string(bound));
      return normalize(*t.args[0], bound).pow(static_cast<unsigned>(e.value.get_ui()));
    }
    default:
      throw AlgebraError(AlgebraError::Kind::NotIntegerTerm, "'" + logic::render(t) + "' is not an integer term");
  }
}

std::vector<Substitution> orient(const std::vector<logic::FormulaPtr>& equalities) {
  std::vector<Substitution> out;
  for (const auto& eq : equalities) {
    if (eq->kind != logic::FormulaKind::Eq || eq->terms[0]->kind != TermKind::Var)
      throw AlgebraError(AlgebraError::Kind::NotOriented,
                         "'" + logic::render(*eq) + "' is not of the form variable = term");
    const std::string& var = eq->terms[0]->name;
    bool seen = false;
    for (const auto& s : out) seen = seen || s.var == var;
    if (!seen) out.push_back({var, normalize(eq->terms[1])});
  }
  return out;
}

Polynomial apply(const Polynomial& p, const std::vector<Substitution>& subs) {
  Polynomial cur = p;
  for (std::size_t round = 0; round <= subs.size() + 1; ++round) {
    Polynomial next = cur;
    for (const auto& s : subs) next = next.substitute(s.var, s.value);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  throw AlgebraError(AlgebraError::Kind::SubstitutionCycle, "the equations do not define an acyclic substitution");
}

bool equal_under(const std::vector<logic::FormulaPtr>& equalities, const logic::TermPtr& lhs,
                 const logic::TermPtr& rhs) {
  const auto subs = orient(equalities);
  return algebra::apply(normalize(lhs), subs) == algebra::apply(normalize(rhs), subs);
}

std::optional<Polynomial> divisibility_certificate(const BigInt& d, const logic::TermPtr& term,
                                                   const std::vector<logic::FormulaPtr>& equalities) {
  if (d < 1) return std::nullopt;
  return algebra::apply(normalize(term), orient(equalities)).divide_exact(d);
}

}  // namespace proofcheck::algebra
