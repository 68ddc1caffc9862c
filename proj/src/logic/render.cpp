#include "proofcheck/logic.hpp"

namespace proofcheck::logic {
namespace {

// Binding strength, loosest first. Must mirror the CNL formula parser.
int term_precedence(const Term& t) {
  switch (t.kind) {
    case TermKind::Union: return 1;
    case TermKind::Inter: return 2;
    case TermKind::Prod: return 3;
    case TermKind::Add:
    case TermKind::Sub: return 4;
    case TermKind::Mul: return 5;
    case TermKind::Neg: return 6;
    case TermKind::Pow: return 7;
    case TermKind::IntConst: return t.value < 0 ? 6 : 8;
    default: return 8;
  }
}

bool negative_like(const Term& t) {
  return t.kind == TermKind::Neg || (t.kind == TermKind::IntConst && t.value < 0);
}

std::string render_term(const Term& t);

std::string wrap(const Term& child, bool parens) {
  auto s = render_term(child);
  return parens ? "(" + s + ")" : s;
}

std::string binary(const Term& t, std::string_view op) {
  const int prec = term_precedence(t);
  const Term& lhs = *t.args[0];
  const Term& rhs = *t.args[1];
  // Left-associative: equal precedence on the right needs parentheses.
  bool lp = term_precedence(lhs) < prec;
  bool rp = term_precedence(rhs) <= prec || negative_like(rhs);
  return wrap(lhs, lp) + std::string(op) + wrap(rhs, rp);
}

bool juxtaposable(const Term& rhs, bool rhs_parenthesized) {
  if (rhs_parenthesized) return true;
  if (rhs.kind == TermKind::Var) return rhs.name != "v";
  if (rhs.kind == TermKind::Pow && rhs.args[0]->kind == TermKind::Var) return rhs.args[0]->name != "v";
  return false;
}

std::string render_term(const Term& t) {
  switch (t.kind) {
    case TermKind::IntConst: return t.value.get_str();
    case TermKind::Var: return t.name;
    case TermKind::Meta: return "?" + t.name;
    case TermKind::Neg: {
      const Term& arg = *t.args[0];
      return "-" + wrap(arg, term_precedence(arg) < 7 || negative_like(arg));
    }
    case TermKind::Add: return binary(t, "+");
    case TermKind::Sub: return binary(t, "-");
    case TermKind::Mul: {
      const Term& lhs = *t.args[0];
      const Term& rhs = *t.args[1];
      bool lp = term_precedence(lhs) < 5;
      bool rp = term_precedence(rhs) <= 5 || negative_like(rhs);
      if (lhs.kind == TermKind::IntConst && lhs.value >= 0 && juxtaposable(rhs, rp))
        return render_term(lhs) + wrap(rhs, rp);
      return wrap(lhs, lp) + "*" + wrap(rhs, rp);
    }
    case TermKind::Pow: {
      const Term& base = *t.args[0];
      return wrap(base, term_precedence(base) < 8) + "^" + render_term(*t.args[1]);
    }
    case TermKind::Pair: return "(" + render_term(*t.args[0]) + "," + render_term(*t.args[1]) + ")";
    case TermKind::Inter: return binary(t, " ∩ ");
    case TermKind::Union: return binary(t, " ∪ ");
    case TermKind::Prod: return binary(t, " × ");
  }
  return "?";
}

int formula_precedence(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    case FormulaKind::Exists: return 0;
    default: return 6;
  }
}

bool infix_relation(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::In:
    case FormulaKind::Subset:
    case FormulaKind::Divides:
    case FormulaKind::TermStatement:
      return true;
    default:
      return false;
  }
}

std::string render_formula(const Formula& f);

std::string fwrap(const Formula& child, bool parens) {
  auto s = render_formula(child);
  return parens ? "(" + s + ")" : s;
}

std::string render_formula(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::PropVar: return f.name;
    case FormulaKind::Meta: return "?" + f.name;
    case FormulaKind::False: return "⊥";
    case FormulaKind::Not: {
      const Formula& sub = *f.subs[0];
      return "¬" + fwrap(sub, formula_precedence(sub) < 5 || infix_relation(sub));
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const int prec = formula_precedence(f);
      const char* op = f.kind == FormulaKind::And ? " ∧ " : " ∨ ";
      return fwrap(*f.subs[0], formula_precedence(*f.subs[0]) < prec) + op +
             fwrap(*f.subs[1], formula_precedence(*f.subs[1]) <= prec);
    }
    case FormulaKind::Implies:
      return fwrap(*f.subs[0], formula_precedence(*f.subs[0]) <= 2) + " → " +
             fwrap(*f.subs[1], formula_precedence(*f.subs[1]) < 2);
    case FormulaKind::Iff:
      return fwrap(*f.subs[0], formula_precedence(*f.subs[0]) <= 1) + " ↔ " +
             fwrap(*f.subs[1], formula_precedence(*f.subs[1]) <= 1);
    case FormulaKind::Eq: return render_term(*f.terms[0]) + " = " + render_term(*f.terms[1]);
    case FormulaKind::In: return render_term(*f.terms[0]) + " ∈ " + render_term(*f.terms[1]);
    case FormulaKind::Subset: return render_term(*f.terms[0]) + " ⊂ " + render_term(*f.terms[1]);
    case FormulaKind::Even: return "even(" + render_term(*f.terms[0]) + ")";
    case FormulaKind::Odd: return "odd(" + render_term(*f.terms[0]) + ")";
    case FormulaKind::Divides: {
      const Term& d = *f.terms[0];
      bool dp = d.kind != TermKind::IntConst && d.kind != TermKind::Var && d.kind != TermKind::Meta;
      return wrap(d, dp) + " | " + render_term(*f.terms[1]);
    }
    case FormulaKind::Exists:
      return "there is an integer " + f.name + " such that " + render_formula(*f.subs[0]);
    case FormulaKind::TermStatement: return render_term(*f.terms[0]);
  }
  return "?";
}

}  // namespace

std::string render(const Term& term) { return render_term(term); }
std::string render(const Formula& formula) { return render_formula(formula); }

}  // namespace proofcheck::logic
