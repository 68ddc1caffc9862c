#pragma once

// Typed term and formula ASTs shared by every stage of the checker, plus the
// three-sorted type checker.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proofcheck/span.hpp"

namespace proofcheck::logic {

using BigInt = mpz_class;

enum class Sort { Unknown, Integer, Set, Proposition, Pair };

std::string_view to_string(Sort sort);

enum class TermKind {
  IntConst,
  Var,
  Meta,  // schema variable ?t, only in pattern catalogs
  Neg,
  Add,
  Sub,
  Mul,
  Pow,  // args = {base, exponent}; the exponent is an IntConst (or Meta in schemas)
  Pair,
  Inter,
  Union,
  Prod,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind = TermKind::IntConst;
  BigInt value;      // IntConst
  std::string name;  // Var, Meta
  std::vector<TermPtr> args;
  Span span;
  Sort sort = Sort::Unknown;  // filled in by typecheck
};

enum class FormulaKind {
  PropVar,
  Meta,  // schema variable ?P
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Eq,       // terms = {lhs, rhs}
  In,       // terms = {element, set}
  Subset,   // terms = {sub, super}; read as non-strict inclusion
  Even,     // terms = {t}
  Odd,      // terms = {t}
  Divides,  // terms = {divisor, t}
  Exists,   // name = bound integer variable, subs = {body}
  TermStatement,  // a bare term used where a statement is required; never well-typed
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::False;
  std::string name;
  std::vector<FormulaPtr> subs;
  std::vector<TermPtr> terms;
  Span span;
};

// --- construction ---------------------------------------------------------

TermPtr make_int(BigInt value, Span span = {});
TermPtr make_var(std::string name, Span span = {});
TermPtr make_meta_term(std::string name, Span span = {});
TermPtr make_unary(TermKind kind, TermPtr arg, Span span = {});
TermPtr make_binary(TermKind kind, TermPtr lhs, TermPtr rhs, Span span = {});
TermPtr make_pow(TermPtr base, unsigned exponent, Span span = {});

FormulaPtr make_prop(std::string name, Span span = {});
FormulaPtr make_meta_formula(std::string name, Span span = {});
FormulaPtr make_false(Span span = {});
FormulaPtr make_not(FormulaPtr sub, Span span = {});
FormulaPtr make_connective(FormulaKind kind, FormulaPtr lhs, FormulaPtr rhs, Span span = {});
FormulaPtr make_relation(FormulaKind kind, std::vector<TermPtr> terms, Span span = {});
FormulaPtr make_exists(std::string var, FormulaPtr body, Span span = {});
FormulaPtr make_term_statement(TermPtr term, Span span = {});

inline FormulaPtr make_and(FormulaPtr a, FormulaPtr b) { return make_connective(FormulaKind::And, std::move(a), std::move(b)); }
inline FormulaPtr make_or(FormulaPtr a, FormulaPtr b) { return make_connective(FormulaKind::Or, std::move(a), std::move(b)); }
inline FormulaPtr make_implies(FormulaPtr a, FormulaPtr b) { return make_connective(FormulaKind::Implies, std::move(a), std::move(b)); }
inline FormulaPtr make_eq(TermPtr a, TermPtr b) { return make_relation(FormulaKind::Eq, {std::move(a), std::move(b)}); }
inline FormulaPtr make_in(TermPtr a, TermPtr b) { return make_relation(FormulaKind::In, {std::move(a), std::move(b)}); }
inline FormulaPtr make_subset(TermPtr a, TermPtr b) { return make_relation(FormulaKind::Subset, {std::move(a), std::move(b)}); }
inline FormulaPtr make_even(TermPtr t) { return make_relation(FormulaKind::Even, {std::move(t)}); }
inline FormulaPtr make_odd(TermPtr t) { return make_relation(FormulaKind::Odd, {std::move(t)}); }
inline FormulaPtr make_divides(TermPtr d, TermPtr t) { return make_relation(FormulaKind::Divides, {std::move(d), std::move(t)}); }

// --- structural queries ---------------------------------------------------

/// Structural equality ignoring spans and sort annotations.
bool same(const Term& a, const Term& b);
bool same(const Formula& a, const Formula& b);
inline bool same(const TermPtr& a, const TermPtr& b) { return same(*a, *b); }
inline bool same(const FormulaPtr& a, const FormulaPtr& b) { return same(*a, *b); }

bool is_connective(FormulaKind kind);
bool is_set_operator(TermKind kind);
bool is_arithmetic(TermKind kind);

void collect_variables(const Term& term, std::set<std::string>& out);
/// Free term variables and propositional variables of a formula.
std::set<std::string> free_variables(const Formula& formula);

/// Replaces term variables by terms; bound variables of Exists are respected.
TermPtr substitute(const TermPtr& term, const std::map<std::string, TermPtr>& bindings);
FormulaPtr substitute(const FormulaPtr& formula, const std::map<std::string, TermPtr>& bindings);

/// Flattens nested And nodes into their conjuncts (a non-And formula yields itself).
std::vector<FormulaPtr> conjuncts(const FormulaPtr& formula);

/// ¬¬F simplifies to F, otherwise wraps in Not.
FormulaPtr negate(const FormulaPtr& formula);

/// Strips spans and sorts so two trees from different sources compare byte-equal when rendered.
FormulaPtr strip(const FormulaPtr& formula);

// --- rendering ------------------------------------------------------------

/// Canonical surface rendering. Re-parsing the output yields a structurally equal tree.
std::string render(const Term& term);
std::string render(const Formula& formula);
inline std::string render(const TermPtr& term) { return render(*term); }
inline std::string render(const FormulaPtr& formula) { return render(*formula); }

// --- typing ---------------------------------------------------------------

/// Ordered variable-to-sort bindings. A name is bound at most once.
class TypeContext {
 public:
  /// Returns false if the name is already bound (shadowing is forbidden).
  bool declare(const std::string& name, Sort sort);
  std::optional<Sort> lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name).has_value(); }
  const std::vector<std::pair<std::string, Sort>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, Sort>> entries_;
};

enum class TypeErrorKind {
  UndeclaredVariable,
  TypeMismatch,
  AssumedNonProposition,
  InvalidExponent,
  InvalidDivisor,
  AlreadyDeclared,
};

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string name, Sort declared, Sort required, Span span, std::string message);

  TypeErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Sort declared() const { return declared_; }
  Sort required() const { return required_; }
  const Span& span() const { return span_; }

 private:
  TypeErrorKind kind_;
  std::string name_;
  Sort declared_;
  Sort required_;
  Span span_;
};

/// A formula whose every term node carries a sort consistent with its operator.
/// Only typecheck() produces one.
class TypedFormula {
 public:
  const FormulaPtr& formula() const { return formula_; }
  const Formula& operator*() const { return *formula_; }
  const Formula* operator->() const { return formula_.get(); }

 private:
  friend TypedFormula typecheck(const FormulaPtr& formula, const TypeContext& ctx);
  friend TypedFormula assume_typed(FormulaPtr formula);
  explicit TypedFormula(FormulaPtr formula) : formula_(std::move(formula)) {}
  FormulaPtr formula_;
};

/// Throws TypeError on the first violation found in left-to-right order.
TypedFormula typecheck(const FormulaPtr& formula, const TypeContext& ctx);

/// Sort of an integer- or set-valued term; throws TypeError like typecheck.
Sort sort_of(const TermPtr& term, const TypeContext& ctx);

/// Wraps a formula built from already-typed parts (e.g. the conclusion of a
/// discharged frame). Callers guarantee the invariant.
TypedFormula assume_typed(FormulaPtr formula);

}  // namespace proofcheck::logic
