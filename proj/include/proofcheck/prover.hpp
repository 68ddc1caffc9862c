#pragma once

// The "elementary" prover: decides one proof step against the facts
// established so far. Propositional and Boolean set-theoretic steps are
// decided by truth tables; parity and divisibility steps by a small backward
// rule search over polynomial normal forms.
//
// Rule names used in traces are listed in docs/rules.md.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofcheck/algebra.hpp"
#include "proofcheck/logic.hpp"

namespace proofcheck::prover {

struct KnowledgeBase {
  logic::TypeContext ctx;
  std::vector<logic::TypedFormula> facts;

  /// Eq facts whose left side is a single variable, in assertion order.
  std::vector<logic::FormulaPtr> equalities() const;
  /// The equalities that can be used as substitutions: for each variable the
  /// first one, skipping any that would close a cycle.
  std::vector<algebra::Substitution> substitutions() const;

  KnowledgeBase with(logic::TypedFormula fact) const;
  bool contains(const logic::Formula& f) const;
};

struct Countermodel {
  enum class Kind { Propositional, SetScenario };
  struct Membership {
    std::string element;  // rendered element term, e.g. "x" or "(x, y)"
    std::string set;      // set variable
    bool member = false;
  };

  Kind kind = Kind::Propositional;
  /// Propositional: every atom, sorted by name.
  std::vector<std::pair<std::string, bool>> assignment;
  /// Set scenario: membership atoms plus any propositional atoms.
  std::vector<Membership> memberships;
  std::vector<std::pair<std::string, bool>> propositions;
  /// Element terms that the scenario takes to be pairwise distinct.
  std::vector<std::string> distinct;
};

struct StepVerdict {
  enum class Status { Verified, Refuted, Unknown };
  Status status = Status::Unknown;
  std::vector<std::string> trace;
  std::optional<Countermodel> countermodel;  // only when Refuted

  bool verified() const { return status == Status::Verified; }
  bool refuted() const { return status == Status::Refuted; }
};

std::string_view to_string(StepVerdict::Status status);

class ProverError : public std::runtime_error {
 public:
  enum class Kind { TooManyAtoms, NonReducible };
  ProverError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

constexpr std::size_t kMaxAtoms = 20;
constexpr unsigned kDefaultDepth = 3;

/// Purely propositional entailment. Throws ProverError(NonReducible) on other
/// formulas and (TooManyAtoms) beyond 20 atoms.
StepVerdict entails_prop(const std::vector<logic::FormulaPtr>& premises, const logic::FormulaPtr& claim);

/// Boolean set theory (membership, ∩, ∪, ×, subset facts) plus propositional
/// connectives. Subset claims are not decided here (NonReducible).
StepVerdict entails_set(const std::vector<logic::FormulaPtr>& premises, const logic::FormulaPtr& claim);

/// Checks one step. Refuted is only returned in the decidable fragments.
StepVerdict check_step(const logic::TypedFormula& claim, const KnowledgeBase& kb, unsigned depth = kDefaultDepth);

/// True if the formula lies in the fragment decided by entails_set/entails_prop.
bool in_decidable_fragment(const logic::Formula& f, bool as_premise);

}  // namespace proofcheck::prover
