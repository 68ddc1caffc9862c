#pragma once

// Parity and divisibility rules over polynomial normal forms. Not installed.

#include <optional>
#include <string>
#include <vector>

#include "proofcheck/prover.hpp"

namespace proofcheck::prover::detail {

/// d | P (divides) or not d | P, with d a positive constant or a variable.
struct Literal {
  bool divides = true;
  logic::BigInt d = 2;
  std::string dvar;  // non-empty for a variable divisor
  algebra::Polynomial p;
  bool surface_negated = false;  // written as ¬even / ¬odd / ¬divides
  bool surface_parity = false;   // written with even / odd
};

/// Recognizes even/odd/divides and their negations.
std::optional<Literal> as_literal(const logic::Formula& f, const std::vector<algebra::Substitution>& subs);

class NumberTheory {
 public:
  NumberTheory(const KnowledgeBase& kb, std::vector<algebra::Substitution> subs);

  /// Rule trace if the literal follows.
  std::optional<std::vector<std::string>> prove(const Literal& goal, unsigned depth);
  /// Derives ⊥ from a literal fact whose opposite is provable.
  std::optional<std::vector<std::string>> contradiction(unsigned depth);

  bool depth_exceeded() const { return depth_exceeded_; }
  const std::vector<algebra::Substitution>& substitutions() const { return subs_; }

 private:
  std::optional<std::vector<std::string>> search(const Literal& goal, unsigned depth);
  std::optional<std::string> direct(const Literal& goal) const;
  std::string fresh(const std::string& base, const algebra::Polynomial& p) const;

  std::vector<algebra::Substitution> subs_;
  std::vector<Literal> facts_;
  std::vector<std::pair<algebra::Polynomial, algebra::Polynomial>> equations_;
  std::vector<std::string> taken_;
  bool depth_exceeded_ = false;
};

/// P = (v+a)(v+a+1)·R for some variable v and small shift a; returns content(R).
std::optional<logic::BigInt> consecutive_product_content(const algebra::Polynomial& p);

}  // namespace proofcheck::prover::detail
