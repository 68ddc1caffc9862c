#pragma once

// Canonical multivariate polynomials over the integers. Used to compare the
// two sides of an equation chain and to read off parity and divisibility.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofcheck/logic.hpp"

namespace proofcheck::algebra {

using logic::BigInt;

/// Variable -> exponent (> 0). std::map keeps the keys sorted.
using Monomial = std::map<std::string, unsigned>;

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const BigInt& c);
  static Polynomial variable(const std::string& name);

  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  BigInt constant_term() const;
  BigInt coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const BigInt& c) const;
  Polynomial pow(unsigned e) const;

  /// gcd of all coefficients, always >= 0; 0 for the zero polynomial.
  BigInt content() const;
  /// p / d if d divides every coefficient.
  std::optional<Polynomial> divide_exact(const BigInt& d) const;

  Polynomial substitute(const std::string& var, const Polynomial& value) const;
  BigInt evaluate(const std::map<std::string, BigInt>& env) const;

  std::set<std::string> variables() const;
  unsigned degree() const;
  unsigned degree_in(const std::string& var) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms_ < b.terms_; }

 private:
  void add_term(const Monomial& m, const BigInt& c);
  std::map<Monomial, BigInt> terms_;  // no zero coefficients
};

class AlgebraError : public std::runtime_error {
 public:
  enum class Kind { ExponentTooLarge, SubstitutionCycle, NotIntegerTerm, NotOriented };
  AlgebraError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

constexpr unsigned kDefaultExponentBound = 16;

/// Throws AlgebraError(ExponentTooLarge) or (NotIntegerTerm).
Polynomial normalize(const logic::Term& term, unsigned exponent_bound = kDefaultExponentBound);
inline Polynomial normalize(const logic::TermPtr& term, unsigned exponent_bound = kDefaultExponentBound) {
  return normalize(*term, exponent_bound);
}

/// Oriented substitution x := rhs. Built from Eq facts whose left side is a variable.
struct Substitution {
  std::string var;
  Polynomial value;
};

/// Orients Eq formulas; the first equation for a variable wins. Throws
/// AlgebraError(NotOriented) if some left side is not a single variable.
std::vector<Substitution> orient(const std::vector<logic::FormulaPtr>& equalities);

/// Applies the substitutions until nothing changes; more than n+1 rounds is a
/// cycle (AlgebraError SubstitutionCycle).
Polynomial apply(const Polynomial& p, const std::vector<Substitution>& subs);

bool equal_under(const std::vector<logic::FormulaPtr>& equalities, const logic::TermPtr& lhs,
                 const logic::TermPtr& rhs);

/// Quotient q with term = d*q after substitution, when d divides every coefficient.
std::optional<Polynomial> divisibility_certificate(const BigInt& d, const logic::TermPtr& term,
                                                   const std::vector<logic::FormulaPtr>& equalities);

}  // namespace proofcheck::algebra
