#pragma once

// Independent oracles and generators for the test suites. Nothing here calls
// into the prover or the algebra module; formulas and terms are generated in
// their own small representation and handed to the library as CNL text.

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "proofcheck/prover.hpp"

namespace oracle {

// --- propositional / Boolean set formulas -------------------------------------

struct SetExpr {
  enum Op { Var, Inter, Union } op = Var;
  std::string name;
  std::shared_ptr<SetExpr> l, r;
};
using SetPtr = std::shared_ptr<SetExpr>;

struct Prop {
  enum Op { Atom, Member, PairMember, Subset, SetEq, Not, And, Or, Implies, Iff } op = Atom;
  std::string name;              // Atom
  std::string element;           // Member: "x" or "y"
  SetPtr set, set2;              // Member / Subset / SetEq / PairMember (set × set2)
  std::shared_ptr<Prop> l, r;
};
using PropPtr = std::shared_ptr<Prop>;

std::string text(const SetExpr& s);
std::string text(const Prop& p);

/// Membership of the atomic elements x, y in set variables, plus proposition values.
struct Model {
  std::map<std::pair<std::string, std::string>, bool> member;  // (element, set)
  std::map<std::string, bool> atoms;
};

bool holds(const Prop& p, const Model& m);

struct Query {
  std::vector<std::string> props;  // proposition variables used
  std::vector<std::string> sets;   // set variables used
  std::vector<PropPtr> premises;
  PropPtr claim;
  bool uses_sets = false;
};

/// Random query with at most four proposition/set variables.
Query random_query(std::mt19937_64& rng);

/// Truth-table entailment over every membership pattern of x and y.
/// Subset and set equality premises are read over the elements x and y,
/// which is exact because no other element is ever named.
struct Verdict {
  bool entailed = false;
  std::optional<Model> counterexample;
};
Verdict entails(const Query& q);

/// Reads a library countermodel as a Model; unknown atoms are an error.
std::optional<Model> model_of(const proofcheck::prover::Countermodel& cm, std::string* why = nullptr);

/// The countermodel makes every premise true and the claim false.
bool countermodel_valid(const Query& q, const proofcheck::prover::Countermodel& cm, std::string* why = nullptr);

// --- integer terms --------------------------------------------------------------

struct Term {
  enum Op { Const, Var, Neg, Add, Sub, Mul, Pow } op = Const;
  long value = 0;
  std::string name;
  unsigned exponent = 0;
  std::shared_ptr<Term> l, r;
};
using TermPtr = std::shared_ptr<Term>;

std::string text(const Term& t);
mpz_class eval(const Term& t, const std::map<std::string, mpz_class>& env);
TermPtr random_term(std::mt19937_64& rng, int depth);

// --- corpus and mutation suite ------------------------------------------------------

std::string read_file(const std::string& path);

struct MutationCase {
  std::string id;
  std::string base;
  std::string text;  // mutated document
  std::string status;
  std::vector<std::string> items;  // expected signatures, sorted
  bool countermodel = false;
};

/// Loads corpus/mutations.json and applies every edit; throws if an edit's
/// anchor does not occur exactly once.
std::vector<MutationCase> load_mutations(const std::string& corpus_dir);

/// "iii", "iv:power-distribution", "i/warning", ...
std::vector<std::string> signatures(const nlohmann::ordered_json& response);

/// Countermodel check for a finished document: evaluates the premises a
/// step relied on (all header facts and earlier steps) in the model.
bool document_countermodel_valid(const std::string& text, const nlohmann::ordered_json& item, std::string* why);

}  // namespace oracle
