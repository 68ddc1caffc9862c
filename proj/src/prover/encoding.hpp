#pragma once

// Propositional encoding shared by the truth-table procedures and the
// abstraction fallback of check_step. Not installed.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofcheck/prover.hpp"

namespace proofcheck::prover::detail {

struct Atom {
  std::string key;
  logic::FormulaPtr formula;  // PropVar, In(element, set variable), or an opaque atom
  bool pure = true;
};

class Encoder {
 public:
  using KeyFn = std::function<std::string(const logic::Formula&)>;

  /// Without a key function every non-set, non-propositional atom is an error
  /// (NonReducible); with one, such atoms become opaque and impure.
  explicit Encoder(KeyFn opaque_key = nullptr) : opaque_key_(std::move(opaque_key)) {}

  /// Adds a premise; top-level subset and set-equality facts are kept aside
  /// and instantiated over the element universe in finish().
  void premise(const logic::FormulaPtr& f);
  void claim(const logic::FormulaPtr& f);
  /// Instantiates universal facts; call once after all premises and the claim.
  void finish();

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_impure() const;


  struct Result {
    bool entailed = false;
    std::vector<bool> falsifying;  // indexed like atoms(); only if !entailed
  };
  /// Throws ProverError(TooManyAtoms).
  Result decide() const;

  /// Builds the countermodel for a falsifying assignment.
  Countermodel countermodel(const std::vector<bool>& values) const;

 private:
  struct Node {
    enum Op { Atom, False, True, Not, And, Or, Implies, Iff } op;
    int a = -1;
    int b = -1;
  };

  int encode(const logic::FormulaPtr& f);
  int member(const logic::TermPtr& element, const logic::TermPtr& set);
  int atom(const std::string& key, const logic::FormulaPtr& f, bool pure);
  int node(Node::Op op, int a = -1, int b = -1);
  bool eval(int n, const std::vector<bool>& values) const;
  void note_element(const logic::TermPtr& e);

  KeyFn opaque_key_;
  std::vector<Atom> atoms_;
  std::map<std::string, int> atom_index_;
  std::vector<Node> nodes_;
  std::vector<int> premises_;
  int claim_ = -1;
  std::vector<logic::FormulaPtr> universal_;  // Subset / set Eq facts
  std::vector<logic::TermPtr> elements_;
  std::map<std::string, bool> element_seen_;
  bool finished_ = false;
};

bool is_set_term(const logic::Term& t);
bool is_element_term(const logic::Term& t);

}  // namespace proofcheck::prover::detail
