#include <cctype>

#include "proofcheck/cnl.hpp"

namespace proofcheck::cnl {

namespace {

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string sort_noun(logic::Sort sort, bool plural) {
  switch (sort) {
    case logic::Sort::Integer: return plural ? "integers" : "an integer";
    case logic::Sort::Set: return plural ? "sets" : "a set";
    case logic::Sort::Proposition: return plural ? "propositions" : "a proposition";
    default: return plural ? "things" : "a thing";
  }
}

std::string method_phrase(ProofMethod m) {
  switch (m) {
    case ProofMethod::Contraposition: return "We prove the contraposition";
    case ProofMethod::Contradiction: return "We prove by contradiction";
    case ProofMethod::CaseSplit: return "We distinguish cases";
    default: return "We prove directly";
  }
}

}  // namespace

std::string render_sentence(const SentenceAST& s) {
  std::string body;
  switch (s.kind) {
    case SentenceKind::Declare: {
      body = "Let ";
      for (std::size_t i = 0; i < s.variables.size(); ++i) body += (i ? ", " : "") + s.variables[i].name;
      body += " be " + sort_noun(s.sort, s.variables.size() > 1);
      break;
    }
    case SentenceKind::Pick: {
      const std::string& v = s.variables.empty() ? std::string("k") : s.variables[0].name;
      if (s.cue == "let")
        body = "Let " + v + " be an integer such that " + logic::render(s.formula);
      else
        body = capitalized(s.cue.empty() ? "pick" : s.cue) + " an integer " + v + " such that " +
               logic::render(s.formula);
      break;
    }
    case SentenceKind::Assume:
      if (s.cue == "let")
        body = "Let " + logic::render(s.formula);
      else if (s.cue == "case")
        body = "Case: " + logic::render(s.formula);
      else
        body = "Assume that " + logic::render(s.formula);
      break;
    case SentenceKind::GoalAnnounce:
      if (s.goal_form == GoalForm::Method)
        body = method_phrase(s.method);
      else if (s.goal_form == GoalForm::Prove)
        body = "Prove: " + logic::render(s.formula);
      else
        body = "It remains to show: " + logic::render(s.formula);
      break;
    case SentenceKind::ExistsClaim:
    case SentenceKind::Infer:
      body = s.cue.empty() ? logic::render(s.formula) : s.cue + " " + logic::render(s.formula);
      body = capitalized(body);
      break;
    case SentenceKind::SubproofClose:
      body = "This completes the subproof";
      break;
    case SentenceKind::Qed:
      return "qed.";
  }
  return body + ".";
}

}  // namespace proofcheck::cnl
