#include "proofcheck/engine.hpp"

#include <algorithm>
#include <map>

namespace proofcheck::engine {

using cnl::ProofMethod;
using cnl::SentenceAST;
using cnl::SentenceKind;
using diagnostics::Category;
using diagnostics::FeedbackItem;
using diagnostics::Severity;
using logic::FormulaKind;
using logic::FormulaPtr;

namespace {

std::string quoted(const FormulaPtr& f) { return "'" + logic::render(*f) + "'"; }

std::string_view code_of(logic::TypeErrorKind kind) {
  switch (kind) {
    case logic::TypeErrorKind::UndeclaredVariable: return "undeclared-variable";
    case logic::TypeErrorKind::TypeMismatch: return "type-mismatch";
    case logic::TypeErrorKind::AssumedNonProposition: return "assumed-non-proposition";
    case logic::TypeErrorKind::InvalidExponent: return "invalid-exponent";
    case logic::TypeErrorKind::InvalidDivisor: return "invalid-divisor";
    case logic::TypeErrorKind::AlreadyDeclared: return "already-declared";
  }
  return "type-error";
}

std::string method_name(ProofMethod m) {
  switch (m) {
    case ProofMethod::Direct: return "a direct proof";
    case ProofMethod::Contraposition: return "a proof by contraposition";
    case ProofMethod::Contradiction: return "a proof by contradiction";
    case ProofMethod::CaseSplit: return "a case distinction";
    case ProofMethod::SubsetElementArg: return "an element argument";
    case ProofMethod::None: break;
  }
  return "a proof";
}

logic::TypeContext truncated(const logic::TypeContext& ctx, std::size_t n) {
  logic::TypeContext out;
  for (std::size_t i = 0; i < n && i < ctx.entries().size(); ++i)
    out.declare(ctx.entries()[i].first, ctx.entries()[i].second);
  return out;
}

bool alpha_equal_exists(const logic::Formula& fact, const std::string& var, const logic::Formula& body) {
  if (fact.kind != FormulaKind::Exists) return false;
  auto renamed = logic::substitute(fact.subs[0], {{fact.name, logic::make_var(var)}});
  return logic::same(*renamed, body);
}

class Runner {
 public:
  Runner(ProofState state, const Options& options) : st_(std::move(state)), options_(options) {}

  ProofState state() && { return std::move(st_); }
  std::vector<FeedbackItem> items() && { return std::move(items_); }

  void header(const cnl::ProblemDocument& doc) {
    for (const auto& s : doc.premises) {
      cursor_ = &s;
      if (s.kind == SentenceKind::Declare) {
        declare(s);
      } else if (auto f = typed(s.formula)) {
        st_.kb.facts.push_back(*f);
      }
    }
    if (doc.goal) {
      cursor_ = &*doc.goal;
      if (auto g = typed(doc.goal->formula)) {
        GoalFrame root;
        root.original = g->formula();
        root.target = g->formula();
        root.opening_sentence = doc.goal->index;
        root.kb_mark = st_.kb.facts.size();
        root.ctx_mark = st_.kb.ctx.size();
        st_.goals.push_back(std::move(root));
      }
    }
    cursor_ = nullptr;
  }

  void apply(const SentenceAST& s) {
    cursor_ = &s;
    st_.cursor = s.index + 1;
    st_.last_trace.clear();
    switch (s.kind) {
      case SentenceKind::Declare: declare(s); break;
      case SentenceKind::Pick: pick(s); break;
      case SentenceKind::Assume: assume(s); break;
      case SentenceKind::ExistsClaim:
      case SentenceKind::Infer: infer(s); break;
      case SentenceKind::GoalAnnounce: announce(s); break;
      case SentenceKind::SubproofClose:
        if (st_.goals.size() > 1) {
          close_top(s.index, s.span);
        } else {
          add(Category::GoalStatus, "no-open-subproof", s.span,
              "There is no open subproof or case to close here.");
        }
        break;
      case SentenceKind::Qed: finish(s.index, s.span); break;
    }
    cursor_ = nullptr;
  }

  void finish(std::optional<std::size_t> sentence, Span span) {
    while (st_.goals.size() > 1) close_top(sentence, span);
    if (!st_.goals.empty()) {
      GoalFrame& root = st_.goals.back();
      if (!discharged(root)) {
        std::string hint = "End the proof with a sentence stating " + quoted(root.target) + ".";
        if (!root.cases.empty()) hint = "The cases you distinguished do not cover all possibilities. " + hint;
        add_at(Category::GoalStatus, "goal-not-reached", sentence, span,
               "Your last statement does not establish the goal " + quoted(root.target) + ".", hint);
      } else {
        root.discharged = true;
      }
      st_.kb.facts.push_back(logic::assume_typed(root.original));
    }
    st_.finished = true;
  }

 private:
  // --- items -----------------------------------------------------------------

  FeedbackItem& add_at(Category category, std::string code, std::optional<std::size_t> sentence, Span span,
                       std::string message, std::optional<std::string> hint = std::nullopt,
                       Severity severity = Severity::Error) {
    FeedbackItem item;
    item.category = category;
    item.code = std::move(code);
    item.sentence = sentence;
    item.span = span;
    item.message = std::move(message);
    item.hint = std::move(hint);
    item.severity = severity;
    items_.push_back(std::move(item));
    return items_.back();
  }

  FeedbackItem& add(Category category, std::string code, Span span, std::string message,
                    std::optional<std::string> hint = std::nullopt, Severity severity = Severity::Error) {
    std::optional<std::size_t> sentence;
    if (cursor_) sentence = cursor_->index;
    if (cursor_ && !cursor_->span.contains(span)) span = cursor_->span;
    return add_at(category, std::move(code), sentence, span, std::move(message), std::move(hint), severity);
  }

  std::optional<logic::TypedFormula> typed(const FormulaPtr& f) {
    try {
      return logic::typecheck(f, st_.kb.ctx);
    } catch (const logic::TypeError& e) {
      Span span = e.span().empty() && cursor_ ? cursor_->span : e.span();
      add(Category::Type, std::string(code_of(e.kind())), span, e.what());
      return std::nullopt;
    }
  }

  // --- sentence kinds ----------------------------------------------------------

  void declare(const SentenceAST& s) {
    for (const auto& v : s.variables) {
      if (!st_.kb.ctx.declare(v.name, s.sort))
        add(Category::Type, "already-declared", v.span,
            "variable '" + v.name + "' is already declared; a name can only be introduced once");
    }
  }

  void pick(const SentenceAST& s) {
    const auto& v = s.variables.front();
    if (!st_.kb.ctx.declare(v.name, logic::Sort::Integer)) {
      add(Category::Type, "already-declared", v.span,
          "variable '" + v.name + "' is already declared; pick a fresh name for the witness");
      return;
    }
    auto f = typed(s.formula);
    if (!f) return;
    bool justified = false;
    for (const auto& fact : st_.kb.facts)
      for (const auto& c : logic::conjuncts(fact.formula()))
        justified = justified || alpha_equal_exists(*c, v.name, *f->formula());
    if (!justified) {
      auto exists = logic::make_exists(v.name, logic::strip(f->formula()));
      add(Category::UnverifiedStep, "unjustified-witness", s.span,
          "Witness not justified: no earlier sentence establishes that " + logic::render(*exists) + ".",
          "First state 'Then " + logic::render(*exists) + ".'");
    } else {
      st_.last_trace = {"witness"};
    }
    st_.kb.facts.push_back(*f);
  }

  void assume(const SentenceAST& s) {
    if (s.cue == "case") return open_case(s);
    declare_element_variables(s.formula);
    auto f = typed(s.formula);
    if (!f) return;
    refine(f->formula(), s);
    st_.kb.facts.push_back(*f);
  }

  // "Let (x,y) ∈ S" against the goal S ⊂ T introduces x and y.
  void declare_element_variables(const FormulaPtr& a) {
    if (st_.goals.empty() || a->kind != FormulaKind::In) return;
    const auto& target = st_.goals.back().target;
    if (target->kind != FormulaKind::Subset || !logic::same(*a->terms[1], *target->terms[0])) return;
    const auto& e = a->terms[0];
    std::vector<logic::TermPtr> parts = e->kind == logic::TermKind::Pair ? e->args : std::vector<logic::TermPtr>{e};
    for (const auto& p : parts)
      if (p->kind == logic::TermKind::Var && !st_.kb.ctx.contains(p->name))
        st_.kb.ctx.declare(p->name, logic::Sort::Integer);
  }

  bool equivalent(const FormulaPtr& a, const FormulaPtr& b) {
    if (logic::same(*a, *b)) return true;
    try {
      auto ta = logic::typecheck(a, st_.kb.ctx);
      auto tb = logic::typecheck(b, st_.kb.ctx);
      prover::KnowledgeBase ka{st_.kb.ctx, {ta}};
      prover::KnowledgeBase kb{st_.kb.ctx, {tb}};
      return prover::check_step(tb, ka, 0).verified() && prover::check_step(ta, kb, 0).verified();
    } catch (const logic::TypeError&) {
      return false;
    }
  }

  void set_method(GoalFrame& fr, ProofMethod method, FormulaPtr target, const SentenceAST& s) {
    if (fr.announced != ProofMethod::None && fr.announced != method) {
      add(Category::UnverifiedStep, "method-mismatch", s.span,
          "You announced " + method_name(fr.announced) + ", but this assumption starts " + method_name(method) + ".",
          std::nullopt, Severity::Warning);
    }
    fr.method = method;
    fr.target = std::move(target);
  }

  void refine(const FormulaPtr& a, const SentenceAST& s) {
    if (st_.goals.empty()) return;
    GoalFrame& fr = st_.goals.back();
    const FormulaPtr target = fr.target;
    if (target->kind == FormulaKind::Implies) {
      const auto& lhs = target->subs[0];
      const auto& rhs = target->subs[1];
      if (equivalent(a, lhs)) return set_method(fr, ProofMethod::Direct, rhs, s);
      if (equivalent(a, logic::negate(rhs))) return set_method(fr, ProofMethod::Contraposition, logic::negate(lhs), s);
      if (a->kind == FormulaKind::And && logic::same(*a->subs[0], *lhs) &&
          logic::same(*a->subs[1], *logic::negate(rhs)))
        return set_method(fr, ProofMethod::Contradiction, logic::make_false(), s);
    }
    if (target->kind != FormulaKind::False && equivalent(a, logic::negate(target)))
      return set_method(fr, ProofMethod::Contradiction, logic::make_false(), s);
    if (target->kind == FormulaKind::Subset && a->kind == FormulaKind::In &&
        logic::same(*a->terms[1], *target->terms[0]))
      return set_method(fr, ProofMethod::SubsetElementArg, logic::make_in(a->terms[0], target->terms[1]), s);
    add(Category::UnverifiedStep, "assumption-mismatch", s.span,
        "This assumption does not fit the current goal " + quoted(target) + ".",
        "Assume the premise of the implication, the negation of its conclusion (contraposition), or the "
        "negation of the goal (contradiction).");
  }

  void open_case(const SentenceAST& s) {
    if (st_.goals.empty()) {
      if (auto f = typed(s.formula)) st_.kb.facts.push_back(*f);
      return;
    }
    if (st_.goals.back().is_case) close_top(s.index, s.span);
    auto f = typed(s.formula);
    if (!f) return;
    GoalFrame& parent = st_.goals.back();
    parent.method = ProofMethod::CaseSplit;
    GoalFrame fr;
    fr.original = parent.target;
    fr.target = parent.target;
    fr.method = ProofMethod::Direct;
    fr.is_case = true;
    fr.case_assumption = f->formula();
    fr.opening_sentence = s.index;
    fr.kb_mark = st_.kb.facts.size();
    fr.ctx_mark = st_.kb.ctx.size();
    st_.goals.push_back(std::move(fr));
    st_.kb.facts.push_back(*f);
  }

  void infer(const SentenceAST& s) {
    auto f = typed(s.formula);
    if (!f) return;
    const auto verdict = prover::check_step(*f, st_.kb, options_.depth);
    st_.last_trace = verdict.trace;
    if (!verdict.verified()) report_unverified(s, *f, verdict);
    st_.kb.facts.push_back(*f);
  }

  void report_unverified(const SentenceAST& s, const logic::TypedFormula& claim, const prover::StepVerdict& v) {
    std::optional<std::string> hint;
    const bool deep = std::find(v.trace.begin(), v.trace.end(), "depth-exceeded") != v.trace.end();
    try {
      auto opposite = logic::typecheck(logic::negate(claim.formula()), st_.kb.ctx);
      if (!v.refuted() && prover::check_step(opposite, st_.kb, options_.depth).verified())
        hint = "The opposite of this statement follows from what has been established.";
    } catch (const logic::TypeError&) {
    }
    if (!hint && deep) hint = "This may be true, but it needs more than a few elementary steps. Split it into smaller steps.";
    std::string text = quoted(claim.formula());
    // In a chain, point at the first link that fails.
    const auto links = logic::conjuncts(claim.formula());
    if (links.size() > 1) {
      for (const auto& link : links) {
        if (prover::check_step(logic::assume_typed(link), st_.kb, options_.depth).verified()) continue;
        text = quoted(link);
        break;
      }
    }
    auto& item = add(Category::UnverifiedStep, v.refuted() ? "refuted-step" : "unverified-step", s.span,
                     v.refuted() ? "This step is wrong: " + text + " does not follow from what has been established."
                                 : "This step could not be verified: " + text +
                                       " does not follow elementarily from what has been established.",
                     hint);
    item.countermodel = v.countermodel;
    item.trace = v.trace;
    const std::size_t refined = items_.size() - 1;

    const auto& catalog = options_.catalog ? *options_.catalog : diagnostics::default_catalog();
    for (const auto& m : diagnostics::detect_patterns(claim, st_.kb, catalog)) {
      auto& p = add(Category::ErrorPattern, "error-pattern", s.span, m.message);
      p.pattern_id = m.id;
      p.countermodel = items_[refined].countermodel;
      p.refines = refined;
    }
  }

  void announce(const SentenceAST& s) {
    if (s.goal_form == cnl::GoalForm::Method) {
      if (!st_.goals.empty()) st_.goals.back().announced = s.method;
      return;
    }
    auto f = typed(s.formula);
    if (!f) return;
    GoalFrame fr;
    fr.original = f->formula();
    fr.target = f->formula();
    fr.opening_sentence = s.index;
    fr.kb_mark = st_.kb.facts.size();
    fr.ctx_mark = st_.kb.ctx.size();
    st_.goals.push_back(std::move(fr));
  }

  // --- frames ------------------------------------------------------------------

  // A goal counts as reached only once it has been stated; a proof step that
  // would derive it must be written out.
  bool discharged(const GoalFrame& fr) const {
    for (const auto& fact : st_.kb.facts)
      for (const auto& c : logic::conjuncts(fact.formula()))
        if (logic::same(*c, *fr.target) || logic::same(*fact.formula(), *fr.target)) return true;
    return false;
  }

  void close_top(std::optional<std::size_t> sentence, Span span) {
    GoalFrame fr = st_.goals.back();
    if (!discharged(fr)) {
      add_at(Category::GoalStatus, fr.is_case ? "case-not-closed" : "subgoal-not-reached", sentence, span,
             std::string(fr.is_case ? "This case" : "This subproof") + " does not establish " + quoted(fr.target) +
                 ".",
             "State " + quoted(fr.target) + " before closing it.");
    }
    st_.goals.pop_back();
    st_.kb.facts.resize(fr.kb_mark, st_.kb.facts.front());
    st_.kb.ctx = truncated(st_.kb.ctx, fr.ctx_mark);
    if (!fr.is_case) {
      st_.kb.facts.push_back(logic::assume_typed(fr.original));
      return;
    }
    GoalFrame& parent = st_.goals.back();
    parent.cases.push_back(fr.case_assumption);
    FormulaPtr cover = parent.cases.front();
    for (std::size_t i = 1; i < parent.cases.size(); ++i) cover = logic::make_or(cover, parent.cases[i]);
    try {
      auto typed_cover = logic::typecheck(cover, st_.kb.ctx);
      if (prover::check_step(typed_cover, st_.kb, options_.depth).verified())
        st_.kb.facts.push_back(logic::assume_typed(parent.target));
    } catch (const logic::TypeError&) {
    }
  }

  ProofState st_;
  const Options& options_;
  std::vector<FeedbackItem> items_;
  const SentenceAST* cursor_ = nullptr;
};

FeedbackItem from_parse(const cnl::Diagnostic& d) {
  FeedbackItem item;
  item.category = Category::Textual;
  item.severity = d.warning ? Severity::Warning : Severity::Error;
  item.code = std::string(cnl::to_string(d.kind));
  item.sentence = d.sentence;
  item.span = d.span;
  item.message = d.message;
  return item;
}

void rebase(std::vector<FeedbackItem>& items, std::size_t offset) {
  for (auto& item : items)
    if (item.refines) *item.refines += offset;
}

}  // namespace

ProofState init_state(const cnl::ProblemDocument& doc, std::vector<FeedbackItem>& items) {
  Options options;
  Runner runner(ProofState{}, options);
  runner.header(doc);
  auto produced = std::move(runner).items();
  items.insert(items.end(), produced.begin(), produced.end());
  return std::move(runner).state();
}

std::pair<ProofState, std::vector<FeedbackItem>> apply_sentence(const ProofState& state, const SentenceAST& sentence,
                                                                const Options& options) {
  Runner runner(state, options);
  runner.apply(sentence);
  auto items = std::move(runner).items();
  return {std::move(runner).state(), std::move(items)};
}

std::pair<ProofState, std::vector<FeedbackItem>> finish(const ProofState& state, std::optional<std::size_t> sentence,
                                                        Span span, const Options& options) {
  Runner runner(state, options);
  runner.finish(sentence, span);
  auto items = std::move(runner).items();
  return {std::move(runner).state(), std::move(items)};
}

diagnostics::Report check_document(const cnl::ProblemDocument& doc, const Options& options) {
  diagnostics::Report report;
  for (const auto& d : doc.diagnostics) report.items.push_back(from_parse(d));

  std::map<std::size_t, std::vector<std::string>> traces;
  ProofState state = init_state(doc, report.items);
  for (const auto& s : doc.proof) {
    auto [next, items] = apply_sentence(state, s, options);
    rebase(items, report.items.size());
    report.items.insert(report.items.end(), items.begin(), items.end());
    state = std::move(next);
    if (!state.last_trace.empty()) traces[s.index] = state.last_trace;
  }
  if (!state.finished && doc.has_proof_body) {
    Span end{doc.source.size(), doc.source.size()};
    auto [next, items] = finish(state, std::nullopt, end, options);
    rebase(items, report.items.size());
    report.items.insert(report.items.end(), items.begin(), items.end());
  }

  std::map<std::size_t, std::string> kinds;
  for (const auto& s : doc.premises) kinds[s.index] = std::string(cnl::to_string(s.kind));
  if (doc.goal) kinds[doc.goal->index] = std::string(cnl::to_string(doc.goal->kind));
  for (const auto& s : doc.proof) kinds[s.index] = std::string(cnl::to_string(s.kind));

  for (std::size_t i = 0; i < doc.sentence_spans.size(); ++i) {
    diagnostics::SentenceVerdict v;
    v.index = i;
    v.span = doc.sentence_spans[i];
    v.in_header = i < doc.header_sentences;
    v.kind = kinds.count(i) ? kinds[i] : "unparsed";
    v.status = "ok";
    for (const auto& item : report.items) {
      if (item.sentence != i) continue;
      if (item.severity == Severity::Error) v.status = "error";
      else if (v.status == "ok") v.status = "warning";
    }
    if (traces.count(i)) v.trace = traces[i];
    report.sentences.push_back(std::move(v));
  }
  report.status = diagnostics::accepted(report.items) ? diagnostics::DocumentStatus::Accepted
                                                      : diagnostics::DocumentStatus::Rejected;
  return report;
}

diagnostics::Report check_text(std::string_view source, const Options& options) {
  return check_document(cnl::parse_document(source), options);
}

}  // namespace proofcheck::engine
