#include "proofcheck/diagnostics.hpp"

namespace proofcheck::diagnostics {

namespace {

std::string join_list(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += i + 1 == parts.size() ? " and " : ", ";
    out += parts[i];
  }
  return out;
}

std::string label(Category c) {
  switch (c) {
    case Category::Textual: return "(i) textual error";
    case Category::Type: return "(ii) type error";
    case Category::UnverifiedStep: return "(iii) unverified step";
    case Category::ErrorPattern: return "(iv) error pattern";
    case Category::GoalStatus: return "(v) goal status";
  }
  return "?";
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\n' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == '\n' || c == '\t' || c == '\r' || c == ' ') {
      space = true;
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace

std::string countermodel_prose(const prover::Countermodel& cm) {
  std::vector<std::string> parts;
  std::string out;
  if (cm.kind == prover::Countermodel::Kind::Propositional) {
    for (const auto& [atom, value] : cm.assignment) parts.push_back(atom + (value ? " true" : " false"));
    out = "Consider: " + (parts.empty() ? std::string("any assignment") : std::string()) ;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    out += ".";
  } else {
    for (const auto& m : cm.memberships) parts.push_back(m.element + (m.member ? " ∈ " : " ∉ ") + m.set);
    for (const auto& [atom, value] : cm.propositions) parts.push_back(atom + (value ? " true" : " false"));
    out = "Consider a situation in which ";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    out += ".";
    if (cm.distinct.size() > 1) out += " Here " + join_list(cm.distinct) + " are different elements.";
  }
  return out + " Then all your assumptions hold but your claim fails.";
}

FeedbackDocument render_feedback(const Report& report, std::string_view source, Verbosity verbosity) {
  FeedbackDocument doc;
  doc.status = report.status;
  for (const auto& s : report.sentences) {
    doc.marks.push_back(s.status);
    doc.sentence_text.push_back(trim(s.span.slice(source)));
  }
  for (const auto& item : report.items) {
    RenderedItem r;
    r.label = label(item.category);
    if (item.severity == Severity::Warning) r.label += " (warning)";
    r.sentence = item.sentence;
    r.span = item.span;
    r.quote = trim(item.span.slice(source));
    r.message = item.message;
    if (verbosity == Verbosity::Explained) {
      if (item.countermodel) r.explanation.push_back(countermodel_prose(*item.countermodel));
      if (item.hint) r.explanation.push_back("Hint: " + *item.hint);
      if (!item.trace.empty()) {
        std::string t = "Rules tried: ";
        for (std::size_t i = 0; i < item.trace.size(); ++i) t += (i ? ", " : "") + item.trace[i];
        r.explanation.push_back(t + ".");
      }
    }
    doc.items.push_back(std::move(r));
  }
  return doc;
}

std::string FeedbackDocument::to_text() const {
  std::size_t ok = 0;
  for (const auto& m : marks) ok += m != "error";
  std::string out = std::string(to_string(status)) + " (" + std::to_string(ok) + " of " +
                    std::to_string(marks.size()) + " sentences ok";
  if (!items.empty()) out += ", " + std::to_string(items.size()) + (items.size() == 1 ? " item" : " items");
  out += ")\n";
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const char* mark = marks[i] == "ok" ? "✓" : marks[i] == "warning" ? "!" : "✗";
    out += "  " + std::string(mark) + " " + std::to_string(i) + "  " + sentence_text[i] + "\n";
  }
  for (const auto& item : items) {
    out += "\n";
    out += item.sentence ? "sentence " + std::to_string(*item.sentence) : std::string("document");
    out += " " + item.label;
    if (!item.quote.empty()) out += ": \"" + item.quote + "\"";
    out += "\n  " + item.message + "\n";
    for (const auto& e : item.explanation) out += "  " + e + "\n";
  }
  return out;
}

}  // namespace proofcheck::diagnostics
