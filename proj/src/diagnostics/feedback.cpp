#include <algorithm>

#include "proofcheck/diagnostics.hpp"

namespace proofcheck::diagnostics {

std::string_view roman(Category c) {
  switch (c) {
    case Category::Textual: return "i";
    case Category::Type: return "ii";
    case Category::UnverifiedStep: return "iii";
    case Category::ErrorPattern: return "iv";
    case Category::GoalStatus: return "v";
  }
  return "?";
}

std::string_view name(Category c) {
  switch (c) {
    case Category::Textual: return "textual";
    case Category::Type: return "type";
    case Category::UnverifiedStep: return "unverified-step";
    case Category::ErrorPattern: return "error-pattern";
    case Category::GoalStatus: return "goal-status";
  }
  return "?";
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::string_view to_string(DocumentStatus s) { return s == DocumentStatus::Accepted ? "Accepted" : "Rejected"; }

bool accepted(const std::vector<FeedbackItem>& items) {
  return std::none_of(items.begin(), items.end(), [](const FeedbackItem& item) {
    return item.severity == Severity::Error && item.category != Category::ErrorPattern;
  });
}

}  // namespace proofcheck::diagnostics
