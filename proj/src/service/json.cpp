#include <stdexcept>

#include "proofcheck/service.hpp"

namespace proofcheck::service {

using diagnostics::Report;
using diagnostics::Verbosity;

Json countermodel_json(const prover::Countermodel& cm) {
  Json j;
  if (cm.kind == prover::Countermodel::Kind::Propositional) {
    j["kind"] = "propositional";
    Json assignment = Json::object();
    for (const auto& [atom, value] : cm.assignment) assignment[atom] = value;
    j["assignment"] = std::move(assignment);
    return j;
  }
  j["kind"] = "set-scenario";
  Json memberships = Json::array();
  for (const auto& m : cm.memberships)
    memberships.push_back(Json{{"element", m.element}, {"set", m.set}, {"member", m.member}});
  j["memberships"] = std::move(memberships);
  Json propositions = Json::object();
  for (const auto& [atom, value] : cm.propositions) propositions[atom] = value;
  j["propositions"] = std::move(propositions);
  j["distinct"] = cm.distinct;
  return j;
}

namespace {

Json span_json(const Span& s) { return Json{{"begin", s.begin}, {"end", s.end}}; }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json check_response(const Report& report, std::string_view source, Verbosity verbosity) {
  const auto rendered = diagnostics::render_feedback(report, source, verbosity);
  Json j;
  j["schema"] = kSchemaVersion;
  j["status"] = diagnostics::to_string(report.status);
  Json sentences = Json::array();
  for (const auto& s : report.sentences) {
    sentences.push_back(Json{{"index", s.index},
                             {"span", span_json(s.span)},
                             {"kind", s.kind},
                             {"status", s.status},
                             {"header", s.in_header},
                             {"trace", s.trace}});
  }
  j["sentence-verdicts"] = std::move(sentences);
  Json items = Json::array();
  for (std::size_t i = 0; i < report.items.size(); ++i) {
    const auto& item = report.items[i];
    Json o;
    o["category"] = diagnostics::roman(item.category);
    o["category-name"] = diagnostics::name(item.category);
    o["severity"] = diagnostics::to_string(item.severity);
    o["code"] = item.code;
    o["sentence"] = optional_json(item.sentence);
    o["span"] = span_json(item.span);
    o["quote"] = rendered.items[i].quote;
    o["message"] = item.message;
    o["pattern"] = optional_json(item.pattern_id);
    o["countermodel"] = item.countermodel ? countermodel_json(*item.countermodel) : Json(nullptr);
    o["hint"] = optional_json(item.hint);
    o["trace"] = item.trace;
    o["refines"] = optional_json(item.refines);
    if (verbosity == Verbosity::Explained) o["explanation"] = rendered.items[i].explanation;
    items.push_back(std::move(o));
  }
  j["items"] = std::move(items);
  return j;
}

Json rejected_submission(std::string code, std::string message) {
  Json item;
  item["category"] = "i";
  item["category-name"] = diagnostics::name(diagnostics::Category::Textual);
  item["severity"] = "error";
  item["code"] = std::move(code);
  item["sentence"] = nullptr;
  item["span"] = span_json({});
  item["quote"] = "";
  item["message"] = std::move(message);
  item["pattern"] = nullptr;
  item["countermodel"] = nullptr;
  item["hint"] = nullptr;
  item["trace"] = Json::array();
  item["refines"] = nullptr;
  Json j;
  j["schema"] = kSchemaVersion;
  j["status"] = diagnostics::to_string(diagnostics::DocumentStatus::Rejected);
  j["sentence-verdicts"] = Json::array();
  j["items"] = Json::array({std::move(item)});
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t n;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c >> 5) == 0x6) {
      n = 1;
      cp = c & 0x1F;
    } else if ((c >> 4) == 0xE) {
      n = 2;
      cp = c & 0x0F;
    } else if ((c >> 3) == 0x1E) {
      n = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + n >= text.size()) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc >> 6) != 0x2) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((n == 1 && cp < 0x80) || (n == 2 && cp < 0x800) || (n == 3 && cp < 0x10000)) return false;
    if ((cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) return false;
    i += n + 1;
  }
  return true;
}

Verbosity parse_verbosity(std::string_view text) {
  if (text == "terse") return Verbosity::Terse;
  if (text == "explained") return Verbosity::Explained;
  throw std::invalid_argument("verbosity must be 'terse' or 'explained'");
}

}  // namespace proofcheck::service
