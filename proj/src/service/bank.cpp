#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "proofcheck/engine.hpp"
#include "proofcheck/service.hpp"

namespace proofcheck::service {

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::NumberTheory: return "number-theory";
    case Domain::SetTheory: return "set-theory";
    case Domain::Propositional: return "propositional";
  }
  return "?";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Prove: return "prove";
    case Mode::PredictFeedback: return "predict-feedback";
    case Mode::FixTheProof: return "fix-the-proof";
  }
  return "?";
}

std::string Exercise::document() const {
  if (attachment.empty()) return statement;
  std::string out = statement;
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out + attachment;
}

namespace {

const std::set<std::string> kKeys = {"id", "domain", "mode", "statement", "attachment"};

std::string scalar(const YAML::Node& entry, const std::string& key, const std::string& id, bool required) {
  const YAML::Node node = entry[key];
  if (!node) {
    if (required) throw BankParseError(id, "missing field '" + key + "'");
    return {};
  }
  if (!node.IsScalar()) throw BankParseError(id, "field '" + key + "' must be a string");
  return node.as<std::string>();
}

Domain domain_of(const std::string& text, const std::string& id) {
  for (auto d : {Domain::NumberTheory, Domain::SetTheory, Domain::Propositional})
    if (to_string(d) == text) return d;
  throw BankParseError(id, "unknown domain '" + text + "'");
}

Mode mode_of(const std::string& text, const std::string& id) {
  for (auto m : {Mode::Prove, Mode::PredictFeedback, Mode::FixTheProof})
    if (to_string(m) == text) return m;
  throw BankParseError(id, "unknown mode '" + text + "'");
}

void validate(const Exercise& e) {
  const auto header = cnl::parse_document(e.statement);
  if (header.has_proof_body) throw BankParseError(e.id, "the statement must not contain a proof");
  if (!header.goal) throw BankParseError(e.id, "the statement has no goal");
  for (const auto& d : header.diagnostics) {
    if (d.warning || d.kind == cnl::ErrorKind::MissingProofBody) continue;
    throw BankParseError(e.id, "the statement does not parse: " + d.message);
  }
  if (e.mode == Mode::Prove) {
    if (!e.attachment.empty()) throw BankParseError(e.id, "a prove exercise takes no attachment");
    return;
  }
  if (e.attachment.empty()) throw BankParseError(e.id, "this mode needs an attachment");
  const auto doc = cnl::parse_document(e.document());
  if (!doc.has_proof_body) throw BankParseError(e.id, "the attachment has no proof body");
  if (e.mode == Mode::FixTheProof &&
      engine::check_document(doc).status == diagnostics::DocumentStatus::Accepted)
    throw BankParseError(e.id, "the faulty proof of a fix-the-proof exercise is accepted by the checker");
}

}  // namespace

std::vector<Exercise> parse_bank(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw BankParseError("", std::string("invalid YAML: ") + e.what());
  }
  std::vector<Exercise> bank;
  if (!root || root.IsNull()) return bank;
  if (!root.IsMap()) throw BankParseError("", "the top level must be a mapping with key 'exercises'");
  for (const auto& kv : root)
    if (kv.first.as<std::string>() != "exercises")
      throw BankParseError("", "unknown top-level key '" + kv.first.as<std::string>() + "'");
  const YAML::Node list = root["exercises"];
  if (!list || list.IsNull()) return bank;
  if (!list.IsSequence()) throw BankParseError("", "'exercises' must be a list");

  std::set<std::string> ids;
  std::size_t position = 0;
  for (const auto& entry : list) {
    ++position;
    const std::string where = "#" + std::to_string(position);
    if (!entry.IsMap()) throw BankParseError(where, "each exercise must be a mapping");
    Exercise e;
    e.id = scalar(entry, "id", where, true);
    if (e.id.empty()) throw BankParseError(where, "empty id");
    for (const auto& kv : entry)
      if (!kKeys.count(kv.first.as<std::string>()))
        throw BankParseError(e.id, "unknown field '" + kv.first.as<std::string>() + "'");
    if (!ids.insert(e.id).second) throw BankParseError(e.id, "duplicate id");
    e.domain = domain_of(scalar(entry, "domain", e.id, true), e.id);
    e.mode = mode_of(scalar(entry, "mode", e.id, true), e.id);
    e.statement = scalar(entry, "statement", e.id, true);
    e.attachment = scalar(entry, "attachment", e.id, false);
    validate(e);
    bank.push_back(std::move(e));
  }
  return bank;
}

std::vector<Exercise> load_bank(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bank(ss.str());
}

Json exercise_json(const Exercise& e, bool with_attachment) {
  Json j;
  j["id"] = e.id;
  j["domain"] = to_string(e.domain);
  j["mode"] = to_string(e.mode);
  j["statement"] = e.statement;
  if (with_attachment) j["attachment"] = e.attachment.empty() ? Json(nullptr) : Json(e.attachment);
  return j;
}

namespace {

std::vector<std::string> normalized(const Json& prediction) {
  std::set<std::string> out;
  auto add = [&](const Json& v) {
    if (!v.is_string()) throw std::invalid_argument("a prediction is \"ok\" or a list of categories i..v");
    const auto s = v.get<std::string>();
    if (s == "ok") return;
    if (s != "i" && s != "ii" && s != "iii" && s != "iv" && s != "v")
      throw std::invalid_argument("unknown category '" + s + "'");
    out.insert(s);
  };
  if (prediction.is_array()) {
    for (const auto& v : prediction) add(v);
  } else {
    add(prediction);
  }
  return {out.begin(), out.end()};
}

Json labels(const std::vector<std::string>& cats) {
  if (cats.empty()) return Json::array({"ok"});
  return Json(cats);
}

}  // namespace

Json predict_diff(const diagnostics::Report& report, const Json& predictions) {
  if (!predictions.is_object()) throw std::invalid_argument("'predictions' must be an object keyed by sentence index");
  for (const auto& [key, value] : predictions.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("prediction key '" + key + "' is not a sentence index");
    }
    if (idx >= report.sentences.size()) throw std::invalid_argument("no sentence " + key);
    normalized(value);
  }
  Json diff = Json::array();
  std::size_t correct = 0;
  for (const auto& s : report.sentences) {
    std::set<std::string> actual_set;
    for (const auto& item : report.items)
      if (item.sentence == s.index && item.severity == diagnostics::Severity::Error)
        actual_set.insert(std::string(diagnostics::roman(item.category)));
    const std::vector<std::string> actual(actual_set.begin(), actual_set.end());
    const std::string key = std::to_string(s.index);
    const auto predicted = predictions.contains(key) ? normalized(predictions[key]) : std::vector<std::string>{};
    if (predicted == actual) {
      ++correct;
      continue;
    }
    diff.push_back(Json{{"sentence", s.index}, {"predicted", labels(predicted)}, {"actual", labels(actual)}});
  }
  Json j;
  j["schema"] = kSchemaVersion;
  j["status"] = diagnostics::to_string(report.status);
  j["correct"] = correct;
  j["total"] = report.sentences.size();
  j["diff"] = std::move(diff);
  return j;
}

}  // namespace proofcheck::service
