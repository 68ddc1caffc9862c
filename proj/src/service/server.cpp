#include <httplib.h>

#include "proofcheck/engine.hpp"
#include "proofcheck/service.hpp"

namespace proofcheck::service {

namespace {

HttpResponse json_response(int status, const Json& j) { return {status, dump(j)}; }

HttpResponse error_response(int status, const std::string& message) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["error"] = message;
  return json_response(status, j);
}

// Shared guard for submissions: size first, then encoding.
std::optional<HttpResponse> guard(std::string_view body) {
  if (body.size() > kMaxBodyBytes)
    return json_response(422, rejected_submission("oversize-submission", "The submission exceeds 64 KiB."));
  if (!valid_utf8(body))
    return json_response(422, rejected_submission("invalid-utf8", "The submission is not valid UTF-8."));
  return std::nullopt;
}

std::optional<Json> parse_object(std::string_view body, std::string& error) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    error = "malformed JSON";
    return std::nullopt;
  }
  if (!j.is_object()) {
    error = "the request must be a JSON object";
    return std::nullopt;
  }
  return j;
}

}  // namespace

Api::Api(std::vector<Exercise> bank) : bank_(std::move(bank)) {}

const Exercise* Api::find(std::string_view id) const {
  for (const auto& e : bank_)
    if (e.id == id) return &e;
  return nullptr;
}

HttpResponse Api::check(std::string_view body) const {
  if (auto rejected = guard(body)) return *rejected;
  std::string error;
  auto request = parse_object(body, error);
  if (!request) return error_response(400, error);
  if (!request->contains("text") || !(*request)["text"].is_string())
    return error_response(400, "'text' must be a string");
  auto verbosity = diagnostics::Verbosity::Terse;
  if (request->contains("verbosity")) {
    const auto& v = (*request)["verbosity"];
    if (!v.is_string()) return error_response(400, "'verbosity' must be a string");
    try {
      verbosity = parse_verbosity(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      return error_response(400, e.what());
    }
  }
  if (request->contains("exercise-id") && !(*request)["exercise-id"].is_null()) {
    const auto& id = (*request)["exercise-id"];
    if (!id.is_string()) return error_response(400, "'exercise-id' must be a string");
    if (!find(id.get<std::string>())) return error_response(404, "unknown exercise '" + id.get<std::string>() + "'");
  }
  const std::string text = (*request)["text"].get<std::string>();
  return json_response(200, check_response(engine::check_text(text), text, verbosity));
}

HttpResponse Api::exercises() const {
  Json list = Json::array();
  for (const auto& e : bank_) list.push_back(exercise_json(e, false));
  Json j;
  j["schema"] = kSchemaVersion;
  j["exercises"] = std::move(list);
  return json_response(200, j);
}

HttpResponse Api::exercise(std::string_view id) const {
  const Exercise* e = find(id);
  if (!e) return error_response(404, "unknown exercise '" + std::string(id) + "'");
  Json j;
  j["schema"] = kSchemaVersion;
  j["exercise"] = exercise_json(*e, true);
  return json_response(200, j);
}

HttpResponse Api::predict_check(std::string_view body) const {
  if (auto rejected = guard(body)) return *rejected;
  std::string error;
  auto request = parse_object(body, error);
  if (!request) return error_response(400, error);

  std::string text;
  if (request->contains("exercise-id") && !(*request)["exercise-id"].is_null()) {
    const auto& id = (*request)["exercise-id"];
    if (!id.is_string()) return error_response(400, "'exercise-id' must be a string");
    const Exercise* e = find(id.get<std::string>());
    if (!e) return error_response(404, "unknown exercise '" + id.get<std::string>() + "'");
    if (e->mode != Mode::PredictFeedback) return error_response(400, "exercise '" + e->id + "' is not a predict-feedback exercise");
    text = e->document();
  } else if (request->contains("text") && (*request)["text"].is_string()) {
    text = (*request)["text"].get<std::string>();
  } else {
    return error_response(400, "give 'exercise-id' or 'text'");
  }
  const Json predictions = request->contains("predictions") ? (*request)["predictions"] : Json::object();
  try {
    return json_response(200, predict_diff(engine::check_text(text), predictions));
  } catch (const std::invalid_argument& e) {
    return error_response(400, e.what());
  }
}

struct Server::Impl {
  explicit Impl(Api a) : api(std::move(a)) {}
  Api api;
  httplib::Server http;
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, "application/json; charset=utf-8");
}

}  // namespace

Server::Server(Api api) : impl_(std::make_unique<Impl>(std::move(api))) {
  auto& http = impl_->http;
  const Api& a = impl_->api;
  // Bodies above the guard still reach the handlers so they get the 422 answer.
  http.set_payload_max_length(16 * kMaxBodyBytes);
  http.Post("/api/check", [&a](const httplib::Request& req, httplib::Response& res) { reply(res, a.check(req.body)); });
  http.Post("/api/predict-check",
            [&a](const httplib::Request& req, httplib::Response& res) { reply(res, a.predict_check(req.body)); });
  http.Get("/api/exercises", [&a](const httplib::Request&, httplib::Response& res) { reply(res, a.exercises()); });
  http.Get(R"(/api/exercises/([^/]+))", [&a](const httplib::Request& req, httplib::Response& res) {
    reply(res, a.exercise(req.matches[1].str()));
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind to " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port))
    throw std::runtime_error("cannot bind to " + host + ":" + std::to_string(port));
  return port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace proofcheck::service
