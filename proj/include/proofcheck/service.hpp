#pragma once

// JSON wire format (schema "1"), the exercise bank and the HTTP service.
//
// Bank format: docs/bank-format.md.

#include <atomic>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "proofcheck/diagnostics.hpp"

namespace proofcheck::service {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::size_t kMaxBodyBytes = 64 * 1024;

// --- wire format ----------------------------------------------------------------

Json countermodel_json(const prover::Countermodel& cm);

/// CheckResponse for `source`. Identical for the CLI and the HTTP service.
Json check_response(const diagnostics::Report& report, std::string_view source,
                    diagnostics::Verbosity verbosity = diagnostics::Verbosity::Terse);

/// Response used for submissions that cannot be checked at all (oversize,
/// invalid UTF-8): one category-(i) item, no sentences.
Json rejected_submission(std::string code, std::string message);

/// Two-space indentation and a final newline; the golden files use this form.
std::string dump(const Json& j);

bool valid_utf8(std::string_view text);

/// "terse" or "explained"; throws std::invalid_argument otherwise.
diagnostics::Verbosity parse_verbosity(std::string_view text);

// --- exercise bank ----------------------------------------------------------------

enum class Domain { NumberTheory, SetTheory, Propositional };
enum class Mode { Prove, PredictFeedback, FixTheProof };

std::string_view to_string(Domain d);
std::string_view to_string(Mode m);

struct Exercise {
  std::string id;
  Domain domain = Domain::NumberTheory;
  Mode mode = Mode::Prove;
  std::string statement;   // CNL header: premises and goal
  std::string attachment;  // proof text for predict-feedback and fix-the-proof

  /// Statement followed by the attachment, as checked at load time.
  std::string document() const;
};

class BankParseError : public std::runtime_error {
 public:
  BankParseError(std::string id, std::string reason)
      : std::runtime_error((id.empty() ? std::string("bank") : "exercise '" + id + "'") + ": " + reason),
        id_(std::move(id)),
        reason_(std::move(reason)) {}
  const std::string& id() const { return id_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string id_;
  std::string reason_;
};

/// Parses and validates a whole bank; any invalid entry rejects the bank.
std::vector<Exercise> parse_bank(std::string_view yaml);
/// Throws std::runtime_error if the file cannot be read.
std::vector<Exercise> load_bank(const std::string& path);

Json exercise_json(const Exercise& e, bool with_attachment);

/// Per-sentence comparison of predicted and actual feedback categories.
/// `predictions` maps sentence indices (as strings) to "ok" or a list of
/// roman category labels. Sentences without a prediction count as "ok".
Json predict_diff(const diagnostics::Report& report, const Json& predictions);

// --- HTTP -------------------------------------------------------------------------------

struct HttpResponse {
  int status = 200;
  std::string body;
};

/// Request handlers, independent of any socket.
class Api {
 public:
  explicit Api(std::vector<Exercise> bank);

  HttpResponse check(std::string_view body) const;
  HttpResponse exercises() const;
  HttpResponse exercise(std::string_view id) const;
  HttpResponse predict_check(std::string_view body) const;

  const std::vector<Exercise>& bank() const { return bank_; }

 private:
  const Exercise* find(std::string_view id) const;

  std::vector<Exercise> bank_;
};

class Server {
 public:
  explicit Server(Api api);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace proofcheck::service
