// Command-line front end: check proof files, validate banks, serve the API.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "proofcheck/engine.hpp"
#include "proofcheck/service.hpp"

using namespace proofcheck;

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.remove_suffix(1);
  return s;
}

constexpr int kAccepted = 0;
constexpr int kRejected = 1;
constexpr int kFailure = 2;  // IO errors, invalid input files, usage errors

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report(const std::string& text, const std::string& format, diagnostics::Verbosity verbosity) {
  const auto result = engine::check_text(text);
  if (format == "json") {
    std::cout << service::dump(service::check_response(result, text, verbosity));
  } else {
    std::cout << diagnostics::render_feedback(result, text, verbosity).to_text();
  }
  return result.status == diagnostics::DocumentStatus::Accepted ? kAccepted : kRejected;
}

service::Server* running = nullptr;

void on_signal(int) {
  if (running) running->stop();
}

int default_port() {
  if (const char* env = std::getenv("PROOFCHECK_PORT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring PROOFCHECK_PORT='" << env << "'\n";
    }
  }
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks proofs written in a controlled natural language."};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::string verbosity = "terse";
  auto* check = app.add_subcommand("check", "Check a proof file; exit 0 if accepted, 1 if rejected, 2 on errors.");
  check->add_option("file", file, "Proof text")->required();
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  check->add_option("--verbosity", verbosity, "Feedback detail")->check(CLI::IsMember({"terse", "explained"}));

  int port = default_port();
  std::string host = "127.0.0.1";
  std::string bank_path;
  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service.");
  serve->add_option("--port", port, "Port (default: $PROOFCHECK_PORT or 8080)");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--bank", bank_path, "Exercise bank (YAML)");

  auto* bank = app.add_subcommand("bank", "Exercise bank tools.");
  bank->require_subcommand(1);
  std::string validate_path;
  auto* validate = bank->add_subcommand("validate", "Validate an exercise bank.");
  validate->add_option("file", validate_path, "Bank file")->required();

  std::string exercise_id;
  std::string answer_path;
  std::string exercise_bank;
  auto* exercise = app.add_subcommand("exercise", "Show an exercise, or check an answer to it.");
  exercise->add_option("id", exercise_id, "Exercise id")->required();
  exercise->add_option("--bank", exercise_bank, "Exercise bank (YAML)")->required();
  exercise->add_option("--answer", answer_path,
                       "Proof text (prove, fix-the-proof) or JSON predictions (predict-feedback)");
  exercise->add_option("--verbosity", verbosity, "Feedback detail")->check(CLI::IsMember({"terse", "explained"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kFailure;
  }
  const auto level = service::parse_verbosity(verbosity);

  if (*check) {
    const auto text = read_file(file);
    if (!text) {
      std::cerr << "proofcheck: cannot read " << file << "\n";
      return kFailure;
    }
    return report(*text, format, level);
  }

  if (*validate) {
    try {
      const auto exercises = service::load_bank(validate_path);
      std::cout << "ok: " << exercises.size() << (exercises.size() == 1 ? " exercise\n" : " exercises\n");
      return kAccepted;
    } catch (const service::BankParseError& e) {
      std::cerr << "invalid bank: " << e.what() << "\n";
      return kRejected;
    } catch (const std::exception& e) {
      std::cerr << "proofcheck: " << e.what() << "\n";
      return kFailure;
    }
  }

  if (*exercise) {
    std::vector<service::Exercise> exercises;
    try {
      exercises = service::load_bank(exercise_bank);
    } catch (const std::exception& e) {
      std::cerr << "proofcheck: " << e.what() << "\n";
      return kFailure;
    }
    const service::Exercise* found = nullptr;
    for (const auto& e : exercises)
      if (e.id == exercise_id) found = &e;
    if (!found) {
      std::cerr << "proofcheck: no exercise '" << exercise_id << "'\n";
      return kFailure;
    }
    if (answer_path.empty()) {
      std::cout << "[" << service::to_string(found->mode) << ", " << service::to_string(found->domain) << "]\n"
                << trimmed(found->statement) << "\n";
      if (!found->attachment.empty()) std::cout << "\n" << trimmed(found->attachment) << "\n";
      return kAccepted;
    }
    const auto answer = read_file(answer_path);
    if (!answer) {
      std::cerr << "proofcheck: cannot read " << answer_path << "\n";
      return kFailure;
    }
    if (found->mode == service::Mode::PredictFeedback) {
      const auto predictions = service::Json::parse(*answer, nullptr, false);
      if (predictions.is_discarded()) {
        std::cerr << "proofcheck: predictions must be JSON\n";
        return kFailure;
      }
      try {
        const auto diff = service::predict_diff(engine::check_text(found->document()), predictions);
        std::cout << service::dump(diff);
        return diff["diff"].empty() ? kAccepted : kRejected;
      } catch (const std::invalid_argument& e) {
        std::cerr << "proofcheck: " << e.what() << "\n";
        return kFailure;
      }
    }
    // prove and fix-the-proof: the answer is a complete text
    return report(*answer, "text", level);
  }

  if (*serve) {
    std::vector<service::Exercise> exercises;
    if (!bank_path.empty()) {
      try {
        exercises = service::load_bank(bank_path);
      } catch (const std::exception& e) {
        std::cerr << "proofcheck: " << e.what() << "\n";
        return kFailure;
      }
    }
    service::Server server{service::Api(std::move(exercises))};
    try {
      port = server.bind(host, port);
    } catch (const std::exception& e) {
      std::cerr << "proofcheck: " << e.what() << "\n";
      return kFailure;
    }
    running = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on http://" << host << ":" << port << "\n";
    server.listen();
    running = nullptr;
    return kAccepted;
  }
  return kFailure;
}
