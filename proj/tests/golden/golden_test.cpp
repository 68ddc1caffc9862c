// Compares the explained JSON response for every corpus document and every
// mutation with the files in tests/golden. UPDATE_GOLDEN=1 rewrites them.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "oracles.hpp"
#include "proofcheck/engine.hpp"
#include "proofcheck/service.hpp"

namespace fs = std::filesystem;
using namespace proofcheck;

namespace {

std::string respond(const std::string& text) {
  return service::dump(service::check_response(engine::check_text(text), text, diagnostics::Verbosity::Explained));
}

}  // namespace

int main() {
  const bool update = std::getenv("UPDATE_GOLDEN") != nullptr;
  std::vector<std::pair<std::string, std::string>> docs;  // golden name, text
  for (const auto& entry : fs::directory_iterator(PROOFCHECK_CORPUS_DIR))
    if (entry.path().extension() == ".txt") docs.emplace_back(entry.path().stem().string(), oracle::read_file(entry.path().string()));
  for (const auto& m : oracle::load_mutations(PROOFCHECK_CORPUS_DIR)) docs.emplace_back("mutation-" + m.id, m.text);
  std::sort(docs.begin(), docs.end());

  int failures = 0;
  for (const auto& [name, text] : docs) {
    const fs::path path = fs::path(PROOFCHECK_GOLDEN_DIR) / (name + ".json");
    const std::string actual = respond(text);
    if (update) {
      std::ofstream(path, std::ios::binary) << actual;
      continue;
    }
    if (!fs::exists(path)) {
      std::cout << "MISSING " << path.string() << "\n";
      ++failures;
      continue;
    }
    if (oracle::read_file(path.string()) != actual) {
      std::cout << "DIFFERS " << name << "\n";
      ++failures;
    } else if (respond(text) != actual) {
      std::cout << "UNSTABLE " << name << "\n";
      ++failures;
    }
  }
  std::cout << docs.size() - static_cast<std::size_t>(failures) << " of " << docs.size() << " golden files match"
            << (update ? " (updated)" : "") << "\n";
  return failures == 0 ? 0 : 1;
}
