#include <array>
#include <cctype>

#include "proofcheck/cnl.hpp"

namespace proofcheck::cnl {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "word";
    case TokenKind::Symbol: return "symbol";
    case TokenKind::Number: return "number";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "?";
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSymbol: return "unknown-symbol";
    case ErrorKind::MalformedFormula: return "malformed-formula";
    case ErrorKind::NonprocessableSentence: return "nonprocessable-sentence";
    case ErrorKind::MissingProofBody: return "missing-proof-body";
    case ErrorKind::MissingGoal: return "missing-goal";
    case ErrorKind::MissingPeriod: return "missing-period";
    case ErrorKind::MissingQed: return "missing-qed";
    case ErrorKind::TextAfterQed: return "text-after-qed";
  }
  return "?";
}

ParseError::ParseError(Diagnostic diagnostic)
    : std::runtime_error(diagnostic.message), diagnostic_(std::move(diagnostic)) {}

namespace {

// Longest spellings first so that prefixes never shadow longer symbols.
constexpr std::array<std::string_view, 36> kSymbols = {
    "<->", "<=>", "->", "=>", "/\\", "\\/", "><", "!=",
    "∈",   "∉",   "¬",  "∧",  "∨",   "∩",   "∪",  "×",
    "⊂",   "⊆",   "→",  "⇒",  "↔",   "⇔",   "·",  "⋅",
    "−",   "≠",   "⊥",  "²",  "³",   "ε",   "+",  "-",
    "*",   "^",   "=",  "|",
};

constexpr std::array<std::string_view, 8> kSingleSymbols = {"(", ")", "!", "~", "&", "□", "∎", "∣"};

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

bool iequals_prefix(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) return false;
  return true;
}

// Attempts to read one token at `pos`; returns false if the character is not
// part of the alphabet.
bool read_token(std::string_view src, std::size_t& pos, const LexOptions& options, std::vector<Token>& out) {
  const std::size_t start = pos;
  const char c = src[pos];

  if (iequals_prefix(src, pos, "q.e.d")) {
    std::size_t after = pos + 5;
    if (after == src.size() || !is_letter(src[after])) {
      pos = after;
      out.push_back({TokenKind::Word, std::string(src.substr(start, 5)), {start, pos}});
      return true;
    }
  }

  if (is_letter(c)) {
    std::size_t end = pos;
    while (end < src.size() && is_letter(src[end])) ++end;
    if (end - pos == 1) {
      while (end < src.size() && (is_digit(src[end]) || src[end] == '\'')) ++end;
      out.push_back({TokenKind::Identifier, std::string(src.substr(pos, end - pos)), {pos, end}});
    } else {
      out.push_back({TokenKind::Word, std::string(src.substr(pos, end - pos)), {pos, end}});
    }
    pos = end;
    return true;
  }

  if (is_digit(c)) {
    std::size_t end = pos;
    while (end < src.size() && is_digit(src[end])) ++end;
    out.push_back({TokenKind::Number, std::string(src.substr(pos, end - pos)), {pos, end}});
    pos = end;
    return true;
  }

  if (c == '?' && options.schema_variables && pos + 1 < src.size() && is_letter(src[pos + 1])) {
    std::size_t end = pos + 1;
    while (end < src.size() && (is_letter(src[end]) || is_digit(src[end]))) ++end;
    out.push_back({TokenKind::Identifier, std::string(src.substr(pos, end - pos)), {pos, end}});
    pos = end;
    return true;
  }

  if (c == '.' || c == ',' || c == ':' || c == ';') {
    out.push_back({TokenKind::Punctuation, std::string(1, c), {pos, pos + 1}});
    ++pos;
    return true;
  }

  for (auto sym : kSymbols) {
    if (src.substr(pos, sym.size()) == sym) {
      pos += sym.size();
      out.push_back({TokenKind::Symbol, std::string(sym), {start, pos}});
      return true;
    }
  }
  for (auto sym : kSingleSymbols) {
    if (src.substr(pos, sym.size()) == sym) {
      pos += sym.size();
      out.push_back({TokenKind::Symbol, std::string(sym), {start, pos}});
      return true;
    }
  }
  return false;
}

}  // namespace

LexResult lex(std::string_view source, LexOptions options) {
  LexResult result;
  std::size_t pos = 0;
  while (pos < source.size()) {
    if (is_space(source[pos])) {
      ++pos;
      continue;
    }
    if (read_token(source, pos, options, result.tokens)) continue;

    // Maximal run of characters outside the alphabet.
    const std::size_t start = pos;
    while (pos < source.size() && !is_space(source[pos])) {
      std::vector<Token> probe;
      std::size_t p = pos;
      if (read_token(source, p, options, probe)) break;
      pos += utf8_length(static_cast<unsigned char>(source[pos]));
      if (pos > source.size()) pos = source.size();
    }
    Diagnostic d;
    d.kind = ErrorKind::UnknownSymbol;
    d.span = {start, pos};
    d.message = "unknown symbol '" + std::string(source.substr(start, pos - start)) + "'";
    result.errors.push_back(std::move(d));
  }
  return result;
}

std::vector<Token> tokenize(std::string_view source, LexOptions options) {
  auto result = lex(source, options);
  if (!result.errors.empty()) throw ParseError(result.errors.front());
  return std::move(result.tokens);
}

}  // namespace proofcheck::cnl
