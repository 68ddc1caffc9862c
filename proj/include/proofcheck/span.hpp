#pragma once

#include <cstddef>
#include <string_view>

namespace proofcheck {

/// Half-open byte range [begin, end) into a source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }

  std::string_view slice(std::string_view source) const {
    if (begin >= source.size()) return {};
    return source.substr(begin, end - begin);
  }

  friend bool operator==(const Span&, const Span&) = default;
};

inline Span join(const Span& a, const Span& b) {
  return Span{a.begin < b.begin ? a.begin : b.begin, a.end > b.end ? a.end : b.end};
}

}  // namespace proofcheck
