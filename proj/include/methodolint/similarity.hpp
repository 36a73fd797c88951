#pragma once

// Structural similarity between Python files: identifiers become ID, string
// and number literals become LIT, comments vanish, and the Jaccard index is
// taken over the sets of 5-token shingles.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "methodolint/python/lexer.hpp"

namespace methodolint {

inline constexpr std::size_t kShingleSize = 5;

/// Normalized token stream. Keywords and operators are kept verbatim;
/// layout tokens are kept as NEWLINE/INDENT/DEDENT so block structure counts.
/// Throws python::SyntaxError if the source does not tokenize.
inline std::vector<std::string> normalized_tokens(std::string_view source) {
  using python::TokenKind;
  std::vector<std::string> out;
  for (const auto& t : python::tokenize(source, /*keep_comments=*/false)) {
    switch (t.kind) {
      case TokenKind::Name:
        out.push_back(python::detail::is_hard_keyword(t.text) ? t.text : "ID");
        break;
      case TokenKind::Number:
      case TokenKind::String:
        out.push_back("LIT");
        break;
      case TokenKind::Op:
        out.push_back(t.text);
        break;
      case TokenKind::Newline:
        out.push_back("NEWLINE");
        break;
      case TokenKind::Indent:
        out.push_back("INDENT");
        break;
      case TokenKind::Dedent:
        out.push_back("DEDENT");
        break;
      case TokenKind::Comment:
      case TokenKind::EndMarker:
        break;
    }
  }
  return out;
}

/// Sorted, de-duplicated shingles of `k` consecutive tokens. A stream shorter
/// than `k` (but non-empty) forms a single shingle.
inline std::vector<std::string> shingles(const std::vector<std::string>& tokens, std::size_t k = kShingleSize) {
  std::vector<std::string> out;
  if (tokens.empty()) return out;
  std::size_t width = std::min(k, tokens.size());
  out.reserve(tokens.size() - width + 1);
  for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
    std::string s;
    for (std::size_t j = i; j < i + width; ++j) {
      if (j > i) s += '\x1f';
      s += tokens[j];
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Jaccard index of two sorted shingle sets; two empty sets are identical.
inline double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double structural_similarity(std::string_view source_a, std::string_view source_b) {
  return jaccard(shingles(normalized_tokens(source_a)), shingles(normalized_tokens(source_b)));
}

struct SimilarityScore {
  std::string file_a;
  std::string file_b;
  double score = 0.0;
};

}  // namespace methodolint
