#pragma once

// Tokenizer for Python source held as data. Nothing here evaluates the code;
// the token stream feeds the syntax validator, the hint-comment scan and the
// structural similarity check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "methodolint/error.hpp"

namespace methodolint::python {

enum class TokenKind : std::uint8_t {
  Name,
  Number,
  String,
  Op,
  Comment,
  Newline,
  Indent,
  Dedent,
  EndMarker,
};

struct Token {
  TokenKind kind;
  std::string text;
  int line = 0;  // 1-based
  int col = 0;   // 0-based byte column
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : Error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  int line_;
  int col_;
};

namespace detail {

inline bool is_hard_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 35> kKeywords = {
      "False", "None",   "True",    "and",      "as",     "assert", "async",
      "await", "break",  "class",   "continue", "def",    "del",    "elif",
      "else",  "except", "finally", "for",      "from",   "global", "if",
      "import", "in",    "is",      "lambda",   "nonlocal", "not",  "or",
      "pass",  "raise",  "return",  "try",      "while",  "with",   "yield"};
  return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

inline bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

inline bool is_ident_char(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_hex(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

inline char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Returns true when `prefix` (already lowercased) is a legal string prefix.
inline bool valid_string_prefix(std::string_view prefix) {
  static constexpr std::string_view kPrefixes[] = {"",   "r",  "u",  "b",  "br",
                                                   "rb", "f",  "fr", "rf"};
  for (auto p : kPrefixes) {
    if (p == prefix) return true;
  }
  return false;
}

class Lexer {
 public:
  Lexer(std::string_view src, bool keep_comments) : src_(src), keep_comments_(keep_comments) {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  std::vector<Token> run() {
    indents_.push_back(0);
    bool at_line_start = true;
    bool line_has_content = false;

    while (pos_ < src_.size()) {
      if (at_line_start && brackets_.empty()) {
        at_line_start = false;
        if (!handle_indentation()) continue;  // blank or comment-only line
        line_has_content = true;
      }
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\f') {
        advance();
        continue;
      }
      if (c == '#') {
        lex_comment();
        continue;
      }
      if (c == '\\') {
        advance();
        if (pos_ < src_.size() && src_[pos_] == '\r') advance();
        if (pos_ >= src_.size()) fail("unexpected EOF after line continuation");
        if (src_[pos_] != '\n') fail("unexpected character after line continuation character");
        advance_newline();
        if (pos_ >= src_.size()) fail("unexpected EOF after line continuation");
        continue;
      }
      if (c == '\n' || c == '\r') {
        int l = line_, cl = col();
        if (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') advance();
        advance_newline();
        if (brackets_.empty()) {
          if (line_has_content) emit(TokenKind::Newline, "\n", l, cl);
          line_has_content = false;
          at_line_start = true;
        }
        continue;
      }
      line_has_content = true;
      lex_token();
    }

    if (!brackets_.empty()) {
      fail_at("unexpected EOF in multi-line statement ('" + std::string(1, brackets_.back().ch) +
                  "' was never closed)",
              brackets_.back().line, brackets_.back().col);
    }
    if (line_has_content) emit(TokenKind::Newline, "", line_, col());
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit(TokenKind::Dedent, "", line_, 0);
    }
    emit(TokenKind::EndMarker, "", line_, 0);
    return std::move(tokens_);
  }

 private:
  struct Bracket {
    char ch;
    int line;
    int col;
  };

  std::string_view src_;
  bool keep_comments_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
  std::vector<int> indents_;
  std::vector<Bracket> brackets_;
  std::vector<Token> tokens_;

  int col() const { return static_cast<int>(pos_ - line_start_); }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col()); }
  [[noreturn]] void fail_at(const std::string& msg, int line, int col) const {
    throw SyntaxError(msg, line, col);
  }

  void advance() { ++pos_; }

  void advance_newline() {
    ++pos_;
    ++line_;
    line_start_ = pos_;
  }

  void emit(TokenKind kind, std::string text, int line, int col) {
    tokens_.push_back(Token{kind, std::move(text), line, col});
  }

  // Measures indentation at the start of a logical line. Returns false if the
  // line is blank or holds only a comment (no INDENT/DEDENT bookkeeping then).
  bool handle_indentation() {
    int width = 0;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ') {
        ++width;
      } else if (c == '\t') {
        width = (width / 8 + 1) * 8;
      } else if (c == '\f') {
        width = 0;
      } else {
        break;
      }
      advance();
    }
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    if (c == '#') {
      lex_comment();
      return false;
    }
    if (c == '\n' || c == '\r') return false;
    if (width > indents_.back()) {
      indents_.push_back(width);
      emit(TokenKind::Indent, "", line_, 0);
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        emit(TokenKind::Dedent, "", line_, 0);
      }
      if (width != indents_.back()) fail("unindent does not match any outer indentation level");
    }
    return true;
  }

  void lex_comment() {
    std::size_t start = pos_;
    int cl = col();
    while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') advance();
    if (keep_comments_) emit(TokenKind::Comment, std::string(src_.substr(start, pos_ - start)), line_, cl);
  }

  void lex_token() {
    char c = src_[pos_];
    auto uc = static_cast<unsigned char>(c);
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      lex_number();
      return;
    }
    if (is_ident_start(uc)) {
      std::size_t start = pos_;
      int cl = col();
      while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_]))) advance();
      std::string word(src_.substr(start, pos_ - start));
      if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'') && word.size() <= 2) {
        std::string prefix;
        for (char ch : word) prefix += lower(ch);
        if (valid_string_prefix(prefix)) {
          pos_ = start;
          lex_string(word.size(), cl);
          return;
        }
      }
      emit(TokenKind::Name, std::move(word), line_, cl);
      return;
    }
    if (c == '"' || c == '\'') {
      lex_string(0, col());
      return;
    }
    lex_operator();
  }

  void lex_number() {
    std::size_t start = pos_;
    int cl = col();
    auto digits = [&](auto pred) {
      bool any = false;
      while (pos_ < src_.size()) {
        char ch = src_[pos_];
        if (pred(ch)) {
          any = true;
          advance();
        } else if (ch == '_' && any && pos_ + 1 < src_.size() && pred(src_[pos_ + 1])) {
          advance();
        } else {
          break;
        }
      }
      return any;
    };
    auto dec = [](char ch) { return is_digit(ch); };

    char c = src_[pos_];
    bool is_float = false;
    if (c == '0' && pos_ + 1 < src_.size() &&
        std::string_view("xXoObB").find(src_[pos_ + 1]) != std::string_view::npos) {
      char base = lower(src_[pos_ + 1]);
      pos_ += 2;
      if (pos_ < src_.size() && src_[pos_] == '_') advance();
      bool ok = false;
      if (base == 'x') ok = digits([](char ch) { return is_hex(ch); });
      if (base == 'o') ok = digits([](char ch) { return ch >= '0' && ch <= '7'; });
      if (base == 'b') ok = digits([](char ch) { return ch == '0' || ch == '1'; });
      if (!ok) fail("invalid number literal");
    } else {
      if (c != '.') {
        digits(dec);
        std::string_view intpart = src_.substr(start, pos_ - start);
        bool leading_zero = intpart.size() > 1 && intpart[0] == '0' &&
                            intpart.find_first_not_of("0_") != std::string_view::npos;
        if (leading_zero && (pos_ >= src_.size() ||
                             std::string_view(".eEjJ").find(src_[pos_]) == std::string_view::npos)) {
          fail("leading zeros in decimal integer literals are not permitted");
        }
      }
      if (pos_ < src_.size() && src_[pos_] == '.') {
        is_float = true;
        advance();
        digits(dec);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        advance();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
        if (!digits(dec)) {
          pos_ = save;
        } else {
          is_float = true;
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) advance();
    }
    (void)is_float;
    if (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_]))) {
      fail("invalid decimal literal");
    }
    emit(TokenKind::Number, std::string(src_.substr(start, pos_ - start)), line_, cl);
  }

  // pos_ points at the prefix start (or the quote when prefix_len == 0).
  void lex_string(std::size_t prefix_len, int cl) {
    std::size_t start = pos_;
    int start_line = line_;
    std::string prefix;
    for (std::size_t i = 0; i < prefix_len; ++i) prefix += lower(src_[pos_ + i]);
    pos_ += prefix_len;
    bool raw = prefix.find('r') != std::string::npos;
    bool fstr = prefix.find('f') != std::string::npos;
    bool bytes = prefix.find('b') != std::string::npos;
    scan_string_body(raw, fstr, bytes, start_line, cl);
    emit(TokenKind::String, std::string(src_.substr(start, pos_ - start)), start_line, cl);
  }

  // pos_ at the opening quote. Consumes through the closing quote.
  // pos_ at the character following a backslash in a non-raw literal.
  void check_escape(bool bytes, int line, int col) {
    char e = src_[pos_];
    advance();
    auto need_hex = [&](int n, const char* what) {
      for (int i = 0; i < n; ++i) {
        if (pos_ >= src_.size() || !is_hex(src_[pos_])) {
          fail_at(std::string("(unicode error) truncated ") + what + " escape", line, col);
        }
        advance();
      }
    };
    if (e == 'x') {
      need_hex(2, "\\xXX");
    } else if (!bytes && e == 'u') {
      need_hex(4, "\\uXXXX");
    } else if (!bytes && e == 'U') {
      need_hex(8, "\\UXXXXXXXX");
    } else if (!bytes && e == 'N') {
      if (pos_ >= src_.size() || src_[pos_] != '{') {
        fail_at("(unicode error) malformed \\N character escape", line, col);
      }
      while (pos_ < src_.size() && src_[pos_] != '}' && src_[pos_] != '\n') advance();
      if (pos_ >= src_.size() || src_[pos_] != '}') {
        fail_at("(unicode error) malformed \\N character escape", line, col);
      }
      advance();
    }
  }

  void scan_string_body(bool raw, bool fstr, bool bytes, int start_line, int start_col) {
    char q = src_[pos_];
    bool triple = pos_ + 2 < src_.size() && src_[pos_ + 1] == q && src_[pos_ + 2] == q;
    pos_ += triple ? 3 : 1;
    int field_depth = 0;
    std::vector<char> field_stack;
    while (true) {
      if (pos_ >= src_.size()) {
        fail_at(triple ? "unterminated triple-quoted string literal" : "unterminated string literal",
                start_line, start_col);
      }
      char c = src_[pos_];
      if (field_depth == 0) {
        if (c == q) {
          if (!triple) {
            advance();
            return;
          }
          if (pos_ + 2 < src_.size() && src_[pos_ + 1] == q && src_[pos_ + 2] == q) {
            pos_ += 3;
            return;
          }
          advance();
          continue;
        }
        if (c == '\\') {
          advance();
          if (pos_ >= src_.size()) continue;
          if (src_[pos_] == '\n') {
            advance_newline();
          } else if (src_[pos_] == '\r') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') advance();
            advance_newline();
          } else if (!raw) {
            check_escape(bytes, start_line, start_col);
          } else {
            advance();
          }
          continue;
        }
        if (c == '\n' || c == '\r') {
          if (!triple) fail_at("unterminated string literal", start_line, start_col);
          if (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') advance();
          advance_newline();
          continue;
        }
        if (fstr && c == '{') {
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '{') {
            pos_ += 2;
            continue;
          }
          advance();
          field_depth = 1;
          field_stack.assign(1, '{');
          continue;
        }
        if (fstr && c == '}') {
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '}') {
            pos_ += 2;
            continue;
          }
          fail("f-string: single '}' is not allowed");
        }
        advance();
        continue;
      }

      // Inside an f-string replacement field: a nested expression that may
      // contain brackets, strings and a format spec with nested fields.
      // `field_stack` holds the open brackets; a '{' entry flips to spec mode
      // once its top-level ':' is seen.
      bool in_spec = !field_stack.empty() && field_stack.back() == ':';
      if (in_spec) {
        if (c == '{') {
          field_stack.push_back('{');
          ++field_depth;
          advance();
        } else if (c == '}') {
          field_stack.pop_back();
          --field_depth;
          advance();
        } else if (c == '\n' || c == '\r') {
          if (!triple) fail_at("unterminated string literal", start_line, start_col);
          if (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') advance();
          advance_newline();
        } else {
          advance();
        }
        continue;
      }
      if (c == '{' || c == '[' || c == '(') {
        if (c == '{') ++field_depth;
        field_stack.push_back(c);
        advance();
      } else if (c == '}' || c == ']' || c == ')') {
        if (!field_stack.empty()) field_stack.pop_back();
        if (c == '}') --field_depth;
        advance();
      } else if (c == ':' && !field_stack.empty() && field_stack.back() == '{' &&
                 !(pos_ + 1 < src_.size() && src_[pos_ + 1] == '=')) {
        field_stack.back() = ':';
        advance();
      } else if (c == '\'' || c == '"') {
        std::size_t p = pos_;
        std::size_t pre = 0;
        while (p > 0 && pre < 2 && is_ident_char(static_cast<unsigned char>(src_[p - 1]))) {
          --p;
          ++pre;
        }
        bool nested_f = false;
        bool nested_raw = false;
        bool nested_bytes = false;
        for (std::size_t i = p; i < pos_; ++i) {
          nested_f |= lower(src_[i]) == 'f';
          nested_raw |= lower(src_[i]) == 'r';
          nested_bytes |= lower(src_[i]) == 'b';
        }
        scan_string_body(nested_raw, nested_f, nested_bytes, line_, col());
      } else if (c == '\n' || c == '\r') {
        if (!triple) fail_at("unterminated string literal", start_line, start_col);
        if (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') advance();
        advance_newline();
      } else {
        advance();
      }
    }
  }

  void lex_operator() {
    static constexpr std::string_view kThree[] = {"**=", "//=", ">>=", "<<=", "...", "!="};
    static constexpr std::string_view kTwo[] = {"->", ":=", "==", "!=", "<=", ">=", "**", "//",
                                                "<<", ">>", "+=", "-=", "*=", "/=", "%=", "&=",
                                                "|=", "^=", "@="};
    static constexpr std::string_view kOne = "()[]{}:,;.+-*/%&|^~<>=@";
    int cl = col();
    std::string_view rest = src_.substr(pos_);
    for (auto op : kThree) {
      if (rest.substr(0, op.size()) == op) {
        pos_ += op.size();
        emit(TokenKind::Op, std::string(op), line_, cl);
        return;
      }
    }
    for (auto op : kTwo) {
      if (rest.substr(0, op.size()) == op) {
        pos_ += op.size();
        emit(TokenKind::Op, std::string(op), line_, cl);
        return;
      }
    }
    char c = src_[pos_];
    if (kOne.find(c) == std::string_view::npos) {
      fail(std::string("invalid character '") + c + "'");
    }
    if (c == '(' || c == '[' || c == '{') {
      brackets_.push_back({c, line_, cl});
    } else if (c == ')' || c == ']' || c == '}') {
      char open = c == ')' ? '(' : (c == ']' ? '[' : '{');
      if (brackets_.empty()) fail(std::string("unmatched '") + c + "'");
      if (brackets_.back().ch != open) {
        fail(std::string("closing parenthesis '") + c + "' does not match opening parenthesis '" +
             brackets_.back().ch + "'");
      }
      brackets_.pop_back();
    }
    advance();
    emit(TokenKind::Op, std::string(1, c), line_, cl);
  }
};

}  // namespace detail

/// Splits Python source into tokens, including NEWLINE/INDENT/DEDENT layout
/// tokens. Comments are kept unless `keep_comments` is false. Throws
/// SyntaxError on lexical errors (unterminated strings, bad indentation,
/// unbalanced brackets, stray characters).
inline std::vector<Token> tokenize(std::string_view source, bool keep_comments = true) {
  return detail::Lexer(source, keep_comments).run();
}

}  // namespace methodolint::python
