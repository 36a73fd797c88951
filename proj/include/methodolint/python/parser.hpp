#pragma once

// Recursive-descent syntax validator for Python 3 source. It follows the
// CPython grammar closely enough to accept what `ast.parse` accepts and to
// reject the usual breakage (Python 2 prints, unbalanced blocks, assignment to
// calls, misplaced generator arguments). It builds no tree; only the shape of
// each expression is tracked so that assignment targets can be checked.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "methodolint/python/lexer.hpp"

namespace methodolint::python {

namespace detail {

enum class ExprKind { Name, Attribute, Subscript, Starred, Tuple, List, Call, Literal, Other };

struct Expr {
  ExprKind kind = ExprKind::Other;
  bool assignable = false;
  std::string_view what = "expression";
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  void parse_file() {
    while (!at(TokenKind::EndMarker)) {
      if (at(TokenKind::Newline)) {
        advance();
        continue;
      }
      statement();
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  // ---- token helpers ------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  bool at(TokenKind k) const { return peek().kind == k; }
  bool is_op(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == TokenKind::Op && peek(k).text == s;
  }
  bool is_kw(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == TokenKind::Name && peek(k).text == s;
  }
  bool is_name(std::size_t k = 0) const {
    return peek(k).kind == TokenKind::Name && !is_hard_keyword(peek(k).text);
  }
  void advance() {
    if (pos_ < toks_.size() - 1) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(msg, t.line, t.col);
  }
  [[noreturn]] void fail_unexpected() const {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Indent:
        fail("unexpected indent");
      case TokenKind::Dedent:
        fail("unexpected unindent");
      case TokenKind::Newline:
        fail("invalid syntax (unexpected end of line)");
      case TokenKind::EndMarker:
        fail("invalid syntax (unexpected end of file)");
      default:
        fail("invalid syntax near '" + t.text + "'");
    }
  }

  void expect_op(std::string_view s) {
    if (!is_op(s)) {
      if (at(TokenKind::Op) || at(TokenKind::Name) || at(TokenKind::Number) || at(TokenKind::String)) {
        fail("expected '" + std::string(s) + "' near '" + peek().text + "'");
      }
      fail_unexpected();
    }
    advance();
  }
  void expect_kw(std::string_view s) {
    if (!is_kw(s)) fail("expected '" + std::string(s) + "'");
    advance();
  }
  void expect_name() {
    if (!is_name()) fail_unexpected();
    advance();
  }
  void expect_newline() {
    if (!at(TokenKind::Newline)) fail_unexpected();
    advance();
  }

  bool starts_expression(std::size_t k = 0) const {
    const Token& t = peek(k);
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::String:
        return true;
      case TokenKind::Name:
        return !is_hard_keyword(t.text) || t.text == "lambda" || t.text == "not" ||
               t.text == "await" || t.text == "None" || t.text == "True" || t.text == "False";
      case TokenKind::Op:
        return t.text == "(" || t.text == "[" || t.text == "{" || t.text == "-" || t.text == "+" ||
               t.text == "~" || t.text == "*" || t.text == "...";
      default:
        return false;
    }
  }

  static Expr other(std::string_view what = "expression") { return Expr{ExprKind::Other, false, what}; }

  void require_target(const Expr& e, std::string_view verb = "assign to") const {
    if (!e.assignable) fail("cannot " + std::string(verb) + " " + std::string(e.what));
  }

  // ---- statements ---------------------------------------------------------

  void statement() {
    if (at(TokenKind::Indent)) fail("unexpected indent");
    if (at(TokenKind::Dedent)) fail("unexpected unindent");
    if (is_kw("if")) return if_stmt();
    if (is_kw("while")) return while_stmt();
    if (is_kw("for")) return for_stmt();
    if (is_kw("try")) return try_stmt();
    if (is_kw("with")) return with_stmt();
    if (is_kw("def")) return funcdef();
    if (is_kw("class")) return classdef();
    if (is_op("@")) return decorated();
    if (is_kw("async")) {
      advance();
      if (is_kw("def")) return funcdef();
      if (is_kw("for")) return for_stmt();
      if (is_kw("with")) return with_stmt();
      fail_unexpected();
    }
    if (is_kw("match") && try_match_stmt()) return;
    simple_stmts();
  }

  void simple_stmts() {
    simple_stmt();
    while (is_op(";")) {
      advance();
      if (at(TokenKind::Newline)) break;
      simple_stmt();
    }
    expect_newline();
  }

  void block() {
    if (at(TokenKind::Newline)) {
      advance();
      if (!at(TokenKind::Indent)) fail("expected an indented block");
      advance();
      do {
        statement();
      } while (!at(TokenKind::Dedent) && !at(TokenKind::EndMarker));
      if (at(TokenKind::Dedent)) advance();
      return;
    }
    simple_stmts();
  }

  void colon_block() {
    expect_op(":");
    block();
  }

  void if_stmt() {
    advance();
    named_expression();
    colon_block();
    while (is_kw("elif")) {
      advance();
      named_expression();
      colon_block();
    }
    if (is_kw("else")) {
      advance();
      colon_block();
    }
  }

  void while_stmt() {
    advance();
    named_expression();
    colon_block();
    if (is_kw("else")) {
      advance();
      colon_block();
    }
  }

  void for_stmt() {
    expect_kw("for");
    star_targets_until_in();
    expect_kw("in");
    star_expressions();
    colon_block();
    if (is_kw("else")) {
      advance();
      colon_block();
    }
  }

  void try_stmt() {
    advance();
    colon_block();
    bool handlers = false;
    while (is_kw("except")) {
      handlers = true;
      advance();
      if (is_op("*")) advance();
      if (!is_op(":")) {
        expression();
        // `except A, e:` is Python 2 syntax.
        if (is_op(",")) fail("multiple exception types must be parenthesized");
        if (is_kw("as")) {
          advance();
          expect_name();
        }
      }
      colon_block();
    }
    if (handlers && is_kw("else")) {
      advance();
      colon_block();
    }
    if (is_kw("finally")) {
      advance();
      colon_block();
      return;
    }
    if (!handlers) fail("expected 'except' or 'finally' block");
  }

  void with_item() {
    expression();
    if (is_kw("as")) {
      advance();
      Expr t = star_target();
      require_target(t);
    }
  }

  void with_stmt() {
    expect_kw("with");
    bool parenthesized = false;
    if (is_op("(")) {
      std::size_t save = pos_;
      try {
        advance();
        with_item();
        while (is_op(",")) {
          advance();
          if (is_op(")")) break;
          with_item();
        }
        expect_op(")");
        parenthesized = is_op(":");
      } catch (const SyntaxError&) {
      }
      if (!parenthesized) pos_ = save;
    }
    if (!parenthesized) {
      with_item();
      while (is_op(",")) {
        advance();
        with_item();
      }
    }
    colon_block();
  }

  void decorated() {
    while (is_op("@")) {
      advance();
      named_expression();
      expect_newline();
    }
    if (is_kw("def")) return funcdef();
    if (is_kw("class")) return classdef();
    if (is_kw("async") && is_kw("def", 1)) {
      advance();
      return funcdef();
    }
    fail("expected function or class definition after decorator");
  }

  void funcdef() {
    expect_kw("def");
    expect_name();
    expect_op("(");
    parameters(")", true);
    expect_op(")");
    if (is_op("->")) {
      advance();
      expression();
    }
    colon_block();
  }

  // Parses a parameter list up to (not including) `close`.
  void parameters(std::string_view close, bool annotations) {
    bool seen_default = false;
    bool seen_slash = false;
    bool seen_star = false;
    bool bare_star_pending = false;
    bool seen_dstar = false;
    int count = 0;
    while (!is_op(close)) {
      if (seen_dstar) fail("arguments cannot follow var-keyword argument");
      if (is_op("/")) {
        if (seen_slash) fail("/ may appear only once");
        if (seen_star) fail("/ must be ahead of *");
        if (count == 0) fail("at least one argument must precede /");
        seen_slash = true;
        advance();
      } else if (is_op("*")) {
        if (seen_star) fail("* argument may appear only once");
        seen_star = true;
        advance();
        if (is_name()) {
          advance();
          if (annotations && is_op(":")) {
            advance();
            if (is_op("*")) {
              advance();
              bitwise_or();
            } else {
              expression();
            }
          }
        } else {
          bare_star_pending = true;
        }
      } else if (is_op("**")) {
        advance();
        expect_name();
        if (annotations && is_op(":")) {
          advance();
          expression();
        }
        if (is_op("=")) fail("var-keyword argument cannot have default value");
        seen_dstar = true;
        if (bare_star_pending) fail("named arguments must follow bare *");
      } else {
        expect_name();
        if (annotations && is_op(":")) {
          advance();
          expression();
        }
        if (is_op("=")) {
          advance();
          expression();
          if (!seen_star) seen_default = true;
        } else if (seen_default && !seen_star) {
          fail("non-default argument follows default argument");
        }
        bare_star_pending = false;
        ++count;
      }
      if (!is_op(",")) break;
      advance();
    }
    if (bare_star_pending) fail("named arguments must follow bare *");
  }

  void classdef() {
    expect_kw("class");
    expect_name();
    if (is_op("(")) {
      advance();
      call_arguments();
    }
    colon_block();
  }

  // `match` is a soft keyword: commit only once `match <subject>:` NEWLINE is seen.
  bool try_match_stmt() {
    std::size_t save = pos_;
    try {
      advance();
      if (!starts_expression() || (is_op("*") && !starts_expression(1))) throw SyntaxError("", 0, 0);
      star_named_expression();
      while (is_op(",")) {
        advance();
        if (is_op(":")) break;
        star_named_expression();
      }
      expect_op(":");
      if (!at(TokenKind::Newline)) throw SyntaxError("", 0, 0);
    } catch (const SyntaxError&) {
      pos_ = save;
      return false;
    }
    advance();
    if (!at(TokenKind::Indent)) fail("expected an indented block");
    advance();
    if (!is_kw("case")) fail("expected 'case' block");
    while (is_kw("case")) {
      advance();
      case_patterns();
      if (is_kw("if")) {
        advance();
        named_expression();
      }
      colon_block();
    }
    if (!at(TokenKind::Dedent) && !at(TokenKind::EndMarker)) fail_unexpected();
    if (at(TokenKind::Dedent)) advance();
    return true;
  }

  // ---- match patterns -----------------------------------------------------

  void case_patterns() {
    maybe_star_pattern();
    if (is_op(",")) {
      while (is_op(",")) {
        advance();
        if (is_op(":") || is_kw("if")) break;
        maybe_star_pattern();
      }
    }
  }

  void maybe_star_pattern() {
    if (is_op("*")) {
      advance();
      expect_name();
      return;
    }
    as_pattern();
  }

  void as_pattern() {
    or_pattern();
    if (is_kw("as")) {
      advance();
      expect_name();
    }
  }

  void or_pattern() {
    closed_pattern();
    while (is_op("|")) {
      advance();
      closed_pattern();
    }
  }

  void signed_number() {
    if (is_op("-")) advance();
    if (!at(TokenKind::Number)) fail_unexpected();
    advance();
    if (is_op("+") || is_op("-")) {
      advance();
      if (!at(TokenKind::Number)) fail_unexpected();
      advance();
    }
  }

  void closed_pattern() {
    if (at(TokenKind::Number) || is_op("-")) return signed_number();
    if (at(TokenKind::String)) {
      while (at(TokenKind::String)) advance();
      return;
    }
    if (is_kw("None") || is_kw("True") || is_kw("False")) return advance();
    if (is_op("(")) {
      advance();
      if (is_op(")")) return advance();
      maybe_star_pattern();
      while (is_op(",")) {
        advance();
        if (is_op(")")) break;
        maybe_star_pattern();
      }
      return expect_op(")");
    }
    if (is_op("[")) {
      advance();
      while (!is_op("]")) {
        maybe_star_pattern();
        if (!is_op(",")) break;
        advance();
      }
      return expect_op("]");
    }
    if (is_op("{")) {
      advance();
      while (!is_op("}")) {
        if (is_op("**")) {
          advance();
          expect_name();
        } else {
          if (at(TokenKind::Number) || is_op("-")) {
            signed_number();
          } else if (at(TokenKind::String)) {
            while (at(TokenKind::String)) advance();
          } else if (is_kw("None") || is_kw("True") || is_kw("False")) {
            advance();
          } else {
            dotted_value();
          }
          expect_op(":");
          as_pattern();
        }
        if (!is_op(",")) break;
        advance();
      }
      return expect_op("}");
    }
    if (is_name()) {
      dotted_value();
      if (is_op("(")) {
        advance();
        bool keywords = false;
        while (!is_op(")")) {
          if (is_name() && is_op("=", 1)) {
            advance();
            advance();
            keywords = true;
          } else if (keywords) {
            fail("positional patterns follow keyword patterns");
          }
          as_pattern();
          if (!is_op(",")) break;
          advance();
        }
        expect_op(")");
      }
      return;
    }
    fail_unexpected();
  }

  void dotted_value() {
    expect_name();
    while (is_op(".")) {
      advance();
      expect_name();
    }
  }

  // ---- simple statements --------------------------------------------------

  void simple_stmt() {
    const Token& t = peek();
    if (t.kind == TokenKind::Name) {
      const std::string& w = t.text;
      if (w == "pass" || w == "break" || w == "continue") return advance();
      if (w == "return") {
        advance();
        if (starts_expression()) star_expressions();
        return;
      }
      if (w == "raise") {
        advance();
        if (starts_expression()) {
          expression();
          if (is_kw("from")) {
            advance();
            expression();
          }
        }
        return;
      }
      if (w == "global" || w == "nonlocal") {
        advance();
        expect_name();
        while (is_op(",")) {
          advance();
          expect_name();
        }
        return;
      }
      if (w == "del") {
        advance();
        while (true) {
          Expr e = bitwise_or();
          require_delete_target(e);
          if (!is_op(",")) break;
          advance();
          if (!starts_expression()) break;
        }
        return;
      }
      if (w == "assert") {
        advance();
        expression();
        if (is_op(",")) {
          advance();
          expression();
        }
        return;
      }
      if (w == "import") return import_name();
      if (w == "from") return import_from();
    }
    expression_statement();
  }

  void require_delete_target(const Expr& e) const {
    if (e.kind == ExprKind::Starred || !e.assignable) fail("cannot delete " + std::string(e.what));
  }

  void dotted_name() {
    expect_name();
    while (is_op(".")) {
      advance();
      expect_name();
    }
  }

  void import_name() {
    advance();
    do {
      if (is_op(",")) advance();
      dotted_name();
      if (is_kw("as")) {
        advance();
        expect_name();
      }
    } while (is_op(","));
  }

  void import_from() {
    advance();
    int dots = 0;
    while (is_op(".") || is_op("...")) {
      dots += is_op(".") ? 1 : 3;
      advance();
    }
    if (is_name()) {
      dotted_name();
    } else if (dots == 0) {
      fail_unexpected();
    }
    expect_kw("import");
    if (is_op("*")) return advance();
    bool paren = is_op("(");
    if (paren) advance();
    expect_name();
    if (is_kw("as")) {
      advance();
      expect_name();
    }
    while (is_op(",")) {
      advance();
      if (paren && is_op(")")) break;
      if (!paren && !is_name()) fail("trailing comma not allowed without surrounding parentheses");
      expect_name();
      if (is_kw("as")) {
        advance();
        expect_name();
      }
    }
    if (paren) expect_op(")");
  }

  static bool single_target(const Expr& e) {
    return e.kind == ExprKind::Name || e.kind == ExprKind::Attribute || e.kind == ExprKind::Subscript;
  }

  bool is_augassign() const {
    static constexpr std::array<std::string_view, 13> kOps = {
        "+=", "-=", "*=", "/=", "//=", "%=", "@=", "&=", "|=", "^=", ">>=", "<<=", "**="};
    if (!at(TokenKind::Op)) return false;
    return std::find(kOps.begin(), kOps.end(), peek().text) != kOps.end();
  }

  void assignment_value() {
    if (is_kw("yield")) {
      yield_expr();
    } else {
      star_expressions();
    }
  }

  void expression_statement() {
    if (is_kw("yield")) {
      yield_expr();
      return;
    }
    if (!starts_expression()) fail_unexpected();
    Expr first = star_expressions();
    if (is_op(":")) {
      if (first.kind == ExprKind::Tuple) fail("only single target (not tuple) can be annotated");
      if (first.kind == ExprKind::List) fail("only single target (not list) can be annotated");
      if (!single_target(first)) fail("illegal target for annotation");
      advance();
      expression();
      if (is_op("=")) {
        advance();
        assignment_value();
      }
      return;
    }
    if (is_augassign()) {
      if (!single_target(first)) {
        fail("'" + std::string(first.what) + "' is an illegal expression for augmented assignment");
      }
      advance();
      assignment_value();
      return;
    }
    while (is_op("=")) {
      require_target(first);
      advance();
      if (is_kw("yield")) {
        yield_expr();
        first = other("yield expression");
      } else {
        first = star_expressions();
      }
    }
  }

  // ---- expressions --------------------------------------------------------

  Expr yield_expr() {
    expect_kw("yield");
    if (is_kw("from")) {
      advance();
      expression();
    } else if (starts_expression()) {
      star_expressions();
    }
    return other("yield expression");
  }

  Expr star_expressions() {
    Expr first = star_expression();
    if (!is_op(",")) return first;
    bool assignable = first.assignable;
    while (is_op(",")) {
      advance();
      if (!starts_expression()) break;
      Expr e = star_expression();
      assignable = assignable && e.assignable;
    }
    return Expr{ExprKind::Tuple, assignable, "tuple"};
  }

  Expr star_expression() {
    if (is_op("*")) {
      advance();
      Expr inner = bitwise_or();
      return Expr{ExprKind::Starred, inner.assignable, "starred"};
    }
    return expression();
  }

  Expr star_named_expression() {
    if (is_op("*")) {
      advance();
      Expr inner = bitwise_or();
      return Expr{ExprKind::Starred, inner.assignable, "starred"};
    }
    return named_expression();
  }

  Expr named_expression() {
    if (is_name() && is_op(":=", 1)) {
      advance();
      advance();
      expression();
      return other("named expression");
    }
    Expr e = expression();
    if (is_op(":=")) fail("cannot use assignment expressions with " + std::string(e.what));
    return e;
  }

  Expr expression() {
    if (is_kw("lambda")) return lambdef();
    Expr e = disjunction();
    if (is_kw("if")) {
      advance();
      disjunction();
      if (!is_kw("else")) fail("expected 'else' after 'if' expression");
      advance();
      expression();
      return other("conditional expression");
    }
    return e;
  }

  Expr lambdef() {
    expect_kw("lambda");
    parameters(":", false);
    expect_op(":");
    expression();
    return other("lambda");
  }

  Expr disjunction() {
    Expr e = conjunction();
    while (is_kw("or")) {
      advance();
      conjunction();
      e = other();
    }
    return e;
  }

  Expr conjunction() {
    Expr e = inversion();
    while (is_kw("and")) {
      advance();
      inversion();
      e = other();
    }
    return e;
  }

  Expr inversion() {
    if (is_kw("not")) {
      advance();
      inversion();
      return other();
    }
    return comparison();
  }

  bool at_comparison_op() const {
    if (at(TokenKind::Op)) {
      const std::string& t = peek().text;
      return t == "==" || t == "!=" || t == "<" || t == ">" || t == "<=" || t == ">=";
    }
    if (is_kw("in") || is_kw("is")) return true;
    return is_kw("not") && is_kw("in", 1);
  }

  Expr comparison() {
    Expr e = bitwise_or();
    while (at_comparison_op()) {
      if (is_kw("not")) {
        advance();
        advance();
      } else if (is_kw("is")) {
        advance();
        if (is_kw("not")) advance();
      } else {
        advance();
      }
      bitwise_or();
      e = other("comparison");
    }
    return e;
  }

  template <typename Next>
  Expr binary(Next next, std::initializer_list<std::string_view> ops) {
    Expr e = (this->*next)();
    while (at(TokenKind::Op) &&
           std::find(ops.begin(), ops.end(), std::string_view(peek().text)) != ops.end()) {
      advance();
      (this->*next)();
      e = other();
    }
    return e;
  }

  Expr bitwise_or() { return binary(&Parser::bitwise_xor, {"|"}); }
  Expr bitwise_xor() { return binary(&Parser::bitwise_and, {"^"}); }
  Expr bitwise_and() { return binary(&Parser::shift_expr, {"&"}); }
  Expr shift_expr() { return binary(&Parser::sum, {"<<", ">>"}); }
  Expr sum() { return binary(&Parser::term, {"+", "-"}); }
  Expr term() { return binary(&Parser::factor, {"*", "/", "//", "%", "@"}); }

  Expr factor() {
    if (is_op("+") || is_op("-") || is_op("~")) {
      advance();
      factor();
      return other();
    }
    return power();
  }

  Expr power() {
    Expr e = await_primary();
    if (is_op("**")) {
      advance();
      factor();
      return other();
    }
    return e;
  }

  Expr await_primary() {
    if (is_kw("await")) {
      advance();
      primary();
      return other("await expression");
    }
    return primary();
  }

  Expr primary() {
    Expr e = atom();
    while (true) {
      if (is_op(".")) {
        advance();
        expect_name();
        e = Expr{ExprKind::Attribute, true, "attribute"};
      } else if (is_op("(")) {
        advance();
        call_arguments();
        e = Expr{ExprKind::Call, false, "function call"};
      } else if (is_op("[")) {
        advance();
        slices();
        e = Expr{ExprKind::Subscript, true, "subscript"};
      } else {
        break;
      }
    }
    return e;
  }

  // Consumes arguments and the closing ')'.
  void call_arguments() {
    bool seen_kw = false;
    bool seen_dstar = false;
    int count = 0;
    while (!is_op(")")) {
      if (is_op("*")) {
        if (seen_dstar) fail("iterable argument unpacking follows keyword argument unpacking");
        advance();
        expression();
      } else if (is_op("**")) {
        advance();
        expression();
        seen_dstar = true;
      } else if (is_name() && is_op("=", 1)) {
        advance();
        advance();
        expression();
        seen_kw = true;
      } else {
        if (!starts_expression()) fail_unexpected();
        Expr e = named_expression();
        if (is_op("=")) fail("expression cannot contain assignment, perhaps you meant \"==\"?");
        if (is_kw("for") || (is_kw("async") && is_kw("for", 1))) {
          comp_for();
          if (count > 0 || !is_op(")")) fail("Generator expression must be parenthesized");
        }
        (void)e;
        if (seen_dstar) fail("positional argument follows keyword argument unpacking");
        if (seen_kw) fail("positional argument follows keyword argument");
      }
      ++count;
      if (!is_op(",")) break;
      advance();
    }
    expect_op(")");
  }

  void slices() {
    do {
      if (is_op(",")) advance();
      if (is_op("]")) break;
      slice();
    } while (is_op(","));
    expect_op("]");
  }

  void slice() {
    if (!is_op(":")) {
      if (is_op("*")) {
        star_named_expression();
        return;
      }
      named_expression();
      if (!is_op(":")) return;
    }
    advance();
    if (!is_op(":") && !is_op(",") && !is_op("]")) expression();
    if (is_op(":")) {
      advance();
      if (!is_op(",") && !is_op("]")) expression();
    }
  }

  void comp_for() {
    while (is_kw("for") || (is_kw("async") && is_kw("for", 1))) {
      if (is_kw("async")) advance();
      advance();
      star_targets_until_in();
      expect_kw("in");
      disjunction();
      while (is_kw("if")) {
        advance();
        disjunction();
      }
    }
  }

  Expr star_target() {
    if (is_op("*")) {
      advance();
      Expr inner = star_target();
      if (inner.kind == ExprKind::Starred) fail("cannot use starred expression here");
      return Expr{ExprKind::Starred, inner.assignable, "starred"};
    }
    return bitwise_or();
  }

  void star_targets_until_in() {
    Expr first = star_target();
    require_target(first);
    while (is_op(",")) {
      advance();
      if (is_kw("in")) break;
      Expr e = star_target();
      require_target(e);
    }
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
        advance();
        return Expr{ExprKind::Literal, false, "literal"};
      case TokenKind::String: {
        std::optional<bool> bytes;
        while (at(TokenKind::String)) {
          bool b = false;
          for (char c : peek().text) {
            if (c == '"' || c == '\'') break;
            b |= (c == 'b' || c == 'B');
          }
          if (bytes && *bytes != b) fail("cannot mix bytes and nonbytes literals");
          bytes = b;
          advance();
        }
        return Expr{ExprKind::Literal, false, "literal"};
      }
      case TokenKind::Name:
        if (t.text == "None" || t.text == "True" || t.text == "False") {
          advance();
          return Expr{ExprKind::Literal, false, t.text == "None" ? "None" : t.text == "True" ? "True" : "False"};
        }
        if (is_hard_keyword(t.text)) fail_unexpected();
        advance();
        return Expr{ExprKind::Name, true, "name"};
      case TokenKind::Op:
        if (t.text == "...") {
          advance();
          return Expr{ExprKind::Literal, false, "ellipsis"};
        }
        if (t.text == "(") return paren_atom();
        if (t.text == "[") return list_atom();
        if (t.text == "{") return brace_atom();
        fail_unexpected();
      default:
        fail_unexpected();
    }
  }

  Expr paren_atom() {
    advance();
    if (is_op(")")) {
      advance();
      return Expr{ExprKind::Tuple, true, "tuple"};
    }
    if (is_kw("yield")) {
      yield_expr();
      expect_op(")");
      return other("yield expression");
    }
    Expr first = star_named_expression();
    if (is_kw("for") || (is_kw("async") && is_kw("for", 1))) {
      if (first.kind == ExprKind::Starred) fail("iterable unpacking cannot be used in comprehension");
      comp_for();
      expect_op(")");
      return other("generator expression");
    }
    if (is_op(")")) {
      if (first.kind == ExprKind::Starred) fail("cannot use starred expression here");
      advance();
      return first;
    }
    bool assignable = first.assignable;
    while (is_op(",")) {
      advance();
      if (is_op(")")) break;
      Expr e = star_named_expression();
      assignable = assignable && e.assignable;
    }
    expect_op(")");
    return Expr{ExprKind::Tuple, assignable, "tuple"};
  }

  Expr list_atom() {
    advance();
    if (is_op("]")) {
      advance();
      return Expr{ExprKind::List, true, "list"};
    }
    Expr first = star_named_expression();
    if (is_kw("for") || (is_kw("async") && is_kw("for", 1))) {
      if (first.kind == ExprKind::Starred) fail("iterable unpacking cannot be used in comprehension");
      comp_for();
      expect_op("]");
      return other("list comprehension");
    }
    bool assignable = first.assignable;
    while (is_op(",")) {
      advance();
      if (is_op("]")) break;
      Expr e = star_named_expression();
      assignable = assignable && e.assignable;
    }
    expect_op("]");
    return Expr{ExprKind::List, assignable, "list"};
  }

  Expr brace_atom() {
    advance();
    if (is_op("}")) {
      advance();
      return other("dict literal");
    }
    bool is_dict;
    if (is_op("**")) {
      advance();
      bitwise_or();
      is_dict = true;
    } else {
      Expr first = star_named_expression();
      if (is_op(":")) {
        if (first.kind == ExprKind::Starred) fail("cannot use a starred expression in a dictionary key");
        advance();
        expression();
        is_dict = true;
      } else {
        is_dict = false;
      }
    }
    if (is_kw("for") || (is_kw("async") && is_kw("for", 1))) {
      comp_for();
      expect_op("}");
      return other("comprehension");
    }
    while (is_op(",")) {
      advance();
      if (is_op("}")) break;
      if (is_dict) {
        if (is_op("**")) {
          advance();
          bitwise_or();
        } else {
          expression();
          expect_op(":");
          expression();
        }
      } else {
        star_named_expression();
      }
    }
    expect_op("}");
    return other(is_dict ? "dict literal" : "set display");
  }
};

}  // namespace detail

/// Throws SyntaxError if `source` is not syntactically valid Python 3.
inline void validate_syntax(std::string_view source) {
  detail::Parser parser(tokenize(source, /*keep_comments=*/false));
  parser.parse_file();
}

/// Non-throwing variant; returns the first syntax error, if any.
inline std::optional<SyntaxError> check_syntax(std::string_view source) {
  try {
    validate_syntax(source);
  } catch (const SyntaxError& e) {
    return e;
  }
  return std::nullopt;
}

}  // namespace methodolint::python
