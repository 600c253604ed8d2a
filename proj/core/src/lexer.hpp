#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpc/parser.hpp"

namespace cpc::detail {

struct Token {
  enum class Kind { Ident, Number, Sym, End } kind;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src);

// Cursor over a token vector with the usual helpers.
class TokenStream {
 public:
  explicit TokenStream(std::string_view src) : toks_(lex(src)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Sym && peek(ahead).text == s;
  }
  bool is_word(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Ident && peek(ahead).text == s;
  }
  bool accept_sym(std::string_view s) {
    if (!is_sym(s)) return false;
    ++pos_;
    return true;
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string expect_ident(const char* what = "identifier");
  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace cpc::detail
