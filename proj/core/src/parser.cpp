#include "cpc/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "lexer.hpp"

namespace cpc {

namespace detail {

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const char* const two[] = {"->"};
  static const std::string_view one = "\\#.|!(),=<>?{}[]:;";
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::Sym, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* s : two) {
      if (src.substr(i, 2) == s) {
        t.text = s;
        advance(2);
        matched = true;
        break;
      }
    }
    if (!matched && one.find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
      advance(1);
      matched = true;
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Token::Kind::End, "<end of input>", line, col});
  return out;
}

std::string TokenStream::expect_ident(const char* what) {
  if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what);
  return next().text;
}

}  // namespace detail

namespace {

using detail::Token;
using detail::TokenStream;

class CpcParser {
 public:
  explicit CpcParser(std::string_view src) : ts_(src) {}

  Pattern pattern_only() {
    Pattern p = pattern();
    ts_.expect_end();
    check_pattern(p, ts_.peek());
    check_reserved(free_names(p));
    return p;
  }

  Process process_only() {
    Process P = process();
    ts_.expect_end();
    check_reserved(P.free_names());
    return P;
  }

 private:
  Name name_token(const Token& t) {
    if (t.kind == Token::Kind::Ident && (t.text == "ok" || t.text == "new"))
      ts_.fail_at(t, "keyword '" + t.text + "' cannot be used as a name");
    first_seen_.try_emplace(t.text, t);
    return Name::surface(t.text);
  }

  Pattern pattern_atom() {
    const Token& t = ts_.peek();
    if (ts_.accept_sym("\\")) {
      const Token& id = ts_.peek();
      if (id.kind != Token::Kind::Ident) ts_.fail("expected name after '\\'");
      ts_.next();
      return Pattern::binding(name_token(id));
    }
    if (ts_.accept_sym("#")) {
      const Token& id = ts_.peek();
      if (id.kind != Token::Kind::Ident && id.kind != Token::Kind::Number) ts_.fail("expected name after '#'");
      ts_.next();
      return Pattern::protected_name(name_token(id));
    }
    if (ts_.accept_sym("(")) {
      Pattern p = pattern();
      ts_.expect_sym(")");
      return p;
    }
    if (t.kind == Token::Kind::Ident || t.kind == Token::Kind::Number) {
      ts_.next();
      return Pattern::variable(name_token(t));
    }
    ts_.fail("expected pattern");
  }

  Pattern pattern() {
    Pattern p = pattern_atom();
    while (ts_.accept_sym(".")) p = Pattern::compound(p, pattern_atom());
    return p;
  }

  void check_pattern(const Pattern& p, const Token& at) {
    std::map<Name, int> seen;
    for (Name b : binding_names_ordered(p))
      if (++seen[b] > 1) ts_.fail_at(at, "ill-formed pattern: duplicate binder '" + b.text() + "'");
    for (Name f : free_names(p))
      if (seen.count(f)) ts_.fail_at(at, "ill-formed pattern: binder '" + f.text() + "' also occurs free");
  }

  void check_reserved(const NameSet& free) {
    for (Name n : free) {
      std::string s = n.text();
      if (s.size() > 1 && s[0] == '_' && s != "_hash") {
        auto it = first_seen_.find(s);
        const Token& at = it == first_seen_.end() ? ts_.peek() : it->second;
        ts_.fail_at(at, "reserved identifier '" + s + "' cannot occur free");
      }
    }
  }

  Process process() {
    std::vector<Process> parts{arrow()};
    while (ts_.accept_sym("|")) parts.push_back(arrow());
    return Process::par_of(parts);
  }

  Process arrow() {
    if (ts_.accept_sym("!")) return Process::replicate(arrow());
    if (ts_.is_sym("(") && ts_.is_word("new", 1)) {
      ts_.next();
      ts_.next();
      std::vector<Name> names;
      do {
        const Token& id = ts_.peek();
        if (id.kind != Token::Kind::Ident) ts_.fail("expected restricted name");
        ts_.next();
        names.push_back(name_token(id));
      } while (ts_.accept_sym(",") || ts_.peek().kind == Token::Kind::Ident);
      ts_.expect_sym(")");
      return Process::restrict_all(names, arrow());
    }
    if (ts_.is_word("ok")) {
      ts_.next();
      return Process::success();
    }

    // A pattern followed by '->' is a case; otherwise back up.
    std::size_t m = ts_.mark();
    const Token start = ts_.peek();
    std::optional<Pattern> p;
    try {
      p = pattern();
    } catch (const ParseError&) {
    }
    if (p && ts_.accept_sym("->")) {
      check_pattern(*p, start);
      return Process::case_of(*p, arrow());
    }
    ts_.reset(m);

    if (ts_.peek().kind == Token::Kind::Number && ts_.peek().text == "0") {
      ts_.next();
      return Process::null();
    }
    if (ts_.accept_sym("(")) {
      Process P = process();
      ts_.expect_sym(")");
      return P;
    }
    ts_.fail("expected process");
  }

  TokenStream ts_;
  std::map<std::string, Token> first_seen_;
};

}  // namespace

Pattern parse_pattern(std::string_view text) { return CpcParser(text).pattern_only(); }

Process parse_process(std::string_view text) { return CpcParser(text).process_only(); }

}  // namespace cpc
