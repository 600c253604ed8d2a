#include "cpc/linda.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cpc/congruence.hpp"
#include "lexer.hpp"
#include "thread_engine.hpp"

namespace cpc::linda {

using Kind = LindaProcess::Kind;

LindaProcess::LindaProcess() : node_(std::make_shared<Node>()) {}

LindaProcess LindaProcess::null() { return LindaProcess(); }

LindaProcess LindaProcess::ok() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ok;
  return LindaProcess(std::move(n));
}

LindaProcess LindaProcess::output(Data data) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Output;
  n->fn.insert(data.begin(), data.end());
  n->data = std::move(data);
  return LindaProcess(std::move(n));
}

LindaProcess LindaProcess::input(Template tmpl, LindaProcess body) {
  NameSet binders;
  for (const auto& f : tmpl)
    if (f.bind && !binders.insert(f.name).second)
      throw std::invalid_argument("template binds '" + f.name.text() + "' twice");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Input;
  n->fn = set_minus(body.free_names(), binders);
  for (const auto& f : tmpl)
    if (!f.bind) n->fn.insert(f.name);
  n->tmpl = std::move(tmpl);
  n->left = std::make_unique<LindaProcess>(std::move(body));
  return LindaProcess(std::move(n));
}

LindaProcess LindaProcess::par(LindaProcess l, LindaProcess r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->fn = set_union(l.free_names(), r.free_names());
  n->left = std::make_unique<LindaProcess>(std::move(l));
  n->right = std::make_unique<LindaProcess>(std::move(r));
  return LindaProcess(std::move(n));
}

LindaProcess LindaProcess::par_of(const std::vector<LindaProcess>& parts) {
  if (parts.empty()) return null();
  LindaProcess out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = par(parts[i], out);
  return out;
}

LindaProcess LindaProcess::restrict(Name name, LindaProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Restrict;
  n->name = name;
  n->fn = body.free_names();
  n->fn.erase(name);
  n->left = std::make_unique<LindaProcess>(std::move(body));
  return LindaProcess(std::move(n));
}

LindaProcess LindaProcess::restrict_all(const std::vector<Name>& names, LindaProcess body) {
  for (std::size_t i = names.size(); i-- > 0;) body = restrict(names[i], body);
  return body;
}

LindaProcess LindaProcess::replicate(LindaProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Replicate;
  n->fn = body.free_names();
  n->left = std::make_unique<LindaProcess>(std::move(body));
  return LindaProcess(std::move(n));
}

std::optional<NameMap> linda_match(const Template& t, const Data& d) {
  if (t.size() != d.size()) return std::nullopt;
  NameMap out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].bind) {
      if (!out.emplace(t[i].name, d[i]).second) return std::nullopt;
    } else if (t[i].name != d[i]) {
      return std::nullopt;
    }
  }
  return out;
}

namespace {

Name apply(const NameMap& s, Name n) {
  auto it = s.find(n);
  return it == s.end() ? n : it->second;
}

NameSet range_of(const NameMap& s) {
  NameSet out;
  for (const auto& kv : s) out.insert(kv.second);
  return out;
}

}  // namespace

LindaProcess rename_free(const LindaProcess& P, const NameMap& s) {
  if (std::none_of(s.begin(), s.end(), [&](const auto& kv) { return P.free_names().count(kv.first); })) return P;
  switch (P.kind()) {
    case Kind::Null:
    case Kind::Ok:
      return P;
    case Kind::Output: {
      Data d;
      for (Name n : P.data()) d.push_back(apply(s, n));
      return LindaProcess::output(d);
    }
    case Kind::Par:
      return LindaProcess::par(rename_free(P.left(), s), rename_free(P.right(), s));
    case Kind::Replicate:
      return LindaProcess::replicate(rename_free(P.body(), s));
    case Kind::Restrict: {
      NameMap inner = s;
      inner.erase(P.name());
      Name n = P.name();
      LindaProcess body = P.body();
      if (range_of(inner).count(n)) {
        Name m = Name::fresh();
        body = rename_free(body, {{n, m}});
        n = m;
      }
      return LindaProcess::restrict(n, rename_free(body, inner));
    }
    case Kind::Input: {
      NameMap inner = s;
      for (const auto& f : P.tmpl())
        if (f.bind) inner.erase(f.name);
      NameSet range = range_of(inner);
      NameMap alpha;
      Template t;
      for (const auto& f : P.tmpl()) {
        if (!f.bind) {
          t.push_back({false, apply(s, f.name)});
        } else if (range.count(f.name)) {
          Name m = Name::fresh();
          alpha.emplace(f.name, m);
          t.push_back({true, m});
        } else {
          t.push_back(f);
        }
      }
      LindaProcess body = alpha.empty() ? P.body() : rename_free(P.body(), alpha);
      return LindaProcess::input(t, rename_free(body, inner));
    }
  }
  return P;
}

namespace {

using Bag = detail::FlatBag<LindaProcess>;

void flatten_into(const LindaProcess& P, Bag& out) {
  switch (P.kind()) {
    case Kind::Null:
      return;
    case Kind::Par:
      flatten_into(P.left(), out);
      flatten_into(P.right(), out);
      return;
    case Kind::Restrict: {
      if (!P.body().free_names().count(P.name())) {
        flatten_into(P.body(), out);
        return;
      }
      Name m = Name::fresh();
      out.restricted.push_back(m);
      flatten_into(rename_free(P.body(), {{P.name(), m}}), out);
      return;
    }
    default:
      out.threads.push_back(P);
  }
}

struct Ops {
  Bag flatten(const LindaProcess& P) const {
    Bag b;
    flatten_into(P, b);
    return b;
  }
  const LindaProcess* replicated(const LindaProcess& t) const { return t.is(Kind::Replicate) ? &t.body() : nullptr; }
  template <class Emit>
  void unary(const LindaProcess&, Emit&&) const {}
  template <class Emit>
  void binary(const LindaProcess& a, const LindaProcess& b, Emit&& emit) const {
    if (!a.is(Kind::Output) || !b.is(Kind::Input)) return;
    if (auto s = linda_match(b.tmpl(), a.data())) emit({rename_free(b.body(), *s)});
  }
};

}  // namespace

std::vector<LindaProcess> linda_reduce(const LindaProcess& P) {
  Ops ops;
  detail::ThreadEngine<LindaProcess, Ops> engine(ops);
  std::map<std::string, LindaProcess> unique;
  for (auto& bag : engine.step(P)) {
    LindaProcess R = LindaProcess::restrict_all(bag.restricted, LindaProcess::par_of(bag.threads));
    unique.emplace(key(R), R);
  }
  std::vector<LindaProcess> out;
  for (auto& kv : unique) out.push_back(kv.second);
  return out;
}

bool has_success(const LindaProcess& P) {
  switch (P.kind()) {
    case Kind::Ok:
      return true;
    case Kind::Par:
      return has_success(P.left()) || has_success(P.right());
    case Kind::Restrict:
    case Kind::Replicate:
      return has_success(P.body());
    default:
      return false;
  }
}

Pattern patt(const Template& t) {
  Pattern acc = Pattern::compound(Pattern::binding(Name::fresh()), Pattern::variable(hash_name()));
  for (std::size_t i = t.size(); i-- > 0;) {
    Pattern field = t[i].bind ? Pattern::binding(t[i].name) : Pattern::protected_name(t[i].name);
    acc = Pattern::compound(Pattern::compound(field, Pattern::variable(hash_name())), acc);
  }
  return acc;
}

Pattern patb(const Data& d) {
  Pattern acc = Pattern::compound(Pattern::variable(hash_name()), Pattern::binding(Name::fresh()));
  for (std::size_t i = d.size(); i-- > 0;)
    acc = Pattern::compound(Pattern::compound(Pattern::variable(d[i]), Pattern::binding(Name::fresh())), acc);
  return acc;
}

Process encode_linda(const LindaProcess& P) {
  switch (P.kind()) {
    case Kind::Null:
      return Process::null();
    case Kind::Ok:
      return Process::success();
    case Kind::Output:
      return Process::case_of(patb(P.data()), Process::null());
    case Kind::Input: {
      // A binder that also appears as an exact field would make the pattern
      // ill-formed; the exact field means the outer name, so rename the binder.
      NameSet exact;
      for (const auto& f : P.tmpl())
        if (!f.bind) exact.insert(f.name);
      Template t = P.tmpl();
      NameMap alpha;
      for (auto& f : t)
        if (f.bind && exact.count(f.name)) {
          Name m = Name::fresh();
          alpha.emplace(f.name, m);
          f.name = m;
        }
      LindaProcess body = alpha.empty() ? P.body() : rename_free(P.body(), alpha);
      return Process::case_of(patt(t), encode_linda(body));
    }
    case Kind::Par:
      return Process::par(encode_linda(P.left()), encode_linda(P.right()));
    case Kind::Restrict:
      return Process::restrict(P.name(), encode_linda(P.body()));
    case Kind::Replicate:
      return Process::replicate(encode_linda(P.body()));
  }
  return Process::null();
}

std::string key(const LindaProcess& P) { return canonical_key(encode_linda(P)); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(const LindaProcess& P, int level, std::string& out) {
  switch (P.kind()) {
    case Kind::Null:
      out += "0";
      return;
    case Kind::Ok:
      out += "ok";
      return;
    case Kind::Output: {
      out += "out(";
      for (std::size_t i = 0; i < P.data().size(); ++i) {
        if (i) out += ",";
        out += P.data()[i].text();
      }
      out += ")";
      return;
    }
    case Kind::Input:
      out += "in" + to_string(P.tmpl());
      if (!P.body().is(Kind::Null)) {
        out += ".";
        print(P.body(), 1, out);
      }
      return;
    case Kind::Par:
      if (level > 0) out += "(";
      print(P.left(), 1, out);
      out += " | ";
      print(P.right(), 0, out);
      if (level > 0) out += ")";
      return;
    case Kind::Restrict:
      out += "(new " + P.name().text() + ") ";
      print(P.body(), 1, out);
      return;
    case Kind::Replicate:
      out += "!";
      print(P.body(), 1, out);
      return;
  }
}

}  // namespace

std::string to_string(const Template& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += (t[i].bind ? "\\" : "=") + t[i].name.text();
  }
  return out + ")";
}

std::string to_string(const LindaProcess& P) {
  std::string out;
  print(P, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Token;
using detail::TokenStream;

class LindaParser {
 public:
  explicit LindaParser(std::string_view src) : ts_(src) {}

  LindaProcess run() {
    LindaProcess P = proc();
    ts_.expect_end();
    return P;
  }

 private:
  Name ident() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Ident) ts_.fail("expected name");
    static const std::set<std::string> keywords{"out", "in", "new", "ok"};
    if (keywords.count(t.text)) ts_.fail("keyword '" + t.text + "' cannot be used as a name");
    if (t.text[0] == '_') ts_.fail("identifiers starting with '_' are reserved");
    ts_.next();
    return Name::surface(t.text);
  }

  LindaProcess proc() {
    std::vector<LindaProcess> parts{arrow()};
    while (ts_.accept_sym("|")) parts.push_back(arrow());
    return LindaProcess::par_of(parts);
  }

  LindaProcess arrow() {
    if (ts_.accept_sym("!")) return LindaProcess::replicate(arrow());
    if (ts_.is_sym("(") && ts_.is_word("new", 1)) {
      ts_.next();
      ts_.next();
      std::vector<Name> names;
      do names.push_back(ident());
      while (ts_.accept_sym(",") || ts_.peek().kind == Token::Kind::Ident);
      ts_.expect_sym(")");
      return LindaProcess::restrict_all(names, arrow());
    }
    if (ts_.is_word("ok")) {
      ts_.next();
      return LindaProcess::ok();
    }
    if (ts_.is_word("out")) {
      ts_.next();
      ts_.expect_sym("(");
      Data d;
      if (!ts_.is_sym(")")) {
        do d.push_back(ident());
        while (ts_.accept_sym(","));
      }
      ts_.expect_sym(")");
      return LindaProcess::output(d);
    }
    if (ts_.is_word("in")) {
      const Token start = ts_.next();
      ts_.expect_sym("(");
      Template t;
      if (!ts_.is_sym(")")) {
        do {
          if (ts_.accept_sym("\\")) {
            t.push_back({true, ident()});
          } else if (ts_.accept_sym("=")) {
            t.push_back({false, ident()});
          } else {
            ts_.fail("expected '\\name' or '=name'");
          }
        } while (ts_.accept_sym(","));
      }
      ts_.expect_sym(")");
      LindaProcess body = ts_.accept_sym(".") ? arrow() : LindaProcess::null();
      try {
        return LindaProcess::input(t, body);
      } catch (const std::invalid_argument& e) {
        ts_.fail_at(start, e.what());
      }
    }
    if (ts_.peek().kind == Token::Kind::Number && ts_.peek().text == "0") {
      ts_.next();
      return LindaProcess::null();
    }
    if (ts_.accept_sym("(")) {
      LindaProcess P = proc();
      ts_.expect_sym(")");
      return P;
    }
    ts_.fail("expected process");
  }

  TokenStream ts_;
};

}  // namespace

LindaProcess parse_linda(std::string_view text) { return LindaParser(text).run(); }

}  // namespace cpc::linda
