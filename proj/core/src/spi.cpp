#include "cpc/spi.hpp"

#include <algorithm>
#include <set>

#include "cpc/congruence.hpp"
#include "lexer.hpp"
#include "thread_engine.hpp"

namespace cpc::spi {

using TK = SpiTerm::Kind;
using PK = SpiProcess::Kind;

// ---------------------------------------------------------------------------
// Terms

SpiTerm SpiTerm::name(cpc::Name n) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Name;
  p->name = n;
  p->fn.insert(n);
  return SpiTerm(std::move(p));
}

SpiTerm SpiTerm::zero() { return SpiTerm(std::make_shared<Node>()); }

SpiTerm SpiTerm::integer(unsigned i) {
  if (i == 0) return zero();
  auto p = std::make_shared<Node>();
  p->kind = Kind::Int;
  p->value = i;
  return SpiTerm(std::move(p));
}

SpiTerm SpiTerm::pair(SpiTerm m, SpiTerm n) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Pair;
  p->fn = set_union(m.free_names(), n.free_names());
  p->depth = 1 + std::max(m.depth(), n.depth());
  p->a = std::make_unique<SpiTerm>(std::move(m));
  p->b = std::make_unique<SpiTerm>(std::move(n));
  return SpiTerm(std::move(p));
}

SpiTerm SpiTerm::suc(SpiTerm m) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Suc;
  p->fn = m.free_names();
  p->depth = 1 + m.depth();
  p->a = std::make_unique<SpiTerm>(std::move(m));
  return SpiTerm(std::move(p));
}

SpiTerm SpiTerm::encrypt(SpiTerm m, SpiTerm key) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Encrypt;
  p->fn = set_union(m.free_names(), key.free_names());
  p->depth = 1 + std::max(m.depth(), key.depth());
  p->a = std::make_unique<SpiTerm>(std::move(m));
  p->b = std::make_unique<SpiTerm>(std::move(key));
  return SpiTerm(std::move(p));
}

namespace {

bool is_zero(const SpiTerm& t) { return t.kind() == TK::Zero; }

// The predecessor of a successor-shaped term.
std::optional<SpiTerm> pred(const SpiTerm& t) {
  if (t.kind() == TK::Suc) return t.first();
  if (t.kind() == TK::Int) return SpiTerm::integer(t.value() - 1);
  return std::nullopt;
}

bool numeric(const SpiTerm& t) { return t.kind() == TK::Zero || t.kind() == TK::Int || t.kind() == TK::Suc; }

}  // namespace

bool operator==(const SpiTerm& a, const SpiTerm& b) {
  if (a.node_ == b.node_) return true;
  if (numeric(a) && numeric(b)) {
    if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
    if (a.kind() == TK::Int && b.kind() == TK::Int) return a.value() == b.value();
    return *pred(a) == *pred(b);
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TK::Name:
      return a.atom() == b.atom();
    case TK::Pair:
    case TK::Encrypt:
      return a.first() == b.first() && a.second() == b.second();
    default:
      return false;
  }
}

SpiTerm subst_term(const TermSubst& s, const SpiTerm& M) {
  if (std::none_of(s.begin(), s.end(), [&](const auto& kv) { return M.free_names().count(kv.first); })) return M;
  switch (M.kind()) {
    case TK::Name:
      return s.at(M.atom());
    case TK::Pair:
      return SpiTerm::pair(subst_term(s, M.first()), subst_term(s, M.second()));
    case TK::Suc:
      return SpiTerm::suc(subst_term(s, M.first()));
    case TK::Encrypt:
      return SpiTerm::encrypt(subst_term(s, M.first()), subst_term(s, M.second()));
    default:
      return M;
  }
}

// ---------------------------------------------------------------------------
// Processes

SpiProcess::SpiProcess() : node_(std::make_shared<Node>()) {}
SpiProcess SpiProcess::null() { return SpiProcess(); }

SpiProcess SpiProcess::ok() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ok;
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::par(SpiProcess l, SpiProcess r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->fn = set_union(l.free_names(), r.free_names());
  n->p = std::make_unique<SpiProcess>(std::move(l));
  n->q = std::make_unique<SpiProcess>(std::move(r));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::par_of(const std::vector<SpiProcess>& parts) {
  if (parts.empty()) return null();
  SpiProcess out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = par(parts[i], out);
  return out;
}

SpiProcess SpiProcess::replicate(SpiProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Replicate;
  n->fn = body.free_names();
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::restrict(Name x, SpiProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Restrict;
  n->x = x;
  n->fn = body.free_names();
  n->fn.erase(x);
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::restrict_all(const std::vector<Name>& names, SpiProcess body) {
  for (std::size_t i = names.size(); i-- > 0;) body = restrict(names[i], body);
  return body;
}

SpiProcess SpiProcess::input(SpiTerm channel, Name x, SpiProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Input;
  n->x = x;
  n->fn = set_minus(body.free_names(), {x});
  n->fn.insert(channel.free_names().begin(), channel.free_names().end());
  n->m = std::make_unique<SpiTerm>(std::move(channel));
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::output(SpiTerm channel, SpiTerm message, SpiProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Output;
  n->fn = set_union(set_union(channel.free_names(), message.free_names()), body.free_names());
  n->m = std::make_unique<SpiTerm>(std::move(channel));
  n->n = std::make_unique<SpiTerm>(std::move(message));
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::match(SpiTerm m, SpiTerm t, SpiProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::MatchEq;
  n->fn = set_union(set_union(m.free_names(), t.free_names()), body.free_names());
  n->m = std::make_unique<SpiTerm>(std::move(m));
  n->n = std::make_unique<SpiTerm>(std::move(t));
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::split(Name x, Name y, SpiTerm m, SpiProcess body) {
  if (x == y) throw std::invalid_argument("let binds '" + x.text() + "' twice");
  auto n = std::make_shared<Node>();
  n->kind = Kind::SplitPair;
  n->x = x;
  n->y = y;
  n->fn = set_union(m.free_names(), set_minus(body.free_names(), {x, y}));
  n->m = std::make_unique<SpiTerm>(std::move(m));
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::decrypt(SpiTerm m, Name x, SpiTerm key, SpiProcess body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CaseDecrypt;
  n->x = x;
  n->fn = set_union(set_union(m.free_names(), key.free_names()), set_minus(body.free_names(), {x}));
  n->m = std::make_unique<SpiTerm>(std::move(m));
  n->n = std::make_unique<SpiTerm>(std::move(key));
  n->p = std::make_unique<SpiProcess>(std::move(body));
  return SpiProcess(std::move(n));
}

SpiProcess SpiProcess::case_int(SpiTerm m, SpiProcess zero, Name x, SpiProcess succ) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CaseInt;
  n->x = x;
  n->fn = set_union(set_union(m.free_names(), zero.free_names()), set_minus(succ.free_names(), {x}));
  n->m = std::make_unique<SpiTerm>(std::move(m));
  n->p = std::make_unique<SpiProcess>(std::move(zero));
  n->q = std::make_unique<SpiProcess>(std::move(succ));
  return SpiProcess(std::move(n));
}

namespace {

NameSet range_names(const TermSubst& s) {
  NameSet out;
  for (const auto& kv : s) out.insert(kv.second.free_names().begin(), kv.second.free_names().end());
  return out;
}

// Pushes `s` under binders `xs` into `body`, renaming any binder that would
// capture a name of the range. Returns the (possibly renamed) binders.
std::vector<Name> under(const TermSubst& s, std::vector<Name> xs, SpiProcess& body) {
  TermSubst inner = s;
  for (Name x : xs) inner.erase(x);
  NameSet range = range_names(inner);
  TermSubst alpha;
  for (Name& x : xs) {
    if (!range.count(x)) continue;
    Name m = Name::fresh();
    alpha.emplace(x, SpiTerm::name(m));
    x = m;
  }
  if (!alpha.empty()) body = subst_proc(alpha, body);
  body = subst_proc(inner, body);
  return xs;
}

}  // namespace

SpiProcess subst_proc(const TermSubst& s, const SpiProcess& P) {
  if (std::none_of(s.begin(), s.end(), [&](const auto& kv) { return P.free_names().count(kv.first); })) return P;
  switch (P.kind()) {
    case PK::Null:
    case PK::Ok:
      return P;
    case PK::Par:
      return SpiProcess::par(subst_proc(s, P.left()), subst_proc(s, P.right()));
    case PK::Replicate:
      return SpiProcess::replicate(subst_proc(s, P.body()));
    case PK::Restrict: {
      SpiProcess body = P.body();
      Name n = under(s, {P.name()}, body)[0];
      return SpiProcess::restrict(n, body);
    }
    case PK::Input: {
      SpiProcess body = P.body();
      Name x = under(s, {P.name()}, body)[0];
      return SpiProcess::input(subst_term(s, P.term()), x, body);
    }
    case PK::Output:
      return SpiProcess::output(subst_term(s, P.term()), subst_term(s, P.term2()), subst_proc(s, P.body()));
    case PK::MatchEq:
      return SpiProcess::match(subst_term(s, P.term()), subst_term(s, P.term2()), subst_proc(s, P.body()));
    case PK::SplitPair: {
      SpiProcess body = P.body();
      auto xy = under(s, {P.name(), P.name2()}, body);
      return SpiProcess::split(xy[0], xy[1], subst_term(s, P.term()), body);
    }
    case PK::CaseDecrypt: {
      SpiProcess body = P.body();
      Name x = under(s, {P.name()}, body)[0];
      return SpiProcess::decrypt(subst_term(s, P.term()), x, subst_term(s, P.term2()), body);
    }
    case PK::CaseInt: {
      SpiProcess succ = P.succ_branch();
      Name x = under(s, {P.name()}, succ)[0];
      return SpiProcess::case_int(subst_term(s, P.term()), subst_proc(s, P.zero_branch()), x, succ);
    }
  }
  return P;
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

using Bag = detail::FlatBag<SpiProcess>;

void flatten_into(const SpiProcess& P, Bag& out) {
  switch (P.kind()) {
    case PK::Null:
      return;
    case PK::Par:
      flatten_into(P.left(), out);
      flatten_into(P.right(), out);
      return;
    case PK::Restrict: {
      if (!P.body().free_names().count(P.name())) {
        flatten_into(P.body(), out);
        return;
      }
      Name m = Name::fresh();
      out.restricted.push_back(m);
      flatten_into(subst_proc({{P.name(), SpiTerm::name(m)}}, P.body()), out);
      return;
    }
    default:
      out.threads.push_back(P);
  }
}

struct Ops {
  Bag flatten(const SpiProcess& P) const {
    Bag b;
    flatten_into(P, b);
    return b;
  }
  const SpiProcess* replicated(const SpiProcess& t) const { return t.is(PK::Replicate) ? &t.body() : nullptr; }

  template <class Emit>
  void unary(const SpiProcess& t, Emit&& emit) const {
    switch (t.kind()) {
      case PK::MatchEq:
        if (t.term() == t.term2()) emit({t.body()});
        return;
      case PK::SplitPair:
        if (t.term().kind() == TK::Pair)
          emit({subst_proc({{t.name(), t.term().first()}, {t.name2(), t.term().second()}}, t.body())});
        return;
      case PK::CaseDecrypt:
        if (t.term().kind() == TK::Encrypt && t.term().second() == t.term2())
          emit({subst_proc({{t.name(), t.term().first()}}, t.body())});
        return;
      case PK::CaseInt:
        if (is_zero(t.term())) {
          emit({t.zero_branch()});
        } else if (auto p = pred(t.term())) {
          emit({subst_proc({{t.name(), *p}}, t.succ_branch())});
        }
        return;
      default:
        return;
    }
  }

  template <class Emit>
  void binary(const SpiProcess& a, const SpiProcess& b, Emit&& emit) const {
    if (!a.is(PK::Output) || !b.is(PK::Input) || !(a.term() == b.term())) return;
    emit({a.body(), subst_proc({{b.name(), a.term2()}}, b.body())});
  }
};

}  // namespace

std::vector<SpiProcess> spi_reduce(const SpiProcess& P) {
  Ops ops;
  detail::ThreadEngine<SpiProcess, Ops> engine(ops);
  std::map<std::string, SpiProcess> unique;
  for (auto& bag : engine.step(P)) {
    SpiProcess R = SpiProcess::restrict_all(bag.restricted, SpiProcess::par_of(bag.threads));
    unique.emplace(key(R), R);
  }
  std::vector<SpiProcess> out;
  for (auto& kv : unique) out.push_back(kv.second);
  return out;
}

bool has_success(const SpiProcess& P) {
  switch (P.kind()) {
    case PK::Ok:
      return true;
    case PK::Par:
      return has_success(P.left()) || has_success(P.right());
    case PK::Restrict:
    case PK::Replicate:
      return has_success(P.body());
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Encoding

namespace {

const Name& pair_tag() {
  static const Name n = Name::surface("pair");
  return n;
}
const Name& encr_tag() {
  static const Name n = Name::surface("encr");
  return n;
}
const Name& suc_tag() {
  static const Name n = Name::surface("suc");
  return n;
}
const Name& zero_tag() {
  static const Name n = Name::surface("0");
  return n;
}

Pattern V(Name n) { return Pattern::variable(n); }
Pattern B(Name n) { return Pattern::binding(n); }
Pattern H(Name n) { return Pattern::protected_name(n); }
Pattern C(Pattern a, Pattern b) { return Pattern::compound(std::move(a), std::move(b)); }

void check_term(const SpiTerm& M) {
  for (Name n : M.free_names())
    if (is_reserved(n)) throw EncodingError("reserved name '" + n.text() + "' occurs in a Spi term");
}

void check_binder(Name x) {
  if (is_reserved(x)) throw EncodingError("reserved name '" + x.text() + "' is bound in a Spi process");
}

// A binder in a pattern alongside free names must not clash with them.
Name fresh_if_in(Name x, const NameSet& names, SpiProcess& body) {
  if (!names.count(x) && x != hash_name()) return x;
  Name m = Name::fresh();
  body = subst_proc({{x, SpiTerm::name(m)}}, body);
  return m;
}

}  // namespace

bool is_reserved(Name n) { return n == pair_tag() || n == encr_tag() || n == suc_tag() || n == zero_tag(); }

Pattern encode_spi_term(const SpiTerm& M) {
  switch (M.kind()) {
    case TK::Name:
      return V(M.atom());
    case TK::Pair:
      return C(C(V(pair_tag()), encode_spi_term(M.first())), encode_spi_term(M.second()));
    case TK::Zero:
      return V(zero_tag());
    case TK::Int: {
      Pattern acc = V(zero_tag());
      for (unsigned i = 0; i < M.value(); ++i) acc = C(V(suc_tag()), acc);
      return acc;
    }
    case TK::Suc:
      return C(V(suc_tag()), encode_spi_term(M.first()));
    case TK::Encrypt:
      return C(C(V(encr_tag()), encode_spi_term(M.first())), encode_spi_term(M.second()));
  }
  return V(zero_tag());
}

Process encode_spi_proc(const SpiProcess& P) {
  switch (P.kind()) {
    case PK::Null:
      return Process::null();
    case PK::Ok:
      return Process::success();
    case PK::Par:
      return Process::par(encode_spi_proc(P.left()), encode_spi_proc(P.right()));
    case PK::Replicate:
      return Process::replicate(encode_spi_proc(P.body()));
    case PK::Restrict:
      check_binder(P.name());
      return Process::restrict(P.name(), encode_spi_proc(P.body()));
    case PK::Input: {
      check_term(P.term());
      check_binder(P.name());
      SpiProcess body = P.body();
      Name x = fresh_if_in(P.name(), P.term().free_names(), body);
      return Process::case_of(C(C(encode_spi_term(P.term()), B(x)), V(hash_name())), encode_spi_proc(body));
    }
    case PK::Output:
      check_term(P.term());
      check_term(P.term2());
      return Process::case_of(C(C(encode_spi_term(P.term()), encode_spi_term(P.term2())), B(Name::fresh())),
                              encode_spi_proc(P.body()));
    case PK::MatchEq: {
      check_term(P.term());
      check_term(P.term2());
      Name n = Name::fresh();
      return Process::restrict(n, Process::par(Process::case_of(C(H(n), encode_spi_term(P.term())), encode_spi_proc(P.body())),
                                               Process::case_of(C(H(n), encode_spi_term(P.term2())), Process::null())));
    }
    case PK::SplitPair: {
      check_term(P.term());
      check_binder(P.name());
      check_binder(P.name2());
      Name n = Name::fresh();
      Pattern split = C(C(H(pair_tag()), B(P.name())), B(P.name2()));
      return Process::restrict(n, Process::par(Process::case_of(C(H(n), split), encode_spi_proc(P.body())),
                                               Process::case_of(C(H(n), encode_spi_term(P.term())), Process::null())));
    }
    case PK::CaseDecrypt: {
      check_term(P.term());
      check_term(P.term2());
      check_binder(P.name());
      SpiProcess body = P.body();
      Name x = fresh_if_in(P.name(), P.term2().free_names(), body);
      Name n = Name::fresh();
      Pattern dec = C(C(H(encr_tag()), B(x)), encode_spi_term(P.term2()));
      return Process::restrict(n, Process::par(Process::case_of(C(H(n), dec), encode_spi_proc(body)),
                                               Process::case_of(C(H(n), encode_spi_term(P.term())), Process::null())));
    }
    case PK::CaseInt: {
      check_term(P.term());
      check_binder(P.name());
      Name n = Name::fresh();
      Process zero = Process::case_of(C(H(n), H(zero_tag())), encode_spi_proc(P.zero_branch()));
      Process succ = Process::case_of(C(H(n), C(H(suc_tag()), B(P.name()))), encode_spi_proc(P.succ_branch()));
      Process scrut = Process::case_of(C(H(n), encode_spi_term(P.term())), Process::null());
      return Process::restrict(n, Process::par_of({zero, succ, scrut}));
    }
  }
  return Process::null();
}

std::string key(const SpiProcess& P) { return canonical_key(encode_spi_proc(P)); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const SpiTerm& M) {
  switch (M.kind()) {
    case TK::Name:
      return M.atom().text();
    case TK::Pair:
      return "(" + to_string(M.first()) + "," + to_string(M.second()) + ")";
    case TK::Zero:
      return "0";
    case TK::Int:
      return std::to_string(M.value());
    case TK::Suc:
      return "suc(" + to_string(M.first()) + ")";
    case TK::Encrypt:
      return "{" + to_string(M.first()) + "}" + to_string(M.second());
  }
  return "?";
}

namespace {

void print(const SpiProcess& P, int level, std::string& out) {
  auto cont = [&](const SpiProcess& body) {
    if (body.is(PK::Null)) return;
    out += ".";
    print(body, 1, out);
  };
  switch (P.kind()) {
    case PK::Null:
      out += "0";
      return;
    case PK::Ok:
      out += "ok";
      return;
    case PK::Par:
      if (level > 0) out += "(";
      print(P.left(), 1, out);
      out += " | ";
      print(P.right(), 0, out);
      if (level > 0) out += ")";
      return;
    case PK::Replicate:
      out += "!";
      print(P.body(), 1, out);
      return;
    case PK::Restrict:
      out += "(new " + P.name().text() + ") ";
      print(P.body(), 1, out);
      return;
    case PK::Input:
      out += to_string(P.term()) + "?(" + P.name().text() + ")";
      cont(P.body());
      return;
    case PK::Output:
      out += to_string(P.term()) + "!<" + to_string(P.term2()) + ">";
      cont(P.body());
      return;
    case PK::MatchEq:
      out += "[" + to_string(P.term()) + " is " + to_string(P.term2()) + "] ";
      print(P.body(), 1, out);
      return;
    case PK::SplitPair:
      out += "let (" + P.name().text() + "," + P.name2().text() + ") = " + to_string(P.term()) + " in ";
      print(P.body(), 1, out);
      return;
    case PK::CaseDecrypt:
      out += "case " + to_string(P.term()) + " of {" + P.name().text() + "}" + to_string(P.term2()) + " : ";
      print(P.body(), 1, out);
      return;
    case PK::CaseInt:
      out += "case " + to_string(P.term()) + " of 0 : ";
      print(P.zero_branch(), 1, out);
      out += " suc(" + P.name().text() + ") : ";
      print(P.succ_branch(), 1, out);
      return;
  }
}

}  // namespace

std::string to_string(const SpiProcess& P) {
  std::string out;
  print(P, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Token;
using detail::TokenStream;

class SpiParser {
 public:
  explicit SpiParser(std::string_view src) : ts_(src) {}

  SpiProcess run() {
    SpiProcess P = proc();
    ts_.expect_end();
    return P;
  }

  SpiTerm run_term() {
    SpiTerm M = term();
    ts_.expect_end();
    return M;
  }

 private:
  Name ident() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Ident) ts_.fail("expected name");
    static const std::set<std::string> keywords{"new", "ok", "let", "in", "case", "of", "is", "suc"};
    if (keywords.count(t.text)) ts_.fail("keyword '" + t.text + "' cannot be used as a name");
    if (t.text == "pair" || t.text == "encr") ts_.fail("name '" + t.text + "' is reserved by the encoding");
    if (t.text[0] == '_') ts_.fail("identifiers starting with '_' are reserved");
    ts_.next();
    return Name::surface(t.text);
  }

  SpiTerm term() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Number) {
      ts_.next();
      unsigned long v = std::stoul(t.text);
      return SpiTerm::integer(static_cast<unsigned>(v));
    }
    if (ts_.is_word("suc")) {
      ts_.next();
      ts_.expect_sym("(");
      SpiTerm m = term();
      ts_.expect_sym(")");
      return SpiTerm::suc(m);
    }
    if (ts_.accept_sym("(")) {
      SpiTerm m = term();
      ts_.expect_sym(",");
      SpiTerm n = term();
      ts_.expect_sym(")");
      return SpiTerm::pair(m, n);
    }
    if (ts_.accept_sym("{")) {
      SpiTerm m = term();
      ts_.expect_sym("}");
      SpiTerm k = term();
      return SpiTerm::encrypt(m, k);
    }
    return SpiTerm::name(ident());
  }

  SpiProcess proc() {
    std::vector<SpiProcess> parts{arrow()};
    while (ts_.accept_sym("|")) parts.push_back(arrow());
    return SpiProcess::par_of(parts);
  }

  SpiProcess cont() { return ts_.accept_sym(".") ? arrow() : SpiProcess::null(); }

  SpiProcess arrow() {
    if (ts_.accept_sym("!")) return SpiProcess::replicate(arrow());
    if (ts_.is_sym("(") && ts_.is_word("new", 1)) {
      ts_.next();
      ts_.next();
      std::vector<Name> names;
      do names.push_back(ident());
      while (ts_.accept_sym(",") || ts_.peek().kind == Token::Kind::Ident);
      ts_.expect_sym(")");
      return SpiProcess::restrict_all(names, arrow());
    }
    if (ts_.is_word("ok")) {
      ts_.next();
      return SpiProcess::ok();
    }
    if (ts_.accept_sym("[")) {
      SpiTerm m = term();
      if (!ts_.is_word("is")) ts_.fail("expected 'is'");
      ts_.next();
      SpiTerm n = term();
      ts_.expect_sym("]");
      return SpiProcess::match(m, n, arrow());
    }
    if (ts_.is_word("let")) {
      const Token start = ts_.next();
      ts_.expect_sym("(");
      Name x = ident();
      ts_.expect_sym(",");
      Name y = ident();
      ts_.expect_sym(")");
      ts_.expect_sym("=");
      SpiTerm m = term();
      if (!ts_.is_word("in")) ts_.fail("expected 'in'");
      ts_.next();
      SpiProcess body = arrow();
      if (x == y) ts_.fail_at(start, "let binds '" + x.text() + "' twice");
      return SpiProcess::split(x, y, m, body);
    }
    if (ts_.is_word("case")) {
      ts_.next();
      SpiTerm m = term();
      if (!ts_.is_word("of")) ts_.fail("expected 'of'");
      ts_.next();
      if (ts_.accept_sym("{")) {
        Name x = ident();
        ts_.expect_sym("}");
        SpiTerm key = term();
        ts_.expect_sym(":");
        return SpiProcess::decrypt(m, x, key, arrow());
      }
      if (!(ts_.peek().kind == Token::Kind::Number && ts_.peek().text == "0")) ts_.fail("expected '{' or '0'");
      ts_.next();
      ts_.expect_sym(":");
      SpiProcess zero = arrow();
      if (!ts_.is_word("suc")) ts_.fail("expected 'suc'");
      ts_.next();
      ts_.expect_sym("(");
      Name x = ident();
      ts_.expect_sym(")");
      ts_.expect_sym(":");
      return SpiProcess::case_int(m, zero, x, arrow());
    }

    // A term followed by '!' or '?' is an output or input; otherwise back up.
    std::size_t mark = ts_.mark();
    std::optional<SpiTerm> chan;
    std::optional<ParseError> term_error;
    try {
      chan = term();
    } catch (const ParseError& e) {
      term_error = e;
    }
    if (chan && ts_.accept_sym("!")) {
      ts_.expect_sym("<");
      SpiTerm msg = term();
      ts_.expect_sym(">");
      return SpiProcess::output(*chan, msg, cont());
    }
    if (chan && ts_.accept_sym("?")) {
      ts_.expect_sym("(");
      Name x = ident();
      ts_.expect_sym(")");
      return SpiProcess::input(*chan, x, cont());
    }
    ts_.reset(mark);

    if (ts_.peek().kind == Token::Kind::Number && ts_.peek().text == "0") {
      ts_.next();
      return SpiProcess::null();
    }
    if (ts_.accept_sym("(")) {
      SpiProcess P = proc();
      ts_.expect_sym(")");
      return P;
    }
    if (term_error && ts_.peek().kind == Token::Kind::Ident) throw *term_error;
    ts_.fail("expected process");
  }

  TokenStream ts_;
};

}  // namespace

SpiProcess parse_spi(std::string_view text) { return SpiParser(text).run(); }
SpiTerm parse_spi_term(std::string_view text) { return SpiParser(text).run_term(); }

}  // namespace cpc::spi
