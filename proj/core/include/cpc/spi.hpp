#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cpc/process.hpp"

namespace cpc::spi {

// Variables and names share one atom; binding is by scope.
class SpiTerm {
 public:
  enum class Kind : std::uint8_t { Name, Pair, Zero, Int, Suc, Encrypt };

  static SpiTerm name(cpc::Name n);
  static SpiTerm pair(SpiTerm m, SpiTerm n);
  static SpiTerm zero();
  // i > 0; Int(i) is the i-fold successor of zero.
  static SpiTerm integer(unsigned i);
  static SpiTerm suc(SpiTerm m);
  static SpiTerm encrypt(SpiTerm m, SpiTerm key);

  Kind kind() const { return node_->kind; }
  cpc::Name atom() const { return node_->name; }
  unsigned value() const { return node_->value; }
  const SpiTerm& first() const { return *node_->a; }   // Pair, Suc, Encrypt (message)
  const SpiTerm& second() const { return *node_->b; }  // Pair, Encrypt (key)
  const NameSet& free_names() const { return node_->fn; }
  std::size_t depth() const { return node_->depth; }

  // Equality with Int(i) and suc^i(0) identified.
  friend bool operator==(const SpiTerm& a, const SpiTerm& b);

 private:
  struct Node {
    Kind kind = Kind::Zero;
    cpc::Name name;
    unsigned value = 0;
    std::unique_ptr<SpiTerm> a, b;
    NameSet fn;
    std::size_t depth = 1;
  };
  explicit SpiTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using TermSubst = std::map<Name, SpiTerm>;

class SpiProcess {
 public:
  enum class Kind : std::uint8_t {
    Null, Ok, Par, Replicate, Restrict, Input, Output, MatchEq, SplitPair, CaseDecrypt, CaseInt
  };

  SpiProcess();
  static SpiProcess null();
  static SpiProcess ok();
  static SpiProcess par(SpiProcess l, SpiProcess r);
  static SpiProcess par_of(const std::vector<SpiProcess>& parts);
  static SpiProcess replicate(SpiProcess body);
  static SpiProcess restrict(Name n, SpiProcess body);
  static SpiProcess restrict_all(const std::vector<Name>& names, SpiProcess body);
  // M(x).P
  static SpiProcess input(SpiTerm channel, Name x, SpiProcess body);
  // M<N>.P
  static SpiProcess output(SpiTerm channel, SpiTerm message, SpiProcess body);
  // [M is N]P
  static SpiProcess match(SpiTerm m, SpiTerm n, SpiProcess body);
  // let (x, y) = M in P; throws std::invalid_argument if x == y.
  static SpiProcess split(Name x, Name y, SpiTerm m, SpiProcess body);
  // case M of {x}N : P
  static SpiProcess decrypt(SpiTerm m, Name x, SpiTerm key, SpiProcess body);
  // case M of 0 : P suc(x) : Q
  static SpiProcess case_int(SpiTerm m, SpiProcess zero, Name x, SpiProcess succ);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  Name name() const { return node_->x; }   // Restrict; the bound name x elsewhere
  Name name2() const { return node_->y; }  // SplitPair: y
  const SpiTerm& term() const { return *node_->m; }   // channel / scrutinee / left of match
  const SpiTerm& term2() const { return *node_->n; }  // message / right of match / key
  const SpiProcess& body() const { return *node_->p; }
  const SpiProcess& left() const { return *node_->p; }
  const SpiProcess& right() const { return *node_->q; }
  const SpiProcess& zero_branch() const { return *node_->p; }
  const SpiProcess& succ_branch() const { return *node_->q; }
  const NameSet& free_names() const { return node_->fn; }

 private:
  struct Node {
    Kind kind = Kind::Null;
    Name x, y;
    std::unique_ptr<SpiTerm> m, n;
    std::unique_ptr<SpiProcess> p, q;
    NameSet fn;
  };
  explicit SpiProcess(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

SpiTerm subst_term(const TermSubst& s, const SpiTerm& M);
// Capture-avoiding.
SpiProcess subst_proc(const TermSubst& s, const SpiProcess& P);

std::vector<SpiProcess> spi_reduce(const SpiProcess& P);
bool has_success(const SpiProcess& P);

class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// pair, encr, suc and 0.
bool is_reserved(Name n);

Pattern encode_spi_term(const SpiTerm& M);
// Throws EncodingError if a reserved name occurs anywhere in P.
Process encode_spi_proc(const SpiProcess& P);

// Canonical key, taken through the encoding.
std::string key(const SpiProcess& P);

std::string to_string(const SpiTerm& M);
std::string to_string(const SpiProcess& P);

// Grammar:
//   proc  := arrow ('|' arrow)*
//   arrow := term '!' '<' term '>' ['.' arrow] | term '?' '(' id ')' ['.' arrow]
//          | '[' term 'is' term ']' arrow | 'let' '(' id ',' id ')' '=' term 'in' arrow
//          | 'case' term 'of' '{' id '}' term ':' arrow
//          | 'case' term 'of' '0' ':' arrow 'suc' '(' id ')' ':' arrow
//          | '!' arrow | '(new' ids ')' arrow | '0' | 'ok' | '(' proc ')'
//   term  := id | nat | '(' term ',' term ')' | '{' term '}' term | 'suc' '(' term ')'
SpiProcess parse_spi(std::string_view text);
SpiTerm parse_spi_term(std::string_view text);

}  // namespace cpc::spi
