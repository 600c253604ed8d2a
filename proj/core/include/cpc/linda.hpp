#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpc/process.hpp"

namespace cpc::linda {

struct Field {
  bool bind;  // \x when true, =b otherwise
  Name name;
  friend bool operator==(const Field&, const Field&) = default;
};

using Template = std::vector<Field>;
using Data = std::vector<Name>;
using NameMap = std::map<Name, Name>;

class LindaProcess {
 public:
  enum class Kind : std::uint8_t { Null, Ok, Output, Input, Par, Restrict, Replicate };

  LindaProcess();
  static LindaProcess null();
  static LindaProcess ok();
  static LindaProcess output(Data data);
  // Throws std::invalid_argument on repeated binders.
  static LindaProcess input(Template tmpl, LindaProcess body);
  static LindaProcess par(LindaProcess l, LindaProcess r);
  static LindaProcess par_of(const std::vector<LindaProcess>& parts);
  static LindaProcess restrict(Name n, LindaProcess body);
  static LindaProcess restrict_all(const std::vector<Name>& names, LindaProcess body);
  static LindaProcess replicate(LindaProcess body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const Data& data() const { return node_->data; }          // Output
  const Template& tmpl() const { return node_->tmpl; }      // Input
  Name name() const { return node_->name; }                 // Restrict
  const LindaProcess& body() const { return *node_->left; }  // Input, Restrict, Replicate
  const LindaProcess& left() const { return *node_->left; }
  const LindaProcess& right() const { return *node_->right; }
  const NameSet& free_names() const { return node_->fn; }

 private:
  struct Node {
    Kind kind = Kind::Null;
    Data data;
    Template tmpl;
    Name name;
    std::unique_ptr<LindaProcess> left, right;
    NameSet fn;
  };
  explicit LindaProcess(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::optional<NameMap> linda_match(const Template& t, const Data& d);

// Capture-avoiding renaming of free names.
LindaProcess rename_free(const LindaProcess& P, const NameMap& s);

// One representative per ≡-class of reduct.
std::vector<LindaProcess> linda_reduce(const LindaProcess& P);
bool has_success(const LindaProcess& P);

Pattern patt(const Template& t);
Pattern patb(const Data& d);
Process encode_linda(const LindaProcess& P);

// Canonical key, taken through the encoding.
std::string key(const LindaProcess& P);

std::string to_string(const LindaProcess& P);
std::string to_string(const Template& t);

// Grammar:
//   proc  := arrow ('|' arrow)*
//   arrow := 'out' '(' names ')' | 'in' '(' fields ')' ['.' arrow]
//          | '!' arrow | '(new' ids ')' arrow | '0' | 'ok' | '(' proc ')'
//   field := '\' id | '=' id
LindaProcess parse_linda(std::string_view text);

}  // namespace cpc::linda
