#pragma once

#include <map>
#include <memory>
#include <vector>

#include "cpc/pattern.hpp"

namespace cpc {

// Immutable process tree.
class Process {
 public:
  enum class Kind : std::uint8_t { Null, Success, Case, Par, Replicate, Restrict };

  // The null process.
  Process();

  static Process null();
  static Process success();
  // Throws std::invalid_argument if the pattern is ill-formed.
  static Process case_of(Pattern p, Process body);
  static Process par(Process left, Process right);
  static Process replicate(Process body);
  static Process restrict(Name n, Process body);

  // Right-nested parallel composition; null for an empty list.
  static Process par_of(const std::vector<Process>& parts);
  // (new n1)...(new nk) body
  static Process restrict_all(const std::vector<Name>& names, Process body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const Pattern& pattern() const { return *node_->pattern; }  // Case
  Name name() const { return node_->name; }                    // Restrict
  const Process& body() const { return *node_->left; }         // Case, Replicate, Restrict
  const Process& left() const { return *node_->left; }         // Par
  const Process& right() const { return *node_->right; }       // Par

  const NameSet& free_names() const { return node_->fn; }
  std::size_t size() const { return node_->size; }
  // Node identity; equal ids imply equal processes.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Process& a, const Process& b);

 private:
  struct Node {
    Kind kind = Kind::Null;
    Name name;
    std::unique_ptr<Pattern> pattern;
    std::unique_ptr<Process> left, right;
    NameSet fn;
    std::size_t size = 1;
    std::size_t hash = 0;
  };
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

NameSet free_names_proc(const Process& P);

// Every name bound anywhere inside P (pattern binders and restrictions).
NameSet bound_names_proc(const Process& P);

// Capture-avoiding substitution.
Process subst_proc(const Substitution& s, const Process& P);

// Capture-avoiding renaming of free names.
Process rename_free(const Process& P, const std::map<Name, Name>& renaming);

// Renames every bound name to a fresh one; free names are untouched.
Process alpha_rename(const Process& P);

}  // namespace cpc
