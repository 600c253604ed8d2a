#pragma once

#include <string>
#include <vector>

#include "cpc/process.hpp"

namespace cpc {

// P ≡ (new restricted)(threads...) with every restriction hoisted and
// renamed to a fresh name. Threads are Case, Replicate or Success.
struct Flat {
  std::vector<Name> restricted;
  std::vector<Process> threads;

  Process to_process() const { return Process::restrict_all(restricted, Process::par_of(threads)); }
};

Flat flatten(const Process& P);

struct CanonicalForm {
  std::vector<Name> restricted;
  std::vector<Process> threads;
  std::string key;

  Process to_process() const { return Process::restrict_all(restricted, Process::par_of(threads)); }
};

// Replication is never unfolded here.
CanonicalForm canonicalize(const Process& P);

std::string canonical_key(const Process& P);
bool struct_eq(const Process& P, const Process& Q);

}  // namespace cpc
