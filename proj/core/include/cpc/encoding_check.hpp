#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpc/linda.hpp"
#include "cpc/spi.hpp"

namespace cpc {

enum class SourceLanguage { Linda, Spi };

struct ClauseResult {
  bool ok = true;
  std::string detail;              // first violation, empty if ok
  std::vector<std::string> trace;  // source states from the start to the offending one
};

// Bounded check of the four operational clauses of a valid encoding:
//   (a) every source step is matched by one encoded step
//   (b) every encoded step maps back to a source step
//   (c) success agrees
//   (d) if the encoding can run `steps` steps, so can the source
// Linda is compared up to ≡; Spi up to ≡ after prune_dead on both sides.
struct EncodingReport {
  SourceLanguage language;
  std::size_t steps = 0;
  std::size_t source_states = 0;
  std::size_t target_states = 0;
  ClauseResult operational;
  ClauseResult reflection;
  ClauseResult success;
  ClauseResult divergence;

  bool valid() const { return operational.ok && reflection.ok && success.ok && divergence.ok; }
};

EncodingReport check_encoding(const linda::LindaProcess& P, std::size_t steps);
EncodingReport check_encoding(const spi::SpiProcess& P, std::size_t steps);

std::string to_text(const EncodingReport& r);

}  // namespace cpc
