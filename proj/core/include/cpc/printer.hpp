#pragma once

#include <functional>
#include <string>

#include "cpc/process.hpp"

namespace cpc {

struct PrintOptions {
  bool unicode = false;
  // Overrides how a name is rendered. Used for canonical keys.
  std::function<std::string(Name)> name_text;
};

std::string to_string(const Pattern& p, const PrintOptions& opts = {});
std::string to_string(const Process& P, const PrintOptions& opts = {});
std::string to_string(const Substitution& s, const PrintOptions& opts = {});
std::string to_string(const NameSet& names, const PrintOptions& opts = {});

}  // namespace cpc
