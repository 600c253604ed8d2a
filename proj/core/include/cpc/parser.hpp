#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "cpc/process.hpp"

namespace cpc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

// Grammar (ASCII):
//   pattern := atom ('.' atom)*            left-associative
//   atom    := '\' id | '#' id | id | '0' | '(' pattern ')'
//   process := arrow ('|' arrow)*
//   arrow   := pattern '->' arrow | '!' arrow | '(new' id+ ')' arrow
//            | '0' | 'ok' | '(' process ')'
// Line comments start with '//'.
Pattern parse_pattern(std::string_view text);
Process parse_process(std::string_view text);

}  // namespace cpc
