#pragma once

#include <iosfwd>

namespace cpc::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kNegative = 1;  // distinguished, invalid, undefined, failed check
constexpr int kUsage = 2;     // usage or parse error

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cpc::cli
