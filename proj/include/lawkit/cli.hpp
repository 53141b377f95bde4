// Command-line front end. Exit codes: 0 success, 1 check failure,
// 2 inconclusive or bound-limited, 3 usage error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lawkit::cli {

inline constexpr const char* kVersion = "0.1.0";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lawkit::cli
