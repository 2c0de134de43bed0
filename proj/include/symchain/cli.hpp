#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symchain::cli {

// Exit statuses of the command-line front end.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kExhausted = 2;
inline constexpr int kMaxLevel = 3;
inline constexpr int kSpansDiffer = 4;

/// Runs `symchain <args...>`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symchain::cli
