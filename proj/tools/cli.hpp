#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qd::cli {

// Exit codes: 0 verified or classified, 2 verification mismatch, 1 usage error.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string default_data_dir();

}  // namespace qd::cli
