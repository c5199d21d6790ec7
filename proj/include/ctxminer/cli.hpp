#pragma once

#include <string>
#include <vector>

namespace ctxminer::cli {

// Entry point behind the ctxminer binary. Exit codes: 0 success,
// 1 validation error, 2 usage error. Results go to stdout, diagnostics
// to stderr.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace ctxminer::cli
