#pragma once

#include <string>
#include <vector>

namespace instaudit::cli {

// Exit codes: 0 success, 2 usage error, 3 data/schema error, 4 internal error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

} // namespace instaudit::cli
