#pragma once

#include <ostream>

namespace planwise::cli {

// Exit codes: 0 ok, 1 runtime failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace planwise::cli
