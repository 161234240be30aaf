#pragma once

#include <iosfwd>

namespace iwastat {

// Exit codes: 0 success, 1 input error, 2 internal assertion failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iwastat
