#pragma once

#include <iosfwd>

namespace gendertime {

// Entry point of the `gendertime` command line tool. Returns the process
// exit status; never calls exit().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gendertime
