#pragma once

// Command-line front end of afcsim.
//
// Exit status: 0 success, 1 invalid input, 2 numerical failure or a
// reproduce target outside its tolerance. Diagnostics go to `err`.

#include <iosfwd>

namespace afc {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace afc
