#pragma once

#include <iosfwd>

namespace keygraph {

/// Parses argv and runs one command. Returns 0 on success, 2 on a usage or
/// flag error (usage text on `err`) and 1 on a runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace keygraph
