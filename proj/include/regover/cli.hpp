#pragma once

#include <iosfwd>

namespace regover {

/// Exit codes: 0 all verified, 1 counterexample found, 2 usage or
/// configuration error, 3 precision exhausted.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regover
