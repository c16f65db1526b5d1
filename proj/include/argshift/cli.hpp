#pragma once

#include <iosfwd>

namespace argshift {

/// Full command-line front end, in-process for testability. Returns the exit
/// code: 0 on success, 1 on domain findings (a commutation witness, a
/// criterion disagreement), 2 on input or usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace argshift
