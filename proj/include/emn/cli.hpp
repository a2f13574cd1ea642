#pragma once

#include <iosfwd>

namespace emn {

/// Entry point of the `emn` tool. Exit codes: 0 every check passes or is
/// not applicable, 1 a check fails, 2 usage error, 3 some curve needs
/// external generators, 4 a computation raised an error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace emn
