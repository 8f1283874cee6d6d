#pragma once

#include <iosfwd>

namespace ian {

/// Command-line entry point. Exit codes: 0 success, 1 diagnostics (syntax,
/// arity, usage), 2 precondition failures, 3 verification failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ian
