#pragma once

#include <iosfwd>

namespace ctt::cli {

// Entry point behind main(): parses argv, runs the subcommand, writes the
// JSON report to `out` and human-readable prose to `err`. Returns the
// process exit code; failures emit a structured {"error": ...} object.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ctt::cli
