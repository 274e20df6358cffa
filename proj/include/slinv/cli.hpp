#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slinv {

/**
 * Command-line entry point; args excludes the program name.
 *
 * Exit status: 0 on success, 1 for a failed check, an unconverged fit, a
 * validation failure or a numerical error (one-line diagnostic on err), and
 * 2 for malformed input files or command lines.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slinv
