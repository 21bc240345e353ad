#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gclink::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kCertified = 0, kFalsified = 1, kInvalidInput = 2 };

/**
 * Entry point of the `gclink` tool; `args` excludes the program name.
 *
 * Subcommands: certify, twobridge, montesinos, equiv, project, recheck. The
 * thread count of parallel checks is read from GCLINK_THREADS.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gclink::cli
