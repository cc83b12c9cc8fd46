#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obsprob {

/// Runs one command against the given streams and returns the process
/// exit code. The codes are the machine contract:
///   0  success (valid / feasible / model exists)
///   1  well-formed input that violates a semantic invariant
///   2  usage, I/O or parse errors
///   3  infeasible extension problem, or no model in the ks check
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obsprob
