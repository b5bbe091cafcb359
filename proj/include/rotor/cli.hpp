#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotor {

/// Entry point of the rotorctl tool. args excludes the program name.
/// Returns the process exit code: 0 on success with all requested checks
/// matching, 1 on a verification mismatch, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotor
