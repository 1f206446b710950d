#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arakelov {

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_spec = 2,
    exit_nonexistence = 3,
    exit_verification = 4,
};

/* args excludes the program name. JSON goes to out, diagnostics to err. */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arakelov
