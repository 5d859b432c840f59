#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pnembed::cli {

enum ExitCode : int {
    affirmative = 0,
    negative = 1,
    input_error = 2,
    budget_exhausted = 3,
};

/// Runs one command. `args` excludes the program name. Data goes to `out`
/// (or to `-o` files), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pnembed::cli
