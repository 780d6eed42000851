#pragma once

#include <string>
#include <vector>

namespace casimir {

// Entry point of the command-line tool; argv excludes the program name.
// Exit codes: 0 success/PASS, 1 check FAIL, 2 usage error, 3 math error.
int cli_run(const std::vector<std::string>& argv);

}  // namespace casimir
