#pragma once

#include <string>

namespace casimir {

// Outcome of an identity / invariance check. `detail` carries the first
// witness of failure, or a short summary on success.
struct CheckReport {
    std::string name;
    bool pass = false;
    std::string detail;
};

}  // namespace casimir
