#pragma once

#include "qctree/core.hpp"

#include <string>
#include <vector>

namespace qctree {

// One verified property: the best constant found, a witness realizing it, and
// whether the property holds with the requested constant.
struct CheckResult {
    std::string check;
    Rational constant;
    std::string witness;
    bool pass = false;
};

inline bool all_pass(const std::vector<CheckResult>& checks)
{
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

}  // namespace qctree
