#pragma once

#include <string>
#include <vector>

namespace ptbox::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // failure explanation; empty on success
};

/// Runs the cross-module invariant battery at desk scale. Deterministic:
/// all sampling uses a fixed-constant-seed generator, no wall-clock or
/// environment dependence.
std::vector<CheckResult> run_all();

}  // namespace ptbox::verify
