// checks.hpp — named verification checks: the acceptance criteria and the
// per-module invariants, runnable offline (qptsim verify) and from the
// acceptance test binary.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qptsim::checks {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The ten acceptance criteria, in order, at their stated tolerances.
std::vector<CheckResult> run_acceptance(std::uint64_t seed);

// Module invariants and properties (randomized parts use the seed).
std::vector<CheckResult> run_module_invariants(std::uint64_t seed);

} // namespace qptsim::checks
