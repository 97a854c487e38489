#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tau3sq/common.hpp"
#include "tau3sq/report.hpp"

namespace tau3sq::acceptance {

struct AcceptanceOptions {
    uint64_t seed = 0;
    Exec exec = Exec::parallel;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> results;
    report::ojson artifacts;  // deterministic (no timings); the machine-readable report
    bool all_pass = false;
};

// Runs the twelve acceptance criteria; progress lines (one per criterion, with
// timing) go to *progress when non-null.  Criterion 12 re-runs the full
// artifact computation and byte-compares the serialized reports.
AcceptanceOutcome run_acceptance(const AcceptanceOptions& opts, std::ostream* progress);

}  // namespace tau3sq::acceptance
