#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phaselink {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/**
 * End-to-end verification battery covering the processing chain, the
 * two-board simulation, the synchronization model and the wire formats, each
 * criterion checked against an independent reference (closed forms, brute
 * force re-implementations, or pinned numeric targets) at fixed tolerances.
 * Everything is seeded, so outcomes and details repeat run to run.
 */
std::vector<CriterionResult> run_acceptance_suite();

// Runs the suite, printing one PASS/FAIL line per criterion; true when all passed.
bool report_acceptance(std::ostream& out);

} // namespace phaselink
