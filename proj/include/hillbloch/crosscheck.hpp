#pragma once

// Cross-check suites: every closed-form quantity the library produces for a
// given potential is re-derived through an independent route (monodromy
// integration, brute-force enumeration, limit extrapolation) and the
// disagreement is reported.  This is what `hillbloch verify` runs.

#include "hillbloch/potential.hpp"
#include "hillbloch/report.hpp"

#include <string>
#include <vector>

namespace hillbloch {

struct CrosscheckOptions {
    int steps = 1024;         // RK4 steps per period
    int terms = 50;           // Bloch truncation order
    double tolerance = 1e-5;  // quasi-periodicity budget for eigenfunction checks
};

// Suite names accepted by run_crosscheck_suite, "all" first.
const std::vector<std::string>& crosscheck_suite_names();

// Run one suite ("spectrum", "bloch", "norming", "inverse", "limits",
// "integrator") or "all".  Unknown names are ValidationErrors.
std::vector<VerificationReport> run_crosscheck_suite(const PotentialSpec<double>& spec,
                                                     const std::string& suite,
                                                     const CrosscheckOptions& options);

}  // namespace hillbloch
